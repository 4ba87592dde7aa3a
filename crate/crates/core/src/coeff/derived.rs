//! Systems derived from others: homology of a dg system in one degree, images of natural
//! idempotents, and the splitting of cellular chains by the section `s`.

use super::algebra::sym_map;
use super::{contract, Chains, CoreGraph, LocalSystem, QMat, Shift, System};
use crate::error::{Error, Result};
use crate::graph::Relabel;
use crate::linalg::{coordinates, span_basis, Mat, Q, QQ};
use crate::linalg::{q, qfrac};
use num::Zero;
use std::fmt;
use std::sync::Arc;

/// The vector `Σ_v (val(v) − 2)/(2r − 2) · v` in `C_0`, one coefficient per vertex.
pub fn section_s(g: &CoreGraph) -> Result<Vec<Q>> {
    let r = g.loop_order();
    if r < 2 {
        return Err(Error::Unsupported(format!("section s needs loop order at least 2, got {r}")));
    }
    Ok(g.valences()
        .iter()
        .map(|&val| qfrac(val as i64 - 2, 2 * r as i64 - 2))
        .collect())
}

/// Projectors `(P_I, P_II)` on the chains `C_•(g)` (edges, then vertices), where `P_II = s ∘ ε`
/// and `ε` sums the vertex coefficients.
pub fn split_chains(g: &CoreGraph) -> Result<(QMat, QMat)> {
    let s = section_s(g)?;
    let ne = g.edges.len();
    let n = ne + g.v;
    let mut p2 = QMat::zeros(n, n, &QQ);
    for col in 0..g.v {
        for (row, c) in s.iter().enumerate() {
            p2.set(ne + row, ne + col, c.clone());
        }
    }
    let p1 = QMat::identity(n, &QQ).sub(&p2, &QQ);
    Ok((p1, p2))
}

/// Restricts a matrix to the given rows and columns.
fn submatrix(m: &QMat, rows: &[usize], cols: &[usize]) -> QMat {
    QMat::from_fn(rows.len(), cols.len(), &QQ, |r, c| m.get(rows[r], cols[c]).clone())
}

/// Homology of a dg system in the inner degree `at`, regarded as a system in degree `place`.
#[derive(Clone, Debug)]
pub struct Homology {
    pub inner: System,
    pub at: i32,
    pub place: i32,
    pub label: String,
}

/// A chosen basis of homology in one degree: representatives and a basis of boundaries, all
/// as vectors over the positions of that degree in the full basis.
struct HomologyBasis {
    positions: Vec<usize>,
    boundaries: Vec<Vec<Q>>,
    reps: Vec<Vec<Q>>,
}

impl Homology {
    pub fn new(inner: System, at: i32, place: i32, label: impl Into<String>) -> Self {
        Homology {
            inner,
            at,
            place,
            label: label.into(),
        }
    }

    fn basis(&self, g: &CoreGraph) -> Result<HomologyBasis> {
        let deg = self.inner.degrees(g)?;
        let d = self.inner.differential(g)?;
        let pos = |k: i32| -> Vec<usize> { (0..deg.len()).filter(|&i| deg[i] == k).collect() };
        let (below, here, above) = (pos(self.at - 1), pos(self.at), pos(self.at + 1));
        let d_out = submatrix(&d, &above, &here);
        let d_in = submatrix(&d, &here, &below);
        let cycles = if above.is_empty() {
            (0..here.len())
                .map(|i| (0..here.len()).map(|j| q((i == j) as i64)).collect())
                .collect()
        } else {
            d_out.kernel(&QQ)
        };
        let boundaries = span_basis(here.len(), &d_in.columns(), &QQ);
        let mut span = boundaries.clone();
        let mut reps = Vec::new();
        for z in cycles {
            let mut trial = span.clone();
            trial.push(z.clone());
            if Mat::from_columns(here.len(), &trial, &QQ).rank(&QQ) > span.len() {
                span = trial;
                reps.push(z);
            }
        }
        Ok(HomologyBasis {
            positions: here,
            boundaries,
            reps,
        })
    }

    /// Matrix of the map induced by `f: F(g) → F(target)` on homology.
    fn induced(&self, g: &CoreGraph, target: &CoreGraph, f: &QMat) -> Result<QMat> {
        let src = self.basis(g)?;
        let tgt = self.basis(target)?;
        let dim = tgt.positions.len();
        let mut frame = tgt.boundaries.clone();
        frame.extend(tgt.reps.iter().cloned());
        let nb = tgt.boundaries.len();
        let mut m = QMat::zeros(tgt.reps.len(), src.reps.len(), &QQ);
        for (c, z) in src.reps.iter().enumerate() {
            let mut full = vec![Q::zero(); f.cols];
            for (k, &p) in src.positions.iter().enumerate() {
                full[p] = z[k].clone();
            }
            let img = f.apply(&full, &QQ);
            let restricted: Vec<Q> = tgt.positions.iter().map(|&p| img[p].clone()).collect();
            let coords = coordinates(dim, &frame, &restricted, &QQ).ok_or_else(|| {
                Error::Integrity(format!("{}: image of a cycle is not a cycle", self.label))
            })?;
            for (r, x) in coords[nb..].iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }
}

impl LocalSystem for Homology {
    fn name(&self) -> String {
        self.label.clone()
    }
    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        Ok(vec![self.place; self.basis(g)?.reps.len()])
    }
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        let f = self.inner.on_iso(g, iso, target)?;
        self.induced(g, target, &f)
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let c = contract(g, e)?;
        let f = self.inner.on_contract(g, e)?;
        self.induced(g, &c.graph, &f)
    }
}

/// An idempotent endomorphism of a system that commutes with all structure maps.
pub trait NaturalIdempotent: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn matrix(&self, g: &CoreGraph) -> Result<QMat>;
}

/// The image of a natural idempotent, with a basis of projector columns.
#[derive(Clone, Debug)]
pub struct Image {
    pub inner: System,
    pub projector: Arc<dyn NaturalIdempotent>,
}

impl Image {
    pub fn new(inner: System, projector: Arc<dyn NaturalIdempotent>) -> Self {
        Image { inner, projector }
    }

    /// Basis vectors of the image inside `F(g)` (projector columns, leftmost choice).
    pub fn basis(&self, g: &CoreGraph) -> Result<Vec<Vec<Q>>> {
        let p = self.projector.matrix(g)?;
        Ok(p.independent_columns(&QQ).into_iter().map(|c| p.column(c)).collect())
    }

    fn restrict(&self, g: &CoreGraph, target: &CoreGraph, f: &QMat) -> Result<QMat> {
        let src = self.basis(g)?;
        let tgt = self.basis(target)?;
        let dim = f.rows;
        let mut m = QMat::zeros(tgt.len(), src.len(), &QQ);
        for (c, v) in src.iter().enumerate() {
            let img = f.apply(v, &QQ);
            let coords = coordinates(dim, &tgt, &img, &QQ).ok_or_else(|| {
                Error::Integrity(format!("{} is not preserved", self.projector.name()))
            })?;
            for (r, x) in coords.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        Ok(m)
    }
}

impl LocalSystem for Image {
    fn name(&self) -> String {
        format!("{}({})", self.projector.name(), self.inner.name())
    }
    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        let deg = self.inner.degrees(g)?;
        let p = self.projector.matrix(g)?;
        Ok(p.independent_columns(&QQ).into_iter().map(|c| deg[c]).collect())
    }
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        let f = self.inner.on_iso(g, iso, target)?;
        self.restrict(g, target, &f)
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let c = contract(g, e)?;
        let f = self.inner.on_contract(g, e)?;
        self.restrict(g, &c.graph, &f)
    }
    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let d = self.inner.differential(g)?;
        self.restrict(g, g, &d)
    }
    fn is_dg(&self) -> bool {
        self.inner.is_dg()
    }
}

/// Which summand of `S^h(C_•[−d−1]) = S^h(C̃) ⊕ s·S^{h−1}(C̃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    I,
    II,
}

/// The projector `S^h(P_I)` (summand I) or its complement (summand II) on `S^h(C_•[−d−1])`.
#[derive(Clone, Copy, Debug)]
pub struct SymSplit {
    pub d: i32,
    pub h: usize,
    pub part: Summand,
}

impl SymSplit {
    /// The ambient system `S^h(C_•[−d−1])`.
    pub fn ambient(d: i32, h: usize) -> System {
        Arc::new(super::SymPower::new(Arc::new(Shift::new(Arc::new(Chains), d + 1)), h))
    }

    /// The summand as a system of its own.
    pub fn system(d: i32, h: usize, part: Summand) -> System {
        Arc::new(Image::new(Self::ambient(d, h), Arc::new(SymSplit { d, h, part })))
    }
}

impl NaturalIdempotent for SymSplit {
    fn name(&self) -> String {
        match self.part {
            Summand::I => "I".into(),
            Summand::II => "II".into(),
        }
    }

    fn matrix(&self, g: &CoreGraph) -> Result<QMat> {
        let (p1, _) = split_chains(g)?;
        let deg = Shift::new(Arc::new(Chains), self.d + 1).degrees(g)?;
        let p = sym_map(&p1, &deg, &deg, self.h);
        Ok(match self.part {
            Summand::I => p,
            Summand::II => QMat::identity(p.rows, &QQ).sub(&p, &QQ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HairyGraph;

    #[test]
    fn section_on_small_graphs() {
        let theta = HairyGraph::new(2, vec![(0, 1); 3], vec![]);
        assert_eq!(section_s(&theta).unwrap(), vec![qfrac(1, 2), qfrac(1, 2)]);
        let rose = HairyGraph::new(1, vec![(0, 0); 2], vec![]);
        assert_eq!(section_s(&rose).unwrap(), vec![q(1)]);
        let circle = HairyGraph::new(1, vec![(0, 0)], vec![]);
        assert!(section_s(&circle).is_err());
    }

    #[test]
    fn projectors_are_complementary() {
        let theta = HairyGraph::new(2, vec![(0, 1); 3], vec![]);
        let (p1, p2) = split_chains(&theta).unwrap();
        assert_eq!(p2.rank(&QQ), 1);
        assert!(p1.mul(&p2, &QQ).is_zero(&QQ));
        assert_eq!(p1.mul(&p1, &QQ), p1);
    }
}
