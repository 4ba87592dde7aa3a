//! The splitting of even-codimension hairy complexes into the summands I and II.
//!
//! In even codimension hairs are odd, so every generator is a core graph with single hairs at
//! core vertices and on subdivided edges. On generators the projector onto summand I keeps
//! edge hairs and sends each hair at a core vertex `v` to itself minus
//! `c_v · Σ_w (the hair moved to w)`, with `c_v = (val(v) − 2)/(2r − 2)` and `w` running over the
//! core vertices.

use super::defect::core_vertices;
use crate::complex::{reduce, GradedComplex, HairyComplex};
use crate::error::{Error, Result};
use crate::graph::HairyGraph;
use crate::linalg::{coordinates, q, qfrac, Mat, SparseMatrix, Q, QQ};
use num::Zero;
use std::collections::{BTreeMap, HashMap};

pub type QMat = Mat<Q>;

/// Projectors onto summand I, by degree, together with the complex they act on.
#[derive(Clone, Debug)]
pub struct EvenSplitting {
    pub projectors: BTreeMap<i32, QMat>,
}

/// Summand I applied to one generator, as coordinates over canonical generators.
pub fn project_generator(g: &HairyGraph, r: usize, parity: crate::graph::Parity) -> BTreeMap<HairyGraph, Q> {
    let core = core_vertices(g);
    let mut edge_val = vec![0i64; g.v];
    for &(a, b) in &g.edges {
        edge_val[a] += 1;
        edge_val[b] += 1;
    }
    let c = |v: usize| qfrac(edge_val[v] - 2, 2 * r as i64 - 2);
    let vertex_hairs: Vec<usize> = (0..g.hairs.len()).filter(|&i| core.contains(&g.hairs[i])).collect();
    // each vertex hair either stays (coefficient 1) or moves to some core vertex w
    let mut terms: Vec<(Vec<usize>, Q)> = vec![(g.hairs.clone(), q(1))];
    for &i in &vertex_hairs {
        let mut next = Vec::new();
        for (hairs, coeff) in terms {
            let factor = -(coeff.clone() * c(hairs[i]));
            next.push((hairs.clone(), coeff));
            if factor.is_zero() {
                continue;
            }
            for &w in &core {
                let mut moved = hairs.clone();
                moved[i] = w;
                next.push((moved, factor.clone()));
            }
        }
        terms = next;
    }
    let mut out: BTreeMap<HairyGraph, Q> = BTreeMap::new();
    for (hairs, coeff) in terms {
        let h = HairyGraph::new(g.v, g.edges.clone(), hairs);
        if let Some((canon, s)) = reduce(&h, parity) {
            *out.entry(canon).or_insert_with(Q::zero) += coeff * q(s);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Projector matrices onto summand I of an even-codimension complex with `r ≥ 2`.
pub fn split_even(c: &HairyComplex) -> Result<EvenSplitting> {
    if !c.parity().even_codim() {
        return Err(Error::Usage("the I/II splitting needs n − m even".into()));
    }
    if c.r < 2 {
        return Err(Error::Usage("the I/II splitting needs loop order at least 2".into()));
    }
    let mut projectors = BTreeMap::new();
    for (&d, gs) in &c.graphs {
        let index: HashMap<&HairyGraph, usize> = gs.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut p = QMat::zeros(gs.len(), gs.len(), &QQ);
        for (col, g) in gs.iter().enumerate() {
            for (img, x) in project_generator(g, c.r, c.parity()) {
                let row = *index
                    .get(&img)
                    .ok_or_else(|| Error::Integrity(format!("projection produced unknown generator {img}")))?;
                p.set(row, col, x);
            }
        }
        projectors.insert(d, p);
    }
    Ok(EvenSplitting { projectors })
}

/// Which summand of the splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    I,
    II,
}

impl EvenSplitting {
    /// The projector onto a summand in degree `d`.
    pub fn projector(&self, d: i32, part: Part) -> QMat {
        let p = self.projectors[&d].clone();
        match part {
            Part::I => p,
            Part::II => QMat::identity(p.rows, &QQ).sub(&p, &QQ),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.projectors.values().all(|p| p.mul(p, &QQ) == *p)
    }

    /// `d P = P d` in every degree.
    pub fn commutes_with(&self, c: &HairyComplex) -> bool {
        self.projectors.iter().all(|(&d, p)| {
            let dd = dense(&c.complex.block(d));
            let lhs = dd.mul(p, &QQ);
            let rhs = match self.projectors.get(&(d + 1)) {
                Some(p1) => p1.mul(&dd, &QQ),
                None => lhs.clone(),
            };
            lhs == rhs
        })
    }

    /// The summand as a complex of its own, with projector columns as basis.
    pub fn summand(&self, c: &HairyComplex, part: Part) -> Result<GradedComplex> {
        let mut bases: BTreeMap<i32, Vec<Vec<Q>>> = BTreeMap::new();
        let mut out = GradedComplex::default();
        for &d in self.projectors.keys() {
            let p = self.projector(d, part);
            let cols = p.independent_columns(&QQ);
            out.basis
                .insert(d, cols.iter().map(|&k| format!("{}#{}", c.complex.basis[&d][k], part_name(part))).collect());
            bases.insert(d, cols.iter().map(|&k| p.column(k)).collect());
        }
        for (&d, src) in &bases {
            let Some(tgt) = bases.get(&(d + 1)) else { continue };
            let dd = dense(&c.complex.block(d));
            let mut trip = Vec::new();
            for (col, v) in src.iter().enumerate() {
                let img = dd.apply(v, &QQ);
                let coords = coordinates(dd.rows, tgt, &img, &QQ)
                    .ok_or_else(|| Error::Integrity("summand is not closed under d".into()))?;
                trip.extend(coords.into_iter().enumerate().map(|(row, x)| (row, col, x)));
            }
            out.blocks.insert(d, SparseMatrix::from_triplets(tgt.len(), src.len(), trip));
        }
        Ok(out)
    }
}

fn part_name(p: Part) -> &'static str {
    match p {
        Part::I => "I",
        Part::II => "II",
    }
}

pub(crate) fn dense(m: &SparseMatrix) -> QMat {
    m.to_dense(&QQ).expect("rational matrices are always representable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::assemble;
    use crate::linalg::RankEngine;

    #[test]
    fn projector_is_idempotent_and_closed() {
        for (m, n) in [(2, 2), (3, 3)] {
            for h in 1..=3 {
                let c = assemble(m, n, 2, h).unwrap();
                let s = split_even(&c).unwrap();
                assert!(s.is_idempotent() && s.commutes_with(&c), "({m},{n}) h={h}");
                for (&d, p) in &s.projectors {
                    let total = p.rank(&QQ) + s.projector(d, Part::II).rank(&QQ);
                    assert_eq!(total, c.complex.dim(d));
                }
            }
        }
    }

    #[test]
    fn summands_add_up_to_the_whole_homology() {
        let e = RankEngine::default();
        let c = assemble(3, 3, 2, 2).unwrap();
        let s = split_even(&c).unwrap();
        let mut sum = e.homology_dims(&s.summand(&c, Part::I).unwrap()).unwrap();
        for (k, v) in e.homology_dims(&s.summand(&c, Part::II).unwrap()).unwrap() {
            *sum.entry(k).or_insert(0) += v;
        }
        assert_eq!(sum, e.homology_dims(&c.complex).unwrap());
    }

    #[test]
    fn odd_codimension_and_low_loop_order_are_rejected() {
        assert!(split_even(&assemble(1, 2, 2, 1).unwrap()).is_err());
        assert!(split_even(&assemble(2, 2, 1, 1).unwrap()).is_err());
    }
}
