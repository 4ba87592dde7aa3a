//! Graph complexes of core graphs decorated by a coefficient system.
//!
//! The contraction complex `G^r_F` is spanned by the coinvariants `(Or(Γ) ⊗ F(Γ))_{G_Γ}`, realized
//! as the image of the averaging projector. A generator `(Γ, x)` sits in degree `f − |EΓ|` where
//! `f` is the degree of `x`. The graph complex `GC^r_F` is its dual, with degrees negated and
//! transposed blocks.

pub mod expr;

use crate::coeff::{canonical_core, contract, core_graphs, CoreGraph, LocalSystem, QMat, System};
use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use crate::graph::canon::full_automorphisms;
use crate::graph::{canonical_form, HairyGraph, Relabel};
use crate::linalg::{coordinates, q, qfrac, RankEngine, SparseMatrix, Q, QQ};
use num::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

pub use expr::parse_system;

/// One isomorphism class of core graphs with the coinvariants of its decorations.
#[derive(Clone, Debug)]
pub struct Cell {
    pub graph: CoreGraph,
    pub automorphisms: Vec<Relabel>,
    pub projector: QMat,
    /// Projector columns spanning the coinvariants, as vectors in `F(Γ)`.
    pub basis: Vec<Vec<Q>>,
    /// Decoration degree of each basis vector.
    pub degrees: Vec<i32>,
}

impl Cell {
    pub fn edges(&self) -> usize {
        self.graph.edges.len()
    }

    fn positions_in_degree(&self, f: i32) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.degrees[i] == f).collect()
    }
}

/// `G^r_F` with its dual `GC^r_F`.
#[derive(Clone, Debug)]
pub struct DecoratedComplex {
    pub r: usize,
    pub system: String,
    pub cells: Vec<Cell>,
    /// The contraction complex, generators `(cell, basis index)` per degree.
    pub generators: BTreeMap<i32, Vec<(usize, usize)>>,
    pub contraction: GradedComplex,
    pub gc: GradedComplex,
}

impl DecoratedComplex {
    /// Cohomology of `GC^r_F` by degree.
    pub fn homology(&self, engine: &RankEngine) -> Result<BTreeMap<i32, usize>> {
        engine.homology_dims(&self.gc)
    }
}

/// The averaging projector `(1/|G|) Σ_g Or(g) F(g)` with `Or(g)` the sign of the edge
/// permutation.
pub fn averaging_projector(f: &dyn LocalSystem, g: &CoreGraph, autos: &[Relabel]) -> Result<QMat> {
    let n = f.dim(g)?;
    let mut p = QMat::zeros(n, n, &QQ);
    for a in autos {
        let m = f.on_iso(g, a, g)?;
        p = p.add(&m.scale(&q(a.edge_sign() as i64), &QQ), &QQ);
    }
    Ok(p.scale(&qfrac(1, autos.len() as i64), &QQ))
}

fn build_cell(f: &dyn LocalSystem, g: &CoreGraph) -> Result<Cell> {
    let cf = canonical_form(g);
    let autos = full_automorphisms(g, &cf.vertex_automorphisms);
    let projector = averaging_projector(f, g, &autos)?;
    if projector.mul(&projector, &QQ) != projector {
        return Err(Error::Integrity(format!(
            "{} does not act as a group on {g}: averaging is not idempotent",
            f.name()
        )));
    }
    let fdeg = f.degrees(g)?;
    let mut cols = projector.independent_columns(&QQ);
    cols.sort_by_key(|&c| (fdeg[c], c));
    Ok(Cell {
        graph: g.clone(),
        automorphisms: autos,
        basis: cols.iter().map(|&c| projector.column(c)).collect(),
        degrees: cols.iter().map(|&c| fdeg[c]).collect(),
        projector,
    })
}

/// Builds `G^r_F` and `GC^r_F` over all core graphs of loop order `r`.
pub fn build_decorated(f: &System, r: usize) -> Result<DecoratedComplex> {
    if r < 1 {
        return Err(Error::Usage("decorated complexes need loop order at least 1".into()));
    }
    let graphs = core_graphs(r);
    let cells: Vec<Cell> = graphs
        .par_iter()
        .map(|g| build_cell(f.as_ref(), g))
        .collect::<Result<_>>()?;
    let cell_of: HashMap<HairyGraph, usize> = cells.iter().enumerate().map(|(i, c)| (c.graph.clone(), i)).collect();

    let mut generators: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in cells.iter().enumerate() {
        for (k, &fd) in c.degrees.iter().enumerate() {
            generators.entry(fd - c.edges() as i32).or_default().push((ci, k));
        }
    }
    let position: HashMap<(usize, usize), usize> = generators
        .values()
        .flat_map(|gens| gens.iter().enumerate().map(|(i, &x)| (x, i)))
        .collect();

    // images of every generator as sparse columns in the next degree
    let images: Vec<Vec<Vec<(usize, Q)>>> = cells
        .par_iter()
        .enumerate()
        .map(|(ci, cell)| {
            (0..cell.basis.len())
                .map(|k| image(f.as_ref(), &cells, &cell_of, ci, k).map(|im| {
                    im.into_iter()
                        .map(|((cj, kj), x)| (position[&(cj, kj)], x))
                        .collect()
                }))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut contraction = GradedComplex::default();
    for (&deg, gens) in &generators {
        contraction
            .basis
            .insert(deg, gens.iter().map(|&(c, k)| format!("{}#{}", cells[c].graph, k)).collect());
    }
    for (&deg, gens) in &generators {
        let rows = contraction.dim(deg + 1);
        if rows == 0 {
            continue;
        }
        let trip = gens.iter().enumerate().flat_map(|(col, &(c, k))| {
            images[c][k].iter().map(move |(row, x)| (*row, col, x.clone()))
        });
        contraction
            .blocks
            .insert(deg, SparseMatrix::from_triplets(rows, gens.len(), trip.collect::<Vec<_>>()));
    }
    contraction.check_d_squared()?;
    let gc = dualize(&contraction);
    Ok(DecoratedComplex {
        r,
        system: f.name(),
        cells,
        generators,
        contraction,
        gc,
    })
}

/// Degree-negated transpose.
pub fn dualize(c: &GradedComplex) -> GradedComplex {
    GradedComplex {
        basis: c.basis.iter().map(|(d, b)| (-d, b.clone())).collect(),
        blocks: c.blocks.iter().map(|(d, m)| (-d - 1, m.transpose())).collect(),
    }
}

/// Differential of generator `k` of cell `ci`, as coordinates over (cell, basis index).
fn image(
    f: &dyn LocalSystem,
    cells: &[Cell],
    cell_of: &HashMap<HairyGraph, usize>,
    ci: usize,
    k: usize,
) -> Result<BTreeMap<(usize, usize), Q>> {
    let cell = &cells[ci];
    let g = &cell.graph;
    let x = &cell.basis[k];
    let fd = cell.degrees[k];
    let mut out: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    if f.is_dg() {
        let sign = if cell.edges() % 2 == 0 { q(1) } else { q(-1) };
        let dx = f.differential(g)?.apply(x, &QQ);
        let dx: Vec<Q> = dx.iter().map(|v| v * &sign).collect();
        accumulate(&mut out, cell, ci, fd + 1, &dx)?;
    }
    for e in 0..g.edges.len() {
        if g.edges[e].0 == g.edges[e].1 {
            continue;
        }
        let ct = contract(g, e)?;
        let y = f.on_contract(g, e)?.apply(x, &QQ);
        let (canon, psi) = canonical_core(&ct.graph);
        let cj = *cell_of
            .get(&canon)
            .ok_or_else(|| Error::Integrity(format!("contraction {canon} is not a known core graph")))?;
        let sign = if e % 2 == 0 { 1 } else { -1 } * psi.edge_sign();
        let z = f.on_iso(&ct.graph, &psi, &canon)?.apply(&y, &QQ);
        let w: Vec<Q> = cells[cj].projector.apply(&z, &QQ).iter().map(|v| v * q(sign as i64)).collect();
        accumulate(&mut out, &cells[cj], cj, fd, &w)?;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Adds the coordinates of the invariant vector `v` (decoration degree `fd`) in the basis of
/// `cell` to `out`.
fn accumulate(out: &mut BTreeMap<(usize, usize), Q>, cell: &Cell, ci: usize, fd: i32, v: &[Q]) -> Result<()> {
    if v.iter().all(|x| x.is_zero()) {
        return Ok(());
    }
    let pos = cell.positions_in_degree(fd);
    let basis: Vec<Vec<Q>> = pos.iter().map(|&i| cell.basis[i].clone()).collect();
    let coords = coordinates(v.len(), &basis, v, &QQ)
        .ok_or_else(|| Error::Integrity(format!("image outside the coinvariants of {}", cell.graph)))?;
    for (i, c) in pos.into_iter().zip(coords) {
        if !c.is_zero() {
            *out.entry((ci, i)).or_insert_with(Q::zero) += c;
        }
    }
    Ok(())
}

/// Theta graph in canonical labeling.
pub fn theta() -> CoreGraph {
    canonical_core(&HairyGraph::new(2, vec![(0, 1); 3], vec![])).0
}

/// Dimension of the degree-0 invariants of `Or ⊗ V` under the twelve symmetries of theta,
/// after checking that `V` restricts to a representation of that group.
pub fn gc2_closed_form(v: &dyn LocalSystem) -> Result<usize> {
    let g = theta();
    let cf = canonical_form(&g);
    let autos = full_automorphisms(&g, &cf.vertex_automorphisms);
    let mats: Vec<QMat> = autos.iter().map(|a| v.on_iso(&g, a, &g)).collect::<Result<_>>()?;
    for (i, a) in autos.iter().enumerate() {
        for (j, b) in autos.iter().enumerate() {
            let ab = a.then(b);
            let k = autos
                .iter()
                .position(|c| *c == ab)
                .ok_or_else(|| Error::Integrity("theta symmetries do not close".into()))?;
            if mats[k] != mats[j].mul(&mats[i], &QQ) {
                return Err(Error::Integrity(format!("{} is not a representation of the theta symmetries", v.name())));
            }
        }
    }
    let p = averaging_projector(v, &g, &autos)?;
    let deg = v.degrees(&g)?;
    let zero: Vec<usize> = (0..deg.len()).filter(|&i| deg[i] == 0).collect();
    let sub = QMat::from_fn(zero.len(), zero.len(), &QQ, |r, c| p.get(zero[r], zero[c]).clone());
    Ok(sub.rank(&QQ))
}
