//! Coefficient systems on the category of core graphs of fixed loop order, whose morphisms
//! are generated by isomorphisms and contractions of non-loop edges.

pub mod algebra;
pub mod basic;
pub mod derham;
pub mod derived;
pub mod hp;

use crate::error::{Error, Result};
use crate::graph::canon::apply_vertex_map;
use crate::graph::{enumerate_all, HairyGraph, Relabel};
use crate::linalg::{Mat, Q, QQ};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

pub use algebra::{Shift, SymPower, Tensor};
pub use basic::{Chains, Det, H1, Trivial};
pub use derham::DeRham;
pub use derived::{section_s, split_chains, Homology, Image, SymSplit};
pub use hp::HpComplex;

/// Dense exact matrix.
pub type QMat = Mat<Q>;

/// A graph without hairs: connected, all valences at least three, loops and multi-edges allowed.
pub type CoreGraph = HairyGraph;

pub fn validate_core(g: &CoreGraph) -> Result<()> {
    if !g.hairs.is_empty() {
        return Err(Error::Structural("core graphs carry no hairs".into()));
    }
    g.validate(0)
}

/// A functor from core graphs to (dg) vector spaces with ordered graded bases.
///
/// Matrices have one column per source basis vector and one row per target basis vector.
pub trait LocalSystem: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// Degree of every basis vector of `F(g)`.
    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>>;

    /// `F(iso)` for an isomorphism `iso: g → target`.
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat>;

    /// `F(c_e)` for the contraction of the non-loop edge `e`, landing in `contract(g, e).graph`.
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat>;

    /// Internal differential of degree +1.
    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let n = self.degrees(g)?.len();
        Ok(QMat::zeros(n, n, &QQ))
    }

    fn is_dg(&self) -> bool {
        false
    }

    fn dim(&self, g: &CoreGraph) -> Result<usize> {
        Ok(self.degrees(g)?.len())
    }
}

pub type System = Arc<dyn LocalSystem>;

/// Result of contracting an edge: the new graph and where old vertices and edges went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: CoreGraph,
    pub vmap: Vec<usize>,
    /// `None` for the contracted edge.
    pub emap: Vec<Option<usize>>,
}

/// Contracts the non-loop edge `e = (a, b)`: `b` is merged into `a`, the remaining vertices and
/// edges keep their relative order and edge directions.
pub fn contract(g: &CoreGraph, e: usize) -> Result<Contraction> {
    let (a, b) = *g
        .edges
        .get(e)
        .ok_or_else(|| Error::InvalidMorphism(format!("no edge {e}")))?;
    if a == b {
        return Err(Error::InvalidMorphism(format!("edge {e} is a loop")));
    }
    let vmap: Vec<usize> = (0..g.v)
        .map(|x| {
            let y = if x == b { a } else { x };
            if y > b {
                y - 1
            } else {
                y
            }
        })
        .collect();
    let mut edges = Vec::with_capacity(g.edges.len() - 1);
    let mut emap = Vec::with_capacity(g.edges.len());
    for (i, &(s, t)) in g.edges.iter().enumerate() {
        if i == e {
            emap.push(None);
        } else {
            emap.push(Some(edges.len()));
            edges.push((vmap[s], vmap[t]));
        }
    }
    let hairs = g.hairs.iter().map(|&x| vmap[x]).collect();
    Ok(Contraction {
        graph: HairyGraph::new(g.v - 1, edges, hairs),
        vmap,
        emap,
    })
}

/// For an isomorphism `phi: g → target` and an edge `e` of `g`, the isomorphism
/// `g/e → target/phi(e)` making the square with both contractions commute.
pub fn induced_iso(g: &CoreGraph, phi: &Relabel, target: &CoreGraph, e: usize) -> Result<(Contraction, Contraction, Relabel)> {
    let c1 = contract(g, e)?;
    let c2 = contract(target, phi.emap[e])?;
    let mut vmap = vec![0; c1.graph.v];
    for x in 0..g.v {
        vmap[c1.vmap[x]] = c2.vmap[phi.vmap[x]];
    }
    let mut emap = vec![0; c1.graph.edges.len()];
    let mut eflip = vec![false; c1.graph.edges.len()];
    for i in 0..g.edges.len() {
        if let Some(j) = c1.emap[i] {
            emap[j] = c2.emap[phi.emap[i]].expect("only the contracted edge disappears");
            eflip[j] = phi.eflip[i];
        }
    }
    let rel = Relabel {
        vmap,
        emap,
        eflip,
        hmap: Vec::new(),
    };
    debug_assert!(rel.is_isomorphism(&c1.graph, &c2.graph));
    Ok((c1, c2, rel))
}

/// Applies an arbitrary relabeling: vertices by `vmap`, edge `i` moved to slot `emap[i]` and
/// reversed when `eflip[i]`.
pub fn relabel(g: &CoreGraph, vmap: &[usize], emap: &[usize], eflip: &[bool]) -> (CoreGraph, Relabel) {
    let mut edges = vec![(0, 0); g.edges.len()];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let (x, y) = (vmap[a], vmap[b]);
        edges[emap[i]] = if eflip[i] { (y, x) } else { (x, y) };
    }
    let rel = Relabel {
        vmap: vmap.to_vec(),
        emap: emap.to_vec(),
        eflip: eflip.to_vec(),
        hmap: Vec::new(),
    };
    (HairyGraph::new(g.v, edges, Vec::new()), rel)
}

/// All core graph classes of loop order `r`, in canonical labeling, fewest vertices first.
pub fn core_graphs(r: usize) -> Vec<CoreGraph> {
    enumerate_all(r, 0)
        .iter()
        .flat_map(|level| level.iter().map(|c| c.graph.clone()))
        .collect()
}

/// Canonical form of a core graph with the isomorphism onto it.
pub fn canonical_core(g: &CoreGraph) -> (CoreGraph, Relabel) {
    let cf = crate::graph::canonical_form(g);
    (cf.graph, cf.relabel)
}

/// Normalized graph after a vertex permutation, with the isomorphism onto it.
pub fn permute_vertices(g: &CoreGraph, vmap: &[usize]) -> (CoreGraph, Relabel) {
    apply_vertex_map(g, vmap)
}

/// Sign of the permutation that stably sorts `items` by key, counting only swaps of two odd
/// items.
pub fn koszul_sort_sign<K: Ord>(items: &[(K, bool)]) -> i32 {
    let mut s = 1;
    for i in 0..items.len() {
        if !items[i].1 {
            continue;
        }
        for j in i + 1..items.len() {
            if items[j].1 && items[j].0 < items[i].0 {
                s = -s;
            }
        }
    }
    s
}

/// Caches degrees and differentials of a system per graph serialization.
#[derive(Debug)]
pub struct Memo {
    inner: System,
    degrees: RwLock<HashMap<String, Vec<i32>>>,
    diffs: RwLock<HashMap<String, QMat>>,
}

impl Memo {
    pub fn wrap(inner: System) -> System {
        Arc::new(Memo {
            inner,
            degrees: RwLock::new(HashMap::new()),
            diffs: RwLock::new(HashMap::new()),
        })
    }
}

impl LocalSystem for Memo {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        let key = g.to_string();
        if let Some(d) = self.degrees.read().unwrap().get(&key) {
            return Ok(d.clone());
        }
        let d = self.inner.degrees(g)?;
        self.degrees.write().unwrap().entry(key).or_insert_with(|| d.clone());
        Ok(d)
    }

    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        self.inner.on_iso(g, iso, target)
    }

    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        self.inner.on_contract(g, e)
    }

    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let key = g.to_string();
        if let Some(d) = self.diffs.read().unwrap().get(&key) {
            return Ok(d.clone());
        }
        let d = self.inner.differential(g)?;
        self.diffs.write().unwrap().entry(key).or_insert_with(|| d.clone());
        Ok(d)
    }

    fn is_dg(&self) -> bool {
        self.inner.is_dg()
    }
}

/// Checks identities, composition of isomorphisms, compatibility of contractions with
/// isomorphisms and of all maps with the internal differential, on the given isomorphisms
/// out of `g`.
pub fn check_functoriality(f: &dyn LocalSystem, g: &CoreGraph, isos: &[(Relabel, CoreGraph)]) -> Result<()> {
    let fail = |what: &str| Err(Error::Integrity(format!("{} fails {what} on {g}", f.name())));
    let n = f.dim(g)?;
    if f.on_iso(g, &Relabel::identity(g), g)? != QMat::identity(n, &QQ) {
        return fail("identity");
    }
    let dg = f.differential(g)?;
    if !dg.mul(&dg, &QQ).is_zero(&QQ) {
        return fail("d^2 = 0");
    }
    for (phi, tgt) in isos {
        let fphi = f.on_iso(g, phi, tgt)?;
        if f.differential(tgt)?.mul(&fphi, &QQ) != fphi.mul(&dg, &QQ) {
            return fail("iso/differential");
        }
        let back = f.on_iso(tgt, &phi.inverse(), g)?;
        if back.mul(&fphi, &QQ) != QMat::identity(n, &QQ) {
            return fail("iso composition");
        }
        for e in 0..g.edges.len() {
            if g.edges[e].0 == g.edges[e].1 {
                continue;
            }
            let (c1, _, bar) = induced_iso(g, phi, tgt, e)?;
            let c2g = contract(tgt, phi.emap[e])?.graph;
            let left = f.on_contract(tgt, phi.emap[e])?.mul(&fphi, &QQ);
            let right = f.on_iso(&c1.graph, &bar, &c2g)?.mul(&f.on_contract(g, e)?, &QQ);
            if left != right {
                return fail("contraction/iso square");
            }
        }
    }
    for e in 0..g.edges.len() {
        if g.edges[e].0 == g.edges[e].1 {
            continue;
        }
        let c = contract(g, e)?;
        let fc = f.on_contract(g, e)?;
        if f.differential(&c.graph)?.mul(&fc, &QQ) != fc.mul(&dg, &QQ) {
            return fail("contraction/differential");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_of_theta_edge() {
        let theta = HairyGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![]);
        let c = contract(&theta, 1).unwrap();
        assert_eq!(c.graph, HairyGraph::new(1, vec![(0, 0), (0, 0)], vec![]));
        assert_eq!(c.emap, vec![Some(0), None, Some(1)]);
        let rose = HairyGraph::new(1, vec![(0, 0), (0, 0)], vec![]);
        assert!(matches!(contract(&rose, 0), Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn koszul_signs() {
        assert_eq!(koszul_sort_sign(&[(1, true), (0, true)]), -1);
        assert_eq!(koszul_sort_sign(&[(1, true), (0, false)]), 1);
        assert_eq!(koszul_sort_sign(&[(2, true), (1, true), (0, true)]), -1);
    }

    #[test]
    fn core_graph_counts() {
        assert_eq!(core_graphs(2).len(), 3);
    }
}
