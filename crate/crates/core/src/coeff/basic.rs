//! The trivial system, cellular chains, first homology and its determinant.

use super::{contract, CoreGraph, LocalSystem, QMat};
use crate::error::Result;
use crate::graph::Relabel;
use crate::linalg::{q, Q, QQ};
use num::Zero;

/// The one-dimensional system with all maps the identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl LocalSystem for Trivial {
    fn name(&self) -> String {
        "K".into()
    }
    fn degrees(&self, _: &CoreGraph) -> Result<Vec<i32>> {
        Ok(vec![0])
    }
    fn on_iso(&self, _: &CoreGraph, _: &Relabel, _: &CoreGraph) -> Result<QMat> {
        Ok(QMat::identity(1, &QQ))
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        contract(g, e)?;
        Ok(QMat::identity(1, &QQ))
    }
}

/// Cellular chains: edges in degree −1 followed by vertices in degree 0, with boundary
/// `∂e = target − source`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Chains;

/// Matrix of an isomorphism on edge chains: edge `i` goes to `±emap[i]`.
pub(crate) fn edge_iso_matrix(iso: &Relabel) -> QMat {
    let n = iso.emap.len();
    let mut m = QMat::zeros(n, n, &QQ);
    for i in 0..n {
        m.set(iso.emap[i], i, q(if iso.eflip[i] { -1 } else { 1 }));
    }
    m
}

/// Matrix of a contraction on edge chains.
pub(crate) fn edge_contract_matrix(g: &CoreGraph, e: usize) -> Result<QMat> {
    let c = contract(g, e)?;
    let mut m = QMat::zeros(c.graph.edges.len(), g.edges.len(), &QQ);
    for (i, t) in c.emap.iter().enumerate() {
        if let Some(j) = t {
            m.set(*j, i, q(1));
        }
    }
    Ok(m)
}

impl LocalSystem for Chains {
    fn name(&self) -> String {
        "C".into()
    }

    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        let mut d = vec![-1; g.edges.len()];
        d.extend(std::iter::repeat(0).take(g.v));
        Ok(d)
    }

    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, _: &CoreGraph) -> Result<QMat> {
        let ne = g.edges.len();
        let n = ne + g.v;
        let em = edge_iso_matrix(iso);
        let mut m = QMat::zeros(n, n, &QQ);
        for i in 0..ne {
            for j in 0..ne {
                m.set(j, i, em.get(j, i).clone());
            }
        }
        for x in 0..g.v {
            m.set(ne + iso.vmap[x], ne + x, q(1));
        }
        Ok(m)
    }

    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let c = contract(g, e)?;
        let (ne, ne2) = (g.edges.len(), c.graph.edges.len());
        let mut m = QMat::zeros(ne2 + c.graph.v, ne + g.v, &QQ);
        for (i, t) in c.emap.iter().enumerate() {
            if let Some(j) = t {
                m.set(*j, i, q(1));
            }
        }
        for x in 0..g.v {
            m.set(ne2 + c.vmap[x], ne + x, q(1));
        }
        Ok(m)
    }

    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let ne = g.edges.len();
        let n = ne + g.v;
        let mut m = QMat::zeros(n, n, &QQ);
        for (i, &(s, t)) in g.edges.iter().enumerate() {
            if s != t {
                m.set(ne + t, i, q(1));
                m.set(ne + s, i, q(-1));
            }
        }
        Ok(m)
    }

    fn is_dg(&self) -> bool {
        true
    }
}

/// Fundamental cycles of the spanning tree grown by scanning edges in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    /// Edges outside the tree, in index order; cycle `i` contains `non_tree[i]` with coefficient 1.
    pub non_tree: Vec<usize>,
    /// One coefficient vector over the edges per cycle.
    pub cycles: Vec<Vec<i64>>,
}

pub fn cycle_basis(g: &CoreGraph) -> CycleBasis {
    let mut parent: Vec<usize> = (0..g.v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut in_tree = vec![false; g.edges.len()];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            in_tree[i] = true;
        }
    }
    // tree adjacency: (neighbor, edge, +1 when traversed along its direction)
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); g.v];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if in_tree[i] {
            adj[a].push((b, i, 1));
            adj[b].push((a, i, -1));
        }
    }
    let path = |from: usize, to: usize| -> Vec<(usize, i64)> {
        let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; g.v];
        let mut seen = vec![false; g.v];
        let mut queue = std::collections::VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e, s) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e, s));
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = to;
        while cur != from {
            let (x, e, s) = prev[cur].expect("tree is spanning");
            out.push((e, s));
            cur = x;
        }
        out
    };
    let mut non_tree = Vec::new();
    let mut cycles = Vec::new();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if in_tree[i] {
            continue;
        }
        let mut c = vec![0i64; g.edges.len()];
        c[i] = 1;
        // close the cycle with the tree path from b back to a
        for (e, s) in path(b, a) {
            c[e] += s;
        }
        non_tree.push(i);
        cycles.push(c);
    }
    CycleBasis { non_tree, cycles }
}

/// Expresses an edge-chain map on first homology in the cycle bases of source and target.
fn homology_matrix(src: &CoreGraph, tgt: &CoreGraph, edge_map: &QMat) -> QMat {
    let a = cycle_basis(src);
    let b = cycle_basis(tgt);
    let mut m = QMat::zeros(b.cycles.len(), a.cycles.len(), &QQ);
    for (c, cyc) in a.cycles.iter().enumerate() {
        let v: Vec<Q> = cyc.iter().map(|&x| q(x)).collect();
        let img = edge_map.apply(&v, &QQ);
        for (r, &e) in b.non_tree.iter().enumerate() {
            m.set(r, c, img[e].clone());
        }
        debug_assert!({
            let mut back = vec![Q::zero(); tgt.edges.len()];
            for (r, cyc2) in b.cycles.iter().enumerate() {
                for (k, &x) in cyc2.iter().enumerate() {
                    back[k] += m.get(r, c) * q(x);
                }
            }
            back == img
        });
    }
    m
}

/// First homology `H_1` in degree 0, with the fundamental cycle basis.
#[derive(Clone, Copy, Debug, Default)]
pub struct H1;

impl LocalSystem for H1 {
    fn name(&self) -> String {
        "H1".into()
    }
    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        Ok(vec![0; g.loop_order()])
    }
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        Ok(homology_matrix(g, target, &edge_iso_matrix(iso)))
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let c = contract(g, e)?;
        Ok(homology_matrix(g, &c.graph, &edge_contract_matrix(g, e)?))
    }
}

/// The top exterior power of `H_1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Det;

fn one_by_one(x: Q) -> QMat {
    let mut m = QMat::zeros(1, 1, &QQ);
    m.set(0, 0, x);
    m
}

impl LocalSystem for Det {
    fn name(&self) -> String {
        "Det".into()
    }
    fn degrees(&self, _: &CoreGraph) -> Result<Vec<i32>> {
        Ok(vec![0])
    }
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        Ok(one_by_one(H1.on_iso(g, iso, target)?.det(&QQ)))
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        Ok(one_by_one(H1.on_contract(g, e)?.det(&QQ)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::HairyGraph;

    fn theta() -> CoreGraph {
        HairyGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![])
    }

    #[test]
    fn theta_vertex_swap_negates_h1() {
        let g = theta();
        let swap = Relabel {
            vmap: vec![1, 0],
            emap: vec![0, 1, 2],
            eflip: vec![true; 3],
            hmap: vec![],
        };
        let m = H1.on_iso(&g, &swap, &g).unwrap();
        assert_eq!(m, QMat::identity(2, &QQ).scale(&q(-1), &QQ));
        assert_eq!(*Det.on_iso(&g, &swap, &g).unwrap().get(0, 0), q(1));
        let transp = Relabel {
            vmap: vec![0, 1],
            emap: vec![1, 0, 2],
            eflip: vec![false; 3],
            hmap: vec![],
        };
        assert_eq!(*Det.on_iso(&g, &transp, &g).unwrap().get(0, 0), q(-1));
    }

    #[test]
    fn chains_of_theta_and_contraction_rank() {
        let g = theta();
        assert_eq!(Chains.degrees(&g).unwrap(), vec![-1, -1, -1, 0, 0]);
        let c = Chains.on_contract(&g, 0).unwrap();
        assert_eq!((c.rows, c.cols), (3, 5));
        assert_eq!(c.rank(&QQ), 3);
    }
}
