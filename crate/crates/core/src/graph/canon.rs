//! Canonical labeling of hairy multigraphs, orientation signs and odd-symmetry detection.
//!
//! The reference orientation of a labeled graph is: internal edges in list order, each
//! directed as stored, then internal vertices by index, then hairs in list order (each hair
//! being its external vertex followed by its edge). Canonical graphs store every edge as
//! `(a, b)` with `a <= b`, edges sorted, hairs sorted.

use super::{HairyGraph, Parity};
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// An isomorphism from a labeled graph onto another one (typically its canonical form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
    pub eflip: Vec<bool>,
    pub hmap: Vec<usize>,
}

impl Relabel {
    pub fn identity(g: &HairyGraph) -> Self {
        Relabel {
            vmap: (0..g.v).collect(),
            emap: (0..g.edges.len()).collect(),
            eflip: vec![false; g.edges.len()],
            hmap: (0..g.hairs.len()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Relabel) -> Relabel {
        Relabel {
            vmap: self.vmap.iter().map(|&x| other.vmap[x]).collect(),
            emap: self.emap.iter().map(|&x| other.emap[x]).collect(),
            eflip: self
                .emap
                .iter()
                .zip(&self.eflip)
                .map(|(&x, &f)| f ^ other.eflip[x])
                .collect(),
            hmap: self.hmap.iter().map(|&x| other.hmap[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Relabel {
        let inv = |p: &[usize]| {
            let mut q = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x] = i;
            }
            q
        };
        let emap = inv(&self.emap);
        let eflip = emap.iter().map(|&i| self.eflip[i]).collect();
        Relabel {
            vmap: inv(&self.vmap),
            emap,
            eflip,
            hmap: inv(&self.hmap),
        }
    }

    /// Orientation sign of this relabeling for the given parities: the Koszul sign of the
    /// induced permutation of the orientation set times (−1)^n per reversed edge.
    pub fn sign(&self, parity: Parity) -> i32 {
        let mut s = 1;
        if parity.edges_odd() {
            s *= perm_sign(&self.emap);
        }
        if parity.vertices_odd() {
            s *= perm_sign(&self.vmap);
        }
        if parity.flips_negative() && self.eflip.iter().filter(|&&f| f).count() % 2 == 1 {
            s = -s;
        }
        if parity.hairs_odd() {
            s *= perm_sign(&self.hmap);
        }
        s
    }

    /// Sign of the edge permutation alone.
    pub fn edge_sign(&self) -> i32 {
        perm_sign(&self.emap)
    }

    /// Checks that this map really is an isomorphism `g → h`.
    pub fn is_isomorphism(&self, g: &HairyGraph, h: &HairyGraph) -> bool {
        if g.v != h.v || g.edges.len() != h.edges.len() || g.hairs.len() != h.hairs.len() {
            return false;
        }
        let bij = |p: &[usize], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !bij(&self.vmap, g.v) || !bij(&self.emap, g.edges.len()) || !bij(&self.hmap, g.hairs.len()) {
            return false;
        }
        g.edges.iter().enumerate().all(|(i, &(a, b))| {
            let (x, y) = h.edges[self.emap[i]];
            let (a, b) = (self.vmap[a], self.vmap[b]);
            if self.eflip[i] {
                (b, a) == (x, y)
            } else {
                (a, b) == (x, y)
            }
        }) && g
            .hairs
            .iter()
            .enumerate()
            .all(|(i, &a)| h.hairs[self.hmap[i]] == self.vmap[a])
    }
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Relabels vertices by `vmap` and normalizes: edges stored low→high and sorted stably,
/// hairs sorted stably. Returns the normalized graph and the isomorphism onto it.
pub fn apply_vertex_map(g: &HairyGraph, vmap: &[usize]) -> (HairyGraph, Relabel) {
    let mut es: Vec<((usize, usize), usize, bool)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (x, y) = (vmap[a], vmap[b]);
            if x <= y {
                ((x, y), i, false)
            } else {
                ((y, x), i, true)
            }
        })
        .collect();
    es.sort_by_key(|e| e.0);
    let mut emap = vec![0; es.len()];
    let mut eflip = vec![false; es.len()];
    for (pos, (_, i, f)) in es.iter().enumerate() {
        emap[*i] = pos;
        eflip[*i] = *f;
    }
    let mut hs: Vec<(usize, usize)> = g.hairs.iter().enumerate().map(|(i, &a)| (vmap[a], i)).collect();
    hs.sort_by_key(|h| h.0);
    let mut hmap = vec![0; hs.len()];
    for (pos, (_, i)) in hs.iter().enumerate() {
        hmap[*i] = pos;
    }
    let graph = HairyGraph {
        v: g.v,
        edges: es.iter().map(|e| e.0).collect(),
        hairs: hs.iter().map(|h| h.0).collect(),
    };
    (
        graph,
        Relabel {
            vmap: vmap.to_vec(),
            emap,
            eflip,
            hmap,
        },
    )
}

struct Adjacency {
    v: usize,
    mult: Vec<u32>,
    loops: Vec<u32>,
    hairs: Vec<u32>,
}

impl Adjacency {
    fn new(g: &HairyGraph) -> Self {
        let v = g.v;
        let mut mult = vec![0; v * v];
        let mut loops = vec![0; v];
        for &(a, b) in &g.edges {
            if a == b {
                loops[a] += 1;
            } else {
                mult[a * v + b] += 1;
                mult[b * v + a] += 1;
            }
        }
        let mut hairs = vec![0; v];
        for &a in &g.hairs {
            hairs[a] += 1;
        }
        Adjacency { v, mult, loops, hairs }
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.v + b]
    }

    /// Certificate of the graph relabeled so that `order[p]` gets position `p`.
    fn certificate(&self, order: &[usize]) -> Vec<u32> {
        let v = self.v;
        let mut c = Vec::with_capacity(1 + 2 * v + v * (v - 1) / 2);
        c.push(v as u32);
        c.extend(order.iter().map(|&x| self.hairs[x]));
        c.extend(order.iter().map(|&x| self.loops[x]));
        for i in 0..v {
            for j in i + 1..v {
                c.push(self.m(order[i], order[j]));
            }
        }
        c
    }

    fn initial_partition(&self) -> Vec<Vec<usize>> {
        let key = |x: usize| {
            let val: u32 = (0..self.v).map(|y| self.m(x, y)).sum::<u32>() + 2 * self.loops[x] + self.hairs[x];
            (val, self.hairs[x], self.loops[x])
        };
        let mut vs: Vec<usize> = (0..self.v).collect();
        vs.sort_by_key(|&x| key(x));
        split_by(&vs, key)
    }

    /// Equitable refinement of an ordered partition; label-independent.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = vec![0; self.v];
            for (i, c) in cells.iter().enumerate() {
                for &x in c {
                    cell_of[x] = i;
                }
            }
            let k = cells.len();
            let mut changed = false;
            let mut out = Vec::with_capacity(k);
            for c in &cells {
                if c.len() == 1 {
                    out.push(c.clone());
                    continue;
                }
                let sig = |x: usize| {
                    let mut s = vec![0u32; k];
                    for y in 0..self.v {
                        s[cell_of[y]] += self.m(x, y);
                    }
                    s
                };
                let mut vs = c.clone();
                vs.sort_by_key(|&x| sig(x));
                let parts = split_by(&vs, sig);
                if parts.len() > 1 {
                    changed = true;
                }
                out.extend(parts);
            }
            cells = out;
            if !changed {
                return cells;
            }
        }
    }

    fn search(&self, cells: Vec<Vec<usize>>, best: &mut Option<Vec<u32>>, leaves: &mut Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let cert = self.certificate(&order);
                match best {
                    Some(b) if cert > *b => {}
                    Some(b) if cert == *b => leaves.push(order),
                    _ => {
                        *best = Some(cert);
                        leaves.clear();
                        leaves.push(order);
                    }
                }
            }
            Some(i) => {
                for &x in &cells[i] {
                    let mut next = Vec::with_capacity(cells.len() + 1);
                    next.extend(cells[..i].iter().cloned());
                    next.push(vec![x]);
                    next.push(cells[i].iter().copied().filter(|&y| y != x).collect());
                    next.extend(cells[i + 1..].iter().cloned());
                    self.search(next, best, leaves);
                }
            }
        }
    }
}

fn split_by<K: PartialEq>(sorted: &[usize], key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<K> = None;
    for &x in sorted {
        let k = key(x);
        if last.as_ref() == Some(&k) {
            out.last_mut().unwrap().push(x);
        } else {
            out.push(vec![x]);
            last = Some(k);
        }
    }
    out
}

/// Canonical representative of a labeled graph, the isomorphism onto it, and the vertex
/// automorphisms of the representative.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub graph: HairyGraph,
    pub relabel: Relabel,
    /// Vertex permutations of `graph` preserving it (identity included).
    pub vertex_automorphisms: Vec<Vec<usize>>,
}

impl CanonicalForm {
    /// True when some automorphism acts by −1 on the orientation for these parities.
    pub fn is_odd(&self, parity: Parity) -> bool {
        has_odd_symmetry(&self.graph, &self.vertex_automorphisms, parity)
    }
}

pub fn canonical_form(g: &HairyGraph) -> CanonicalForm {
    if g.v == 0 {
        return CanonicalForm {
            graph: g.clone(),
            relabel: Relabel::identity(g),
            vertex_automorphisms: vec![vec![]],
        };
    }
    let adj = Adjacency::new(g);
    let mut best = None;
    let mut leaves = Vec::new();
    adj.search(adj.initial_partition(), &mut best, &mut leaves);
    let to_pos = |order: &[usize]| {
        let mut p = vec![0; order.len()];
        for (pos, &x) in order.iter().enumerate() {
            p[x] = pos;
        }
        p
    };
    let pi0 = to_pos(&leaves[0]);
    let (graph, relabel) = apply_vertex_map(g, &pi0);
    // beta = lambda ∘ pi0^{-1} is an automorphism of the canonical graph
    let autos = leaves
        .iter()
        .map(|order| {
            let lambda = to_pos(order);
            let mut beta = vec![0; g.v];
            for x in 0..g.v {
                beta[pi0[x]] = lambda[x];
            }
            beta
        })
        .collect();
    CanonicalForm {
        graph,
        relabel,
        vertex_automorphisms: autos,
    }
}

/// Odd symmetry test on a normalized graph with known vertex automorphisms.
pub fn has_odd_symmetry(g: &HairyGraph, autos: &[Vec<usize>], parity: Parity) -> bool {
    if g.is_line() {
        // swapping the two ends: two external vertices exchanged and the edge reversed
        return !parity.even_codim();
    }
    let mut sorted = g.edges.clone();
    sorted.sort();
    let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
    if parity.edges_odd() && repeated {
        return true;
    }
    if parity.flips_negative() && g.edges.iter().any(|(a, b)| a == b) {
        return true;
    }
    if parity.hairs_odd() && g.hairs_at().iter().any(|&c| c >= 2) {
        return true;
    }
    autos.iter().any(|beta| {
        let (img, rel) = apply_vertex_map(g, beta);
        debug_assert_eq!(&img, g);
        rel.sign(parity) < 0
    })
}

/// Canonical generator with its parity class and vanishing flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalHairyGraph {
    pub graph: HairyGraph,
    pub parity: Parity,
    pub is_zero: bool,
}

/// A canonical generator together with the sign relating the input to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGenerator {
    pub canonical: CanonicalHairyGraph,
    pub sign: i32,
}

/// Validates `g` and returns its canonical generator and the sign with `g = sign · canonical`.
pub fn canonicalize(g: &HairyGraph, parity: Parity) -> Result<SignedGenerator> {
    g.validate(1)?;
    let cf = canonical_form(g);
    let is_zero = cf.is_odd(parity);
    Ok(SignedGenerator {
        sign: cf.relabel.sign(parity),
        canonical: CanonicalHairyGraph {
            graph: cf.graph,
            parity,
            is_zero,
        },
    })
}

/// All automorphisms of a normalized graph, including permutations of parallel edges and
/// reversals of loops. Hairs are mapped in stable order.
pub fn full_automorphisms(g: &HairyGraph, vertex_autos: &[Vec<usize>]) -> Vec<Relabel> {
    // classes of identical normalized edges
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        match classes.iter_mut().find(|c| g.edges[c[0]] == *e) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let mut local: Vec<Relabel> = vec![Relabel::identity(g)];
    for class in &classes {
        let is_loop = g.edges[class[0]].0 == g.edges[class[0]].1;
        let mut next = Vec::new();
        for perm in permutations(class.len()) {
            let flip_patterns = if is_loop { 1usize << class.len() } else { 1 };
            for bits in 0..flip_patterns {
                for base in &local {
                    let mut r = base.clone();
                    for (k, &i) in class.iter().enumerate() {
                        r.emap[i] = class[perm[k]];
                        r.eflip[i] = bits >> k & 1 == 1;
                    }
                    next.push(r);
                }
            }
        }
        local = next;
    }
    let mut out = Vec::new();
    for beta in vertex_autos {
        let (_, lift) = apply_vertex_map(g, beta);
        for l in &local {
            out.push(l.then(&lift));
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even() -> Parity {
        Parity::of(2, 2)
    }

    #[test]
    fn theta_is_odd_for_even_n() {
        let theta = HairyGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![]);
        assert!(canonical_form(&theta).is_odd(even()));
        let g = HairyGraph::new(2, vec![(0, 1), (0, 1)], vec![0, 1]);
        assert!(canonicalize(&g, even()).unwrap().canonical.is_zero);
    }

    #[test]
    fn asymmetric_graph_has_sign_one() {
        // vertex 0: loop + edge + hair, vertex 1: two edges to 2 ... build something rigid
        let g = HairyGraph::new(3, vec![(0, 0), (0, 1), (1, 2), (1, 2), (2, 2)], vec![0, 1, 2, 2]);
        let sg = canonicalize(&g, Parity::of(1, 2)).unwrap();
        let again = canonicalize(&sg.canonical.graph, Parity::of(1, 2)).unwrap();
        assert_eq!(again.sign, 1);
        assert_eq!(again.canonical, sg.canonical);
    }

    #[test]
    fn loop_vertex_with_two_loops_vanishes_for_odd_n() {
        let g = HairyGraph::new(1, vec![(0, 0), (0, 0)], vec![0]);
        assert!(canonicalize(&g, Parity::of(3, 3)).unwrap().canonical.is_zero);
    }

    #[test]
    fn theta_full_group_has_twelve_elements() {
        let theta = HairyGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![]);
        let cf = canonical_form(&theta);
        let g = full_automorphisms(&cf.graph, &cf.vertex_automorphisms);
        assert_eq!(g.len(), 12);
        assert!(g.iter().all(|a| a.is_isomorphism(&cf.graph, &cf.graph)));
    }
}
