//! Exhaustive generation of hairy graphs by (loop order, hairs, vertices).
//!
//! Every connected graph with at least two vertices has a non-loop edge, and contracting it
//! keeps all valences at least three. Hence all graphs with `v + 1` vertices are vertex
//! splittings of graphs with `v` vertices, starting from the one-vertex rose with hairs.

use super::canon::{canonical_form, has_odd_symmetry};
use super::{max_vertices, CanonicalHairyGraph, HairyGraph, Parity};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// An isomorphism class in canonical labeling, with its vertex automorphisms.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub graph: HairyGraph,
    pub vertex_automorphisms: Vec<Vec<usize>>,
}

impl GraphClass {
    pub fn is_odd(&self, parity: Parity) -> bool {
        has_odd_symmetry(&self.graph, &self.vertex_automorphisms, parity)
    }
}

/// One splitting of a vertex `w`: the half-edges in `to_new` and `hairs_to_new` of the hairs
/// at `w` move to a new vertex joined to `w` by a new edge `w → new`.
#[derive(Clone, Debug)]
pub struct Split {
    pub graph: HairyGraph,
    /// Number of ways to choose the moved hairs among the hairs at `w`.
    pub multiplicity: u64,
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// All ordered splittings of vertex `w` into two vertices of valence at least three each.
///
/// The old vertex keeps its index, the new vertex gets index `g.v`, the new edge is appended
/// as `(w, g.v)`; moved hairs are the first ones anchored at `w`.
pub fn vertex_splits(g: &HairyGraph, w: usize) -> Vec<Split> {
    let mut halves: Vec<(usize, usize)> = Vec::new();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if a == w {
            halves.push((i, 0));
        }
        if b == w {
            halves.push((i, 1));
        }
    }
    let hair_idx: Vec<usize> = (0..g.hairs.len()).filter(|&i| g.hairs[i] == w).collect();
    let k = halves.len();
    let hw = hair_idx.len();
    let u = g.v;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let eb = mask.count_ones() as usize;
        let ea = k - eb;
        for t in 0..=hw {
            if ea + hw - t < 2 || eb + t < 2 {
                continue;
            }
            let mut edges = g.edges.clone();
            for (j, &(i, end)) in halves.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    if end == 0 {
                        edges[i].0 = u;
                    } else {
                        edges[i].1 = u;
                    }
                }
            }
            edges.push((w, u));
            let mut hairs = g.hairs.clone();
            for &i in hair_idx.iter().take(t) {
                hairs[i] = u;
            }
            out.push(Split {
                graph: HairyGraph { v: g.v + 1, edges, hairs },
                multiplicity: binomial(hw, t),
            });
        }
    }
    out
}

type Levels = Arc<Vec<Vec<GraphClass>>>;

fn cache() -> &'static Mutex<HashMap<(usize, usize), Levels>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Levels>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All isomorphism classes (odd ones included) of graphs with loop order `r` and `h` hairs,
/// indexed by vertex count. `h = 0` yields core graphs.
pub fn enumerate_all(r: usize, h: usize) -> Levels {
    if let Some(l) = cache().lock().unwrap().get(&(r, h)) {
        return l.clone();
    }
    let levels = Arc::new(generate(r, h));
    cache().lock().unwrap().insert((r, h), levels.clone());
    levels
}

fn generate(r: usize, h: usize) -> Vec<Vec<GraphClass>> {
    if r == 0 && h == 2 {
        return vec![vec![GraphClass {
            graph: HairyGraph::line(),
            vertex_automorphisms: vec![vec![]],
        }]];
    }
    let mut levels: Vec<Vec<GraphClass>> = vec![Vec::new()];
    if 2 * r + h < 3 {
        return levels;
    }
    let rose = HairyGraph::new(1, vec![(0, 0); r], vec![0; h]);
    let cf = canonical_form(&rose);
    levels.push(vec![GraphClass {
        graph: cf.graph,
        vertex_automorphisms: cf.vertex_automorphisms,
    }]);
    let vmax = max_vertices(r, h);
    for v in 1..vmax {
        let found: Vec<(HairyGraph, Vec<Vec<usize>>)> = levels[v]
            .par_iter()
            .flat_map_iter(|c| {
                let g = &c.graph;
                (0..g.v)
                    .flat_map(|w| vertex_splits(g, w))
                    .map(|s| {
                        let cf = canonical_form(&s.graph);
                        (cf.graph, cf.vertex_automorphisms)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut uniq: BTreeMap<HairyGraph, Vec<Vec<usize>>> = BTreeMap::new();
        for (g, a) in found {
            uniq.entry(g).or_insert(a);
        }
        levels.push(
            uniq.into_iter()
                .map(|(graph, vertex_automorphisms)| GraphClass {
                    graph,
                    vertex_automorphisms,
                })
                .collect(),
        );
    }
    levels
}

/// Nonzero canonical generators with exactly (r, h, v) for the given parities, in a fixed order.
pub fn enumerate(r: usize, h: usize, v: usize, parity: Parity) -> Vec<CanonicalHairyGraph> {
    let levels = enumerate_all(r, h);
    levels
        .get(v)
        .map(|l| {
            l.iter()
                .filter(|c| !c.is_odd(parity))
                .map(|c| CanonicalHairyGraph {
                    graph: c.graph.clone(),
                    parity,
                    is_zero: false,
                })
                .collect()
        })
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let p22 = Parity::of(2, 2);
        assert_eq!(enumerate(1, 1, 1, p22).len(), 1);
        assert_eq!(enumerate(0, 2, 0, p22).len(), 1);
        assert_eq!(enumerate(2, 1, 1, Parity::of(3, 3)).len(), 0);
        let cores = enumerate_all(2, 0);
        assert_eq!(cores[1].len(), 1);
        assert_eq!(cores[2].len(), 2);
    }

    #[test]
    fn splits_of_trivalent_vertex_are_empty() {
        let g = HairyGraph::hedgehog(3);
        assert!((0..3).all(|w| vertex_splits(&g, w).is_empty()));
    }
}
