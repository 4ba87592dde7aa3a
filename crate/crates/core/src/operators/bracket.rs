//! The Lie bracket of hairy graphs: graft a hair of one graph onto an internal vertex of the
//! other, in all possible ways.

use crate::complex::{reduce, HairyComplex};
use crate::error::{Error, Result};
use crate::graph::{degree, HairyGraph, Parity};
use crate::linalg::{q, SparseMatrix};
use std::collections::{BTreeMap, HashMap};

/// A formal linear combination of canonical generators.
pub type FormalSum = BTreeMap<HairyGraph, i64>;

fn add_reduced(acc: &mut FormalSum, g: &HairyGraph, coeff: i64, parity: Parity) {
    if coeff == 0 {
        return;
    }
    if let Some((c, s)) = reduce(g, parity) {
        let e = acc.entry(c.clone()).or_insert(0);
        *e += coeff * s;
        if *e == 0 {
            acc.remove(&c);
        }
    }
}

/// Parities of the orientation letters: internal edge, internal vertex, external vertex, hair
/// edge.
struct Letters {
    edge: bool,
    vertex: bool,
    external: bool,
}

impl Letters {
    fn of(m: i32, n: i32) -> Self {
        Letters {
            edge: n.rem_euclid(2) == 0,
            vertex: n.rem_euclid(2) == 1,
            external: m.rem_euclid(2) == 1,
        }
    }
}

/// Sign of sorting the letters by key, counting only swaps of two odd letters.
fn koszul(items: &[(usize, bool)]) -> i64 {
    let mut s = 1;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i].0 > items[j].0 && items[i].1 && items[j].1 {
                s = -s;
            }
        }
    }
    s
}

/// `Γ1 ∘ Γ2`: every hair of `Γ1` grafted onto every internal vertex of `Γ2`.
pub fn graft(g1: &HairyGraph, g2: &HairyGraph, m: i32, n: i32) -> FormalSum {
    let parity = Parity::of(m, n);
    let mut acc = FormalSum::new();
    for (g, c) in graft_labeled(g1, g2, m, n) {
        add_reduced(&mut acc, &g, c, parity);
    }
    acc
}

/// The terms of `Γ1 ∘ Γ2` as labeled graphs, before canonical forms and cancellations.
pub fn graft_labeled(g1: &HairyGraph, g2: &HairyGraph, m: i32, n: i32) -> Vec<(HairyGraph, i64)> {
    let lt = Letters::of(m, n);
    let mut acc = Vec::new();
    if g2.is_line() {
        return acc;
    }
    if g1.is_line() {
        // word x1 (x2 e); the grafted end moves to the end of the word, and grafting x2 reverses e
        let end2 = if (m + n).rem_euclid(2) == 0 { 1 } else { -1 };
        let block_odd = lt.external != lt.edge;
        let before = (g2.edges.len() * lt.edge as usize + g2.v * lt.vertex as usize) % 2;
        let mut pass = if block_odd && before == 1 { -1 } else { 1 };
        if (m * n).rem_euclid(2) == 1 {
            pass = -pass;
        }
        for w in 0..g2.v {
            let mut hairs = vec![w];
            hairs.extend(&g2.hairs);
            acc.push((HairyGraph::new(g2.v, g2.edges.clone(), hairs), pass * (1 + end2)));
        }
        return acc;
    }
    let (v1, e1, h1) = (g1.v, g1.edges.len(), g1.hairs.len());
    let (e2, h2) = (g2.edges.len(), g2.hairs.len());
    let block_odd = lt.external != lt.edge;
    for h in 0..h1 {
        // move x_h to the end of Γ1's word, where it meets Γ2
        let after = lt.edge as usize + (h1 - h - 1) * block_odd as usize;
        let front = if lt.external && after % 2 == 1 { -1 } else { 1 };
        // current word: E1 V1 B1<h e_h B1>h E2 V2 B2; target: E1 e_h E2 V1 V2 B1\h B2
        let mut items: Vec<(usize, bool)> = Vec::new();
        let (k_e1, k_eh, k_e2, k_v1, k_v2, k_b1, k_b2) = (0, 1, 2, 3, 4, 5, 6);
        let key = |block: usize, i: usize| block * 1_000_000 + i;
        for i in 0..e1 {
            items.push((key(k_e1, i), lt.edge));
        }
        for i in 0..v1 {
            items.push((key(k_v1, i), lt.vertex));
        }
        for i in 0..h {
            items.push((key(k_b1, i), block_odd));
        }
        items.push((key(k_eh, 0), lt.edge));
        for i in h + 1..h1 {
            items.push((key(k_b1, i), block_odd));
        }
        for i in 0..e2 {
            items.push((key(k_e2, i), lt.edge));
        }
        for i in 0..g2.v {
            items.push((key(k_v2, i), lt.vertex));
        }
        for i in 0..h2 {
            items.push((key(k_b2, i), block_odd));
        }
        let sign = front * koszul(&items);
        let anchor = g1.hairs[h];
        for w in 0..g2.v {
            let mut edges = g1.edges.clone();
            edges.push((anchor, v1 + w));
            edges.extend(g2.edges.iter().map(|&(a, b)| (a + v1, b + v1)));
            let mut hairs: Vec<usize> = g1.hairs.iter().enumerate().filter(|&(i, _)| i != h).map(|(_, &a)| a).collect();
            hairs.extend(g2.hairs.iter().map(|&a| a + v1));
            acc.push((HairyGraph::new(v1 + g2.v, edges, hairs), sign));
        }
    }
    acc
}

/// `[Γ1, Γ2] = Γ1∘Γ2 − (−1)^{|Γ1||Γ2|} Γ2∘Γ1`.
pub fn bracket(g1: &HairyGraph, g2: &HairyGraph, m: i32, n: i32) -> FormalSum {
    let parity = Parity::of(m, n);
    let mut acc = graft(g1, g2, m, n);
    let s = if (degree(g1, m, n) * degree(g2, m, n)).rem_euclid(2) == 1 { 1 } else { -1 };
    for (g, c) in graft(g2, g1, m, n) {
        add_reduced(&mut acc, &g, s * c, parity);
    }
    acc
}

/// Bracket of a formal sum with a single generator on the left.
pub fn bracket_sum(x: &HairyGraph, ys: &FormalSum, m: i32, n: i32) -> FormalSum {
    let parity = Parity::of(m, n);
    let mut acc = FormalSum::new();
    for (y, c) in ys {
        for (g, k) in bracket(x, y, m, n) {
            add_reduced(&mut acc, &g, c * k, parity);
        }
    }
    acc
}

/// A degree-homogeneous map between two assembled hairy complexes, by source degree.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub degree: i32,
    pub blocks: BTreeMap<i32, SparseMatrix>,
}

impl GradedMap {
    pub fn block(&self, source: &HairyComplex, target: &HairyComplex, d: i32) -> SparseMatrix {
        self.blocks.get(&d).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(target.complex.dim(d + self.degree), source.complex.dim(d))
        })
    }

    /// `d_T ∘ X = (−1)^{|X|} X ∘ d_S` in every degree.
    pub fn is_chain_map(&self, source: &HairyComplex, target: &HairyComplex) -> bool {
        let sign = if self.degree.rem_euclid(2) == 0 { q(1) } else { q(-1) };
        source.complex.grade_keys().into_iter().all(|d| {
            let lhs = target.complex.block(d + self.degree).mul(&self.block(source, target, d));
            let rhs = self.block(source, target, d + 1).mul(&source.complex.block(d)).scale(&sign);
            lhs == rhs
        })
    }
}

/// Matrix of `[X, −]` from `source` to `target`.
pub fn bracket_map(x: &HairyGraph, source: &HairyComplex, target: &HairyComplex) -> Result<GradedMap> {
    let (m, n) = (source.m, source.n);
    if (target.m, target.n) != (m, n) {
        return Err(Error::Usage("bracket between complexes of different (m, n)".into()));
    }
    let dx = degree(x, m, n);
    let mut blocks = BTreeMap::new();
    for (&d, gs) in &source.graphs {
        let targets = target.graphs.get(&(d + dx));
        let index: HashMap<&HairyGraph, usize> =
            targets.map(|t| t.iter().enumerate().map(|(i, g)| (g, i)).collect()).unwrap_or_default();
        let mut trip = Vec::new();
        for (col, g) in gs.iter().enumerate() {
            for (img, c) in bracket(x, g, m, n) {
                let row = *index.get(&img).ok_or_else(|| {
                    Error::Integrity(format!("bracket produced {img}, missing from the target complex"))
                })?;
                trip.push((row, col, q(c)));
            }
        }
        let rows = targets.map_or(0, |t| t.len());
        blocks.insert(d, SparseMatrix::from_triplets(rows, gs.len(), trip));
    }
    Ok(GradedMap { degree: dx, blocks })
}

fn check_pair(source: &HairyComplex, target: &HairyComplex, dh: usize) -> Result<()> {
    if target.r != source.r || target.h != source.h + dh {
        return Err(Error::Usage(format!(
            "target complex must be (r={}, h={}), got (r={}, h={})",
            source.r,
            source.h + dh,
            target.r,
            target.h
        )));
    }
    Ok(())
}

/// `[L, −]: HGC^{r,h} → HGC^{r,h+1}`.
pub fn bracket_l(source: &HairyComplex, target: &HairyComplex) -> Result<GradedMap> {
    check_pair(source, target, 1)?;
    bracket_map(&HairyGraph::line(), source, target)
}

/// `[T, −]: HGC^{r,h} → HGC^{r,h+2}`; odd codimension only.
pub fn bracket_t(source: &HairyComplex, target: &HairyComplex) -> Result<GradedMap> {
    check_pair(source, target, 2)?;
    if source.parity().even_codim() {
        return Err(Error::Usage("[T, −] is used in odd codimension".into()));
    }
    bracket_map(&HairyGraph::tripod(), source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{assemble, differential};

    const PARITIES: [(i32, i32); 4] = [(2, 2), (3, 3), (1, 2), (2, 3)];

    fn star(k: usize) -> HairyGraph {
        HairyGraph::new(1, vec![], vec![0; k])
    }

    #[test]
    fn line_on_tripod_is_twice_the_four_star_before_reduction() {
        for (m, n) in PARITIES {
            let terms = graft_labeled(&HairyGraph::line(), &HairyGraph::tripod(), m, n);
            assert_eq!(terms.len(), 1);
            let (g, c) = &terms[0];
            assert_eq!(*g, star(4));
            let even = Parity::of(m, n).even_codim();
            assert_eq!(c.abs(), if even { 2 } else { 0 });
            assert!(graft_labeled(&HairyGraph::tripod(), &HairyGraph::line(), m, n).is_empty());
            // the four-star is odd in even codimension, so the reduced bracket vanishes
            assert!(bracket(&HairyGraph::line(), &HairyGraph::tripod(), m, n).is_empty());
        }
    }

    #[test]
    fn bracket_is_graded_antisymmetric() {
        for (m, n) in PARITIES {
            let gs = [HairyGraph::tripod(), HairyGraph::hedgehog(1), HairyGraph::hedgehog(2), HairyGraph::hedgehog(3)];
            for a in &gs {
                for b in &gs {
                    let ab = bracket(a, b, m, n);
                    let ba = bracket(b, a, m, n);
                    let s = if (degree(a, m, n) * degree(b, m, n)).rem_euclid(2) == 1 { 1 } else { -1 };
                    let flipped: FormalSum = ba.into_iter().map(|(g, c)| (g, s * c)).collect();
                    assert_eq!(ab, flipped, "({m},{n}) [{a}, {b}]");
                }
            }
        }
    }

    fn d_sum(x: &FormalSum, parity: Parity) -> FormalSum {
        let mut acc = FormalSum::new();
        for (g, c) in x {
            for (t, k) in differential(g, parity) {
                add_reduced(&mut acc, &t, c * k, parity);
            }
        }
        acc
    }

    #[test]
    fn differential_is_a_derivation_of_the_bracket() {
        for (m, n) in PARITIES {
            let parity = Parity::of(m, n);
            let mut gens = Vec::new();
            for (r, h) in [(0, 3), (1, 1), (1, 2), (1, 3), (2, 1)] {
                for gs in assemble(m, n, r, h).unwrap().graphs.into_values() {
                    gens.extend(gs);
                }
            }
            for x in &gens {
                for y in &gens {
                    let xy = bracket(x, y, m, n);
                    let lhs = d_sum(&xy, parity);
                    let mut rhs = FormalSum::new();
                    for (dx, c) in differential(x, parity) {
                        for (g, k) in bracket(&dx, y, m, n) {
                            add_reduced(&mut rhs, &g, c * k, parity);
                        }
                    }
                    let sx = if degree(x, m, n).rem_euclid(2) == 0 { 1 } else { -1 };
                    let dy: FormalSum = differential(y, parity);
                    for (g, k) in bracket_sum(x, &dy, m, n) {
                        add_reduced(&mut rhs, &g, sx * k, parity);
                    }
                    assert_eq!(lhs, rhs, "({m},{n}) d[{x}, {y}]");
                }
            }
        }
    }

    #[test]
    fn line_and_tripod_brackets_are_chain_maps() {
        for (m, n) in PARITIES {
            for r in 1..=2 {
                for h in 1..=2 {
                    let c = assemble(m, n, r, h).unwrap();
                    let c1 = assemble(m, n, r, h + 1).unwrap();
                    assert!(bracket_l(&c, &c1).unwrap().is_chain_map(&c, &c1));
                    if !Parity::of(m, n).even_codim() {
                        let c2 = assemble(m, n, r, h + 2).unwrap();
                        assert!(bracket_t(&c, &c2).unwrap().is_chain_map(&c, &c2));
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_targets_are_rejected() {
        let c = assemble(2, 2, 1, 1).unwrap();
        assert!(matches!(bracket_l(&c, &c), Err(Error::Usage(_))));
        let c3 = assemble(2, 2, 1, 3).unwrap();
        assert!(matches!(bracket_t(&c, &c3), Err(Error::Usage(_))));
    }
}
