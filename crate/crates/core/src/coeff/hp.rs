//! The Hochschild–Pirashvili complex of a graph with coefficients in the dual numbers,
//! realized by hair decorations.
//!
//! A basis element is a set of decorated vertices (at most one vertex hair `y` each) and, on
//! every edge, an ordered string of `k_e` edge hairs `ȳ`. As a product it is read as the vertex
//! hairs in vertex order followed by the edge strings in edge order. Edge hairs have parity
//! `d`, vertex hairs parity `d + 1`. The differential turns the last edge hair of a string into
//! a hair at the head of the edge, minus the first one into a hair at the tail.

use super::{contract, koszul_sort_sign, CoreGraph, LocalSystem, QMat};
use crate::error::Result;
use crate::graph::Relabel;
use crate::linalg::{q, QQ};
use std::collections::HashMap;

/// One decoration: decorated vertices (ascending) and edge hair counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub vertices: Vec<usize>,
    pub counts: Vec<usize>,
}

/// `CH^{Γ,h}` for the dual numbers with generator degree `d`.
#[derive(Clone, Copy, Debug)]
pub struct HpComplex {
    pub d: i32,
    pub h: usize,
}

impl HpComplex {
    pub fn new(d: i32, h: usize) -> Self {
        HpComplex { d, h }
    }

    fn edge_odd(&self) -> bool {
        self.d.rem_euclid(2) == 1
    }

    fn vertex_odd(&self) -> bool {
        !self.edge_odd()
    }

    /// Basis ordered by the number of vertex hairs, then lexicographically.
    pub fn basis(&self, g: &CoreGraph) -> Vec<Decoration> {
        let mut out = Vec::new();
        let ne = g.edges.len();
        for j in 0..=self.h.min(g.v) {
            for vertices in subsets(g.v, j) {
                for counts in compositions(self.h - j, ne) {
                    out.push(Decoration {
                        vertices: vertices.clone(),
                        counts,
                    });
                }
            }
        }
        out
    }

    fn index(&self, g: &CoreGraph) -> (Vec<Decoration>, HashMap<Decoration, usize>) {
        let b = self.basis(g);
        let idx = b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        (b, idx)
    }

    /// Sign of turning the edge hair at position `before_bars` among all edge hairs into a
    /// vertex hair at `w`, and moving it into its slot among the vertex hairs.
    fn move_sign(&self, deco: &Decoration, before_bars: usize, w: usize) -> i32 {
        let mut parity = 0usize;
        if self.edge_odd() {
            parity += before_bars;
        }
        if self.vertex_odd() {
            parity += deco.vertices.len();
        }
        // the new vertex hair passes the edge hairs before it and the vertex hairs above w
        if self.vertex_odd() && self.edge_odd() {
            parity += before_bars;
        }
        if self.vertex_odd() {
            parity += deco.vertices.iter().filter(|&&x| x > w).count();
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn flip_sign(&self, k: usize) -> i32 {
        let mut p = k;
        if self.edge_odd() {
            p += k * k.saturating_sub(1) / 2;
        }
        if p % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Ordered ways to write `total` as a sum of `parts` nonnegative integers, lexicographically
/// decreasing in the first part.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl LocalSystem for HpComplex {
    fn name(&self) -> String {
        format!("CH({},{})", self.d, self.h)
    }

    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        Ok(self
            .basis(g)
            .iter()
            .map(|b| self.h as i32 * self.d + b.vertices.len() as i32)
            .collect())
    }

    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        let src = self.basis(g);
        let (tgt, idx) = self.index(target);
        let mut m = QMat::zeros(tgt.len(), src.len(), &QQ);
        for (c, b) in src.iter().enumerate() {
            let mut sign = 1;
            let mut counts = vec![0; b.counts.len()];
            for (i, &k) in b.counts.iter().enumerate() {
                counts[iso.emap[i]] = k;
                if iso.eflip[i] {
                    sign *= self.flip_sign(k);
                }
            }
            let mut factors: Vec<((u8, usize), bool)> = b
                .vertices
                .iter()
                .map(|&x| ((0, iso.vmap[x]), self.vertex_odd()))
                .collect();
            factors.extend(
                b.counts
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| ((1, iso.emap[i]), self.edge_odd() && k % 2 == 1)),
            );
            sign *= koszul_sort_sign(&factors);
            let mut vertices: Vec<usize> = b.vertices.iter().map(|&x| iso.vmap[x]).collect();
            vertices.sort_unstable();
            let r = idx[&Decoration { vertices, counts }];
            m.set(r, c, q(sign as i64));
        }
        Ok(m)
    }

    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let ct = contract(g, e)?;
        let (a, b) = g.edges[e];
        let src = self.basis(g);
        let (tgt, idx) = self.index(&ct.graph);
        let mut m = QMat::zeros(tgt.len(), src.len(), &QQ);
        for (c, dec) in src.iter().enumerate() {
            if dec.counts[e] > 0 || (dec.vertices.contains(&a) && dec.vertices.contains(&b)) {
                continue;
            }
            let factors: Vec<(usize, bool)> = dec
                .vertices
                .iter()
                .map(|&x| (ct.vmap[x], self.vertex_odd()))
                .collect();
            let sign = koszul_sort_sign(&factors);
            let mut vertices: Vec<usize> = factors.iter().map(|f| f.0).collect();
            vertices.sort_unstable();
            let counts: Vec<usize> = dec
                .counts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != e)
                .map(|(_, &k)| k)
                .collect();
            let r = idx[&Decoration { vertices, counts }];
            m.set(r, c, q(sign as i64));
        }
        Ok(m)
    }

    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let (basis, idx) = self.index(g);
        let n = basis.len();
        let mut m = QMat::zeros(n, n, &QQ);
        for (c, dec) in basis.iter().enumerate() {
            let mut before = 0usize;
            for (i, &(a, b)) in g.edges.iter().enumerate() {
                let k = dec.counts[i];
                if k == 0 {
                    continue;
                }
                // last hair to the head (+), first hair to the tail (−)
                for (w, pos, coeff) in [(b, before + k - 1, 1i64), (a, before, -1i64)] {
                    if dec.vertices.contains(&w) {
                        continue;
                    }
                    let sign = self.move_sign(dec, pos, w) as i64 * coeff;
                    let mut vertices = dec.vertices.clone();
                    vertices.push(w);
                    vertices.sort_unstable();
                    let mut counts = dec.counts.clone();
                    counts[i] -= 1;
                    let r = idx[&Decoration { vertices, counts }];
                    let v = m.get(r, c) + q(sign);
                    m.set(r, c, v);
                }
                before += k;
            }
        }
        Ok(m)
    }

    fn is_dg(&self) -> bool {
        true
    }
}
