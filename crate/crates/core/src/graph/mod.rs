//! Hairy graphs: validation, degrees, serialization, canonical forms and enumeration.

pub mod canon;
pub mod enumerate;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use canon::{canonical_form, canonicalize, CanonicalForm, CanonicalHairyGraph, Relabel, SignedGenerator};
pub use enumerate::{enumerate, enumerate_all, GraphClass};

/// Parities of the hair degree `m` and the vertex degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parity {
    pub m_odd: bool,
    pub n_odd: bool,
}

impl Parity {
    pub fn of(m: i32, n: i32) -> Self {
        Parity {
            m_odd: m.rem_euclid(2) == 1,
            n_odd: n.rem_euclid(2) == 1,
        }
    }

    /// Internal edges carry degree 1−n.
    pub fn edges_odd(self) -> bool {
        !self.n_odd
    }

    /// Internal vertices carry degree n.
    pub fn vertices_odd(self) -> bool {
        self.n_odd
    }

    /// Reversing an edge multiplies by (−1)^n.
    pub fn flips_negative(self) -> bool {
        self.n_odd
    }

    /// A hair is an external vertex (degree m) together with its edge (degree 1−n).
    pub fn hairs_odd(self) -> bool {
        self.m_odd == self.n_odd
    }

    /// n − m even.
    pub fn even_codim(self) -> bool {
        self.m_odd == self.n_odd
    }
}

/// A hairy graph with labeled internal vertices, directed internal edges and an ordered list
/// of hairs, each hair recorded by the internal vertex it is attached to.
///
/// The line graph (two hairs joined by an edge) has no internal vertex and is encoded as
/// `v = 0` with empty edge and hair lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HairyGraph {
    pub v: usize,
    pub edges: Vec<(usize, usize)>,
    pub hairs: Vec<usize>,
}

impl HairyGraph {
    pub fn new(v: usize, edges: Vec<(usize, usize)>, hairs: Vec<usize>) -> Self {
        HairyGraph { v, edges, hairs }
    }

    /// The line graph L.
    pub fn line() -> Self {
        HairyGraph {
            v: 0,
            edges: Vec::new(),
            hairs: Vec::new(),
        }
    }

    /// The tripod: one vertex with three hairs.
    pub fn tripod() -> Self {
        HairyGraph::new(1, vec![], vec![0, 0, 0])
    }

    /// The k-cycle with one hair on each vertex.
    pub fn hedgehog(k: usize) -> Self {
        assert!(k >= 1);
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        HairyGraph::new(k, edges, (0..k).collect())
    }

    pub fn is_line(&self) -> bool {
        self.v == 0
    }

    pub fn hair_count(&self) -> usize {
        if self.is_line() {
            2
        } else {
            self.hairs.len()
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_order(&self) -> usize {
        if self.is_line() {
            0
        } else {
            self.edges.len() + 1 - self.v
        }
    }

    /// Valence of every internal vertex: edge incidences (loops twice) plus hairs.
    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.v];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        for &a in &self.hairs {
            val[a] += 1;
        }
        val
    }

    pub fn hairs_at(&self) -> Vec<usize> {
        let mut c = vec![0; self.v];
        for &a in &self.hairs {
            c[a] += 1;
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        if self.v == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..self.v).all(|x| find(&mut parent, x) == root)
    }

    /// Structural validity; `min_hairs` is 1 for hairy graph generators and 0 for core graphs.
    pub fn validate(&self, min_hairs: usize) -> Result<()> {
        if self.is_line() {
            return Ok(());
        }
        for &(a, b) in &self.edges {
            if a >= self.v || b >= self.v {
                return Err(Error::Structural(format!("edge {a}-{b} refers to a missing vertex")));
            }
        }
        if let Some(&a) = self.hairs.iter().find(|&&a| a >= self.v) {
            return Err(Error::Structural(format!("hair at missing vertex {a}")));
        }
        if self.hairs.len() < min_hairs {
            return Err(Error::Structural("a hairy graph needs at least one hair".into()));
        }
        if let Some((i, val)) = self.valences().into_iter().enumerate().find(|(_, d)| *d < 3) {
            return Err(Error::Structural(format!("vertex {i} has valence {val} < 3")));
        }
        if !self.is_connected() {
            return Err(Error::Structural("graph is disconnected".into()));
        }
        Ok(())
    }
}

/// Cohomological degree `m·h + n·v + (1−n)·#edges − m`, where every hair contributes an
/// external vertex and an edge.
pub fn degree(g: &HairyGraph, m: i32, n: i32) -> i32 {
    if g.is_line() {
        return 2 * m + (1 - n) - m;
    }
    let h = g.hairs.len() as i32;
    let v = g.v as i32;
    let e = g.edges.len() as i32 + h;
    m * h + n * v + (1 - n) * e - m
}

/// Degree of a generator with `v` internal vertices in the (r, h) piece.
pub fn degree_of(m: i32, n: i32, r: usize, h: usize, v: usize) -> i32 {
    m * (h as i32 - 1) + v as i32 + (1 - n) * (r as i32 - 1 + h as i32)
}

/// Inverse of [`degree_of`]: the vertex count sitting in a given degree, if any.
pub fn vertices_in_degree(m: i32, n: i32, r: usize, h: usize, d: i32) -> Option<usize> {
    let v = d - m * (h as i32 - 1) - (1 - n) * (r as i32 - 1 + h as i32);
    (v >= 0).then_some(v as usize)
}

/// Upper bound on internal vertices for the (r, h) piece from the trivalence handshake.
pub fn max_vertices(r: usize, h: usize) -> usize {
    (2 * r + h).saturating_sub(2)
}

impl fmt::Display for HairyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let h: Vec<String> = self.hairs.iter().map(|a| a.to_string()).collect();
        write!(f, "v={};e={};h={}", self.v, e.join(","), h.join(","))
    }
}

impl std::str::FromStr for HairyGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 3 {
            return Err(bad(0, "expected three fields v=..;e=..;h=.."));
        }
        let field = |i: usize, key: &str| -> Result<&str> {
            parts[i]
                .strip_prefix(key)
                .ok_or_else(|| bad(0, &format!("missing '{key}'")))
        };
        let v: usize = field(0, "v=")?.parse().map_err(|_| bad(2, "bad vertex count"))?;
        let mut edges = Vec::new();
        for tok in field(1, "e=")?.split(',').filter(|t| !t.is_empty()) {
            let (a, b) = tok.split_once('-').ok_or_else(|| bad(0, "edge without '-'"))?;
            let a = a.parse().map_err(|_| bad(0, "bad edge endpoint"))?;
            let b = b.parse().map_err(|_| bad(0, "bad edge endpoint"))?;
            edges.push((a, b));
        }
        let mut hairs = Vec::new();
        for tok in field(2, "h=")?.split(',').filter(|t| !t.is_empty()) {
            hairs.push(tok.parse().map_err(|_| bad(0, "bad hair anchor"))?);
        }
        Ok(HairyGraph { v, edges, hairs })
    }
}
