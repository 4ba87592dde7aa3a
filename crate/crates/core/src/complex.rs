//! Graded complexes and the hairy graph complex with the vertex splitting differential.

use crate::error::{Error, Result};
use crate::graph::canon::canonical_form;
use crate::graph::enumerate::vertex_splits;
use crate::graph::{degree_of, enumerate, HairyGraph, Parity};
use crate::linalg::{q, SparseMatrix};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

/// Per-degree ordered bases and differential blocks `basis(d) → basis(d+1)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedComplex {
    pub basis: BTreeMap<i32, Vec<String>>,
    /// Block at `d` has shape `dim(d+1) × dim(d)`; missing blocks are zero.
    pub blocks: BTreeMap<i32, SparseMatrix>,
}

impl GradedComplex {
    pub fn grade_keys(&self) -> Vec<i32> {
        self.basis.keys().copied().collect()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.basis.get(&d).map_or(0, |b| b.len())
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.basis.iter().map(|(d, b)| (*d, b.len())).filter(|(_, n)| *n > 0).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(|b| b.len()).sum()
    }

    /// The differential out of degree `d`, zero-filled if absent.
    pub fn block(&self, d: i32) -> SparseMatrix {
        self.blocks
            .get(&d)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.dim(d + 1), self.dim(d)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|(d, b)| if d.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// Every composite of consecutive blocks vanishes exactly.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&d, m) in &self.blocks {
            if m.cols != self.dim(d) || m.rows != self.dim(d + 1) {
                return Err(Error::Integrity(format!("block {d} has the wrong shape")));
            }
            if let Some(next) = self.blocks.get(&(d + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(Error::Integrity(format!("d^2 != 0 from degree {d}")));
                }
            }
        }
        Ok(())
    }

    /// Same complex with every degree moved by `delta`.
    pub fn shifted(&self, delta: i32) -> GradedComplex {
        GradedComplex {
            basis: self.basis.iter().map(|(d, b)| (d + delta, b.clone())).collect(),
            blocks: self.blocks.iter().map(|(d, m)| (d + delta, m.clone())).collect(),
        }
    }

    /// JSON dump: bases as strings, blocks as `[row, col, "value"]` triplets.
    pub fn to_json(&self) -> Value {
        let basis: serde_json::Map<String, Value> = self
            .basis
            .iter()
            .map(|(d, b)| (d.to_string(), json!(b)))
            .collect();
        let blocks: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .map(|(d, m)| {
                let trip: Vec<Value> = m
                    .entries()
                    .iter()
                    .map(|(r, c, v)| json!([r, c, v.to_string()]))
                    .collect();
                (d.to_string(), json!({"rows": m.rows, "cols": m.cols, "entries": trip}))
            })
            .collect();
        json!({"basis": basis, "blocks": blocks})
    }
}

/// HGC^{r,h}_{m,n} with its generators kept as graphs.
#[derive(Clone, Debug)]
pub struct HairyComplex {
    pub m: i32,
    pub n: i32,
    pub r: usize,
    pub h: usize,
    pub graphs: BTreeMap<i32, Vec<HairyGraph>>,
    pub complex: GradedComplex,
}

impl HairyComplex {
    pub fn parity(&self) -> Parity {
        Parity::of(self.m, self.n)
    }

    pub fn index(&self, d: i32) -> HashMap<HairyGraph, usize> {
        self.graphs
            .get(&d)
            .map(|gs| gs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect())
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.complex.to_json();
        v["m"] = json!(self.m);
        v["n"] = json!(self.n);
        v["r"] = json!(self.r);
        v["h"] = json!(self.h);
        v
    }
}

/// Sign of placing the new vertex and the new edge in front of the orientation of a graph
/// with `v` vertices and `e` internal edges, relative to the reference order.
fn split_sign(parity: Parity, v: usize, e: usize) -> i64 {
    let k = if parity.n_odd { v } else { e };
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Canonical class and sign of a labeled graph, or `None` if the class vanishes.
pub fn reduce(g: &HairyGraph, parity: Parity) -> Option<(HairyGraph, i64)> {
    let cf = canonical_form(g);
    if cf.is_odd(parity) {
        return None;
    }
    Some((cf.graph, cf.relabel.sign(parity) as i64))
}

/// Sum over splittings of `w` (each unordered splitting once), as canonical classes with
/// integer coefficients; vanishing classes are dropped.
pub fn expand_vertex(g: &HairyGraph, w: usize, parity: Parity) -> BTreeMap<HairyGraph, i64> {
    let mut acc: BTreeMap<HairyGraph, i64> = BTreeMap::new();
    let global = split_sign(parity, g.v, g.edges.len());
    for s in vertex_splits(g, w) {
        if let Some((c, sign)) = reduce(&s.graph, parity) {
            *acc.entry(c).or_insert(0) += global * sign * s.multiplicity as i64;
        }
    }
    // each unordered splitting appeared once per ordering, with the same oriented graph
    acc.into_iter()
        .filter_map(|(c, x)| {
            debug_assert!(x % 2 == 0);
            (x != 0).then_some((c, x / 2))
        })
        .collect()
}

/// The differential of one generator.
pub fn differential(g: &HairyGraph, parity: Parity) -> BTreeMap<HairyGraph, i64> {
    let mut acc: BTreeMap<HairyGraph, i64> = BTreeMap::new();
    for w in 0..g.v {
        for (c, x) in expand_vertex(g, w, parity) {
            *acc.entry(c).or_insert(0) += x;
        }
    }
    acc.retain(|_, x| *x != 0);
    acc
}

/// Matrix of a linear map given column by column as sums of target graphs.
pub fn matrix_from_columns(
    columns: &[BTreeMap<HairyGraph, i64>],
    target: &HashMap<HairyGraph, usize>,
    rows: usize,
) -> Result<SparseMatrix> {
    let mut trip = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        for (g, x) in col {
            let r = *target
                .get(g)
                .ok_or_else(|| Error::Integrity(format!("image {g} is not a basis element")))?;
            trip.push((r, c, q(*x)));
        }
    }
    Ok(SparseMatrix::from_triplets(rows, columns.len(), trip))
}

/// Assembles HGC^{r,h}_{m,n}.
pub fn assemble(m: i32, n: i32, r: usize, h: usize) -> Result<HairyComplex> {
    if h == 0 {
        return Err(Error::Usage("hairy complexes need at least one hair".into()));
    }
    let parity = Parity::of(m, n);
    let levels = crate::graph::enumerate_all(r, h);
    let mut graphs: BTreeMap<i32, Vec<HairyGraph>> = BTreeMap::new();
    for v in 0..levels.len() {
        let gens: Vec<HairyGraph> = enumerate(r, h, v, parity).into_iter().map(|c| c.graph).collect();
        if !gens.is_empty() {
            graphs.insert(degree_of(m, n, r, h, v), gens);
        }
    }
    let mut complex = GradedComplex {
        basis: graphs
            .iter()
            .map(|(d, gs)| (*d, gs.iter().map(|g| g.to_string()).collect()))
            .collect(),
        blocks: BTreeMap::new(),
    };
    for (&d, gs) in &graphs {
        let Some(targets) = graphs.get(&(d + 1)) else { continue };
        let index: HashMap<HairyGraph, usize> =
            targets.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let cols: Vec<BTreeMap<HairyGraph, i64>> = gs.par_iter().map(|g| differential(g, parity)).collect();
        complex.blocks.insert(d, matrix_from_columns(&cols, &index, targets.len())?);
    }
    if cfg!(debug_assertions) {
        complex.check_d_squared()?;
    }
    Ok(HairyComplex {
        m,
        n,
        r,
        h,
        graphs,
        complex,
    })
}
