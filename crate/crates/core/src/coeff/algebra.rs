//! Graded symmetric powers, tensor products and degree shifts of coefficient systems.

use super::{CoreGraph, LocalSystem, QMat, System};
use crate::error::Result;
use crate::graph::Relabel;
use crate::linalg::{q, Q, QQ};
use num::Zero;
use std::collections::{BTreeMap, HashMap};

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

/// Monomial basis of the graded symmetric power `S^k V` for basis degrees `deg`:
/// nondecreasing index sequences in which odd indices do not repeat.
pub fn sym_basis(deg: &[i32], k: usize) -> Vec<Vec<usize>> {
    fn rec(deg: &[i32], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..deg.len() {
            if odd(deg[i]) && cur.last() == Some(&i) {
                continue;
            }
            cur.push(i);
            rec(deg, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(deg, k, 0, &mut Vec::new(), &mut out);
    out
}

type Poly = BTreeMap<Vec<usize>, Q>;

/// `mon · x_j` normalized, with its Koszul sign; `None` when it vanishes.
fn times_var(mon: &[usize], j: usize, deg: &[i32]) -> Option<(Vec<usize>, i32)> {
    if odd(deg[j]) && mon.contains(&j) {
        return None;
    }
    let pos = mon.partition_point(|&i| i <= j);
    let passed: i32 = mon[pos..].iter().map(|&i| deg[i]).sum();
    let sign = if odd(deg[j]) && odd(passed) { -1 } else { 1 };
    let mut out = mon.to_vec();
    out.insert(pos, j);
    Some((out, sign))
}

/// `p · (Σ_j v_j x_j)` for a vector `v` in the target space with degrees `deg`.
fn times_vector(p: &Poly, v: &[Q], deg: &[i32]) -> Poly {
    let mut out = Poly::new();
    for (mon, c) in p {
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some((m2, s)) = times_var(mon, j, deg) {
                let e = out.entry(m2).or_insert_with(Q::zero);
                *e += c * x * q(s as i64);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_to_column(p: &Poly, index: &HashMap<Vec<usize>, usize>, rows: usize) -> Vec<Q> {
    let mut col = vec![Q::zero(); rows];
    for (mon, c) in p {
        col[index[mon]] = c.clone();
    }
    col
}

/// Matrix of `S^k(a)` for an even degree-preserving map `a: V → W`.
pub fn sym_map(a: &QMat, src_deg: &[i32], tgt_deg: &[i32], k: usize) -> QMat {
    let src = sym_basis(src_deg, k);
    let tgt = sym_basis(tgt_deg, k);
    let index: HashMap<Vec<usize>, usize> = tgt.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let cols_a = a.columns();
    let cols: Vec<Vec<Q>> = src
        .iter()
        .map(|mon| {
            let mut p = Poly::from([(Vec::new(), q(1))]);
            for &i in mon {
                p = times_vector(&p, &cols_a[i], tgt_deg);
            }
            poly_to_column(&p, &index, tgt.len())
        })
        .collect();
    QMat::from_columns(tgt.len(), &cols, &QQ)
}

/// Matrix of the derivation extending an odd map `d` of degree +1 to `S^k V`.
pub fn sym_derivation(d: &QMat, deg: &[i32], k: usize) -> QMat {
    let basis = sym_basis(deg, k);
    let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let cols_d = d.columns();
    let unit = |i: usize| {
        let mut v = vec![Q::zero(); deg.len()];
        v[i] = q(1);
        v
    };
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|mon| {
            let mut total = Poly::new();
            for t in 0..mon.len() {
                let before: i32 = mon[..t].iter().map(|&i| deg[i]).sum();
                let mut p = Poly::from([(Vec::new(), q(if odd(before) { -1 } else { 1 }))]);
                for &i in &mon[..t] {
                    p = times_vector(&p, &unit(i), deg);
                }
                p = times_vector(&p, &cols_d[mon[t]], deg);
                for &i in &mon[t + 1..] {
                    p = times_vector(&p, &unit(i), deg);
                }
                for (m, c) in p {
                    *total.entry(m).or_insert_with(Q::zero) += c;
                }
            }
            total.retain(|_, c| !c.is_zero());
            poly_to_column(&total, &index, basis.len())
        })
        .collect();
    QMat::from_columns(basis.len(), &cols, &QQ)
}

/// Graded symmetric power `S^k F`.
#[derive(Clone, Debug)]
pub struct SymPower {
    pub inner: System,
    pub k: usize,
}

impl SymPower {
    pub fn new(inner: System, k: usize) -> Self {
        SymPower { inner, k }
    }
}

impl LocalSystem for SymPower {
    fn name(&self) -> String {
        format!("Sym{}({})", self.k, self.inner.name())
    }

    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        let deg = self.inner.degrees(g)?;
        Ok(sym_basis(&deg, self.k)
            .iter()
            .map(|m| m.iter().map(|&i| deg[i]).sum())
            .collect())
    }

    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        let a = self.inner.on_iso(g, iso, target)?;
        Ok(sym_map(&a, &self.inner.degrees(g)?, &self.inner.degrees(target)?, self.k))
    }

    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        let a = self.inner.on_contract(g, e)?;
        let c = super::contract(g, e)?;
        Ok(sym_map(&a, &self.inner.degrees(g)?, &self.inner.degrees(&c.graph)?, self.k))
    }

    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let deg = self.inner.degrees(g)?;
        if !self.inner.is_dg() {
            let n = sym_basis(&deg, self.k).len();
            return Ok(QMat::zeros(n, n, &QQ));
        }
        Ok(sym_derivation(&self.inner.differential(g)?, &deg, self.k))
    }

    fn is_dg(&self) -> bool {
        self.inner.is_dg()
    }
}

/// Tensor product `F ⊗ G`, basis pairs in lexicographic order.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub left: System,
    pub right: System,
}

impl Tensor {
    pub fn new(left: System, right: System) -> Self {
        Tensor { left, right }
    }
}

impl LocalSystem for Tensor {
    fn name(&self) -> String {
        format!("{}*{}", self.left.name(), self.right.name())
    }

    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        let a = self.left.degrees(g)?;
        let b = self.right.degrees(g)?;
        Ok(a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect())
    }

    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        Ok(self
            .left
            .on_iso(g, iso, target)?
            .kron(&self.right.on_iso(g, iso, target)?, &QQ))
    }

    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        Ok(self.left.on_contract(g, e)?.kron(&self.right.on_contract(g, e)?, &QQ))
    }

    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        let da = self.left.differential(g)?;
        let db = self.right.differential(g)?;
        let deg_a = self.left.degrees(g)?;
        let (na, nb) = (da.rows, db.rows);
        let mut m = QMat::zeros(na * nb, na * nb, &QQ);
        for i in 0..na {
            for j in 0..nb {
                let col = i * nb + j;
                for i2 in 0..na {
                    let x = da.get(i2, i);
                    if !x.is_zero() {
                        let r = i2 * nb + j;
                        let v = m.get(r, col) + x;
                        m.set(r, col, v);
                    }
                }
                let s = if odd(deg_a[i]) { q(-1) } else { q(1) };
                for j2 in 0..nb {
                    let x = db.get(j2, j);
                    if !x.is_zero() {
                        let r = i * nb + j2;
                        let v = m.get(r, col) + x * &s;
                        m.set(r, col, v);
                    }
                }
            }
        }
        Ok(m)
    }

    fn is_dg(&self) -> bool {
        self.left.is_dg() || self.right.is_dg()
    }
}

/// `F[−s]`: every degree raised by `s`, maps and differential unchanged.
#[derive(Clone, Debug)]
pub struct Shift {
    pub inner: System,
    pub by: i32,
}

impl Shift {
    pub fn new(inner: System, by: i32) -> Self {
        Shift { inner, by }
    }
}

impl LocalSystem for Shift {
    fn name(&self) -> String {
        format!("{}<{:+}>", self.inner.name(), self.by)
    }
    fn degrees(&self, g: &CoreGraph) -> Result<Vec<i32>> {
        Ok(self.inner.degrees(g)?.into_iter().map(|d| d + self.by).collect())
    }
    fn on_iso(&self, g: &CoreGraph, iso: &Relabel, target: &CoreGraph) -> Result<QMat> {
        self.inner.on_iso(g, iso, target)
    }
    fn on_contract(&self, g: &CoreGraph, e: usize) -> Result<QMat> {
        self.inner.on_contract(g, e)
    }
    fn differential(&self, g: &CoreGraph) -> Result<QMat> {
        self.inner.differential(g)
    }
    fn is_dg(&self) -> bool {
        self.inner.is_dg()
    }
}
