//! The defect filtration `F_i = { x : x and dx are combinations of graphs of defect ≥ i }` and
//! the first page of its spectral sequence.

use super::bracket::GradedMap;
use super::defect::defect;
use crate::complex::HairyComplex;
use crate::error::{Error, Result};
use crate::linalg::{preimage, span_dim, Field, Mat, RankEngine, QQ};
use serde::Serialize;
use std::collections::BTreeMap;

type Subspace<E> = Vec<Vec<E>>;

/// Dimensions of the graded pieces and of `E_1`, with the ranks of `d_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPage {
    pub m: i32,
    pub n: i32,
    pub r: usize,
    pub h: usize,
    /// Largest filtration index with a nonzero piece.
    pub top: usize,
    /// `dim (F_i/F_{i+1})^k`.
    pub quotient_dims: BTreeMap<usize, BTreeMap<i32, usize>>,
    /// `dim H^k(F_i/F_{i+1})`, zeros omitted.
    pub e1: BTreeMap<usize, BTreeMap<i32, usize>>,
    /// Rank of `d_1: E_1^{i,k} → E_1^{i+1,k+1}`, zeros omitted.
    pub d1_ranks: BTreeMap<usize, BTreeMap<i32, usize>>,
    /// Whether the span of generators of defect ≥ i is closed under `d` for every i.
    pub defect_monotone: bool,
}

impl SpectralPage {
    /// Columns `i` with nonzero `E_1^{i,*}`.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        self.e1.iter().filter(|(_, v)| !v.is_empty()).map(|(i, _)| *i).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.e1
            .values()
            .flat_map(|col| col.iter().map(|(k, d)| if k.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }))
            .sum()
    }

    pub fn column(&self, i: usize) -> BTreeMap<i32, usize> {
        self.e1.get(&i).cloned().unwrap_or_default()
    }
}

/// The filtration in one field: `F_i^k` as bases in generator coordinates.
pub struct Filtration<F: Field> {
    pub field: F,
    pub top: usize,
    /// Differential blocks `k → k+1` as dense matrices.
    pub d: BTreeMap<i32, Mat<F::E>>,
    pub dims: BTreeMap<i32, usize>,
    /// `pieces[i][k]` is a basis of `F_i^k`, for `i = 0..=top+1`.
    pub pieces: Vec<BTreeMap<i32, Subspace<F::E>>>,
    pub defect_monotone: bool,
}

fn unit<E: Clone>(n: usize, i: usize, zero: &E, one: &E) -> Vec<E> {
    let mut v = vec![zero.clone(); n];
    v[i] = one.clone();
    v
}

impl<F: Field + Clone> Filtration<F> {
    pub fn new(c: &HairyComplex, field: F) -> Result<Self> {
        let mut d = BTreeMap::new();
        for k in c.complex.grade_keys() {
            let m = c
                .complex
                .block(k)
                .to_dense(&field)
                .ok_or_else(|| Error::Integrity("differential not representable modulo the prime".into()))?;
            d.insert(k, m);
        }
        let defects: BTreeMap<i32, Vec<usize>> =
            c.graphs.iter().map(|(k, gs)| (*k, gs.iter().map(defect).collect())).collect();
        let top = defects.values().flatten().copied().max().unwrap_or(0);
        let dims: BTreeMap<i32, usize> = c.graphs.iter().map(|(k, gs)| (*k, gs.len())).collect();
        let (zero, one) = (field.zero(), field.one());
        let mut pieces = Vec::new();
        let mut monotone = true;
        for i in 0..=top + 1 {
            let mut level = BTreeMap::new();
            for (&k, defs) in &defects {
                let n = defs.len();
                let cols: Vec<usize> = (0..n).filter(|&j| defs[j] >= i).collect();
                let low_rows: Vec<usize> = defects
                    .get(&(k + 1))
                    .map(|t| (0..t.len()).filter(|&j| t[j] < i).collect())
                    .unwrap_or_default();
                let basis: Subspace<F::E> = if low_rows.is_empty() || cols.is_empty() {
                    cols.iter().map(|&j| unit(n, j, &zero, &one)).collect()
                } else {
                    let dk = &d[&k];
                    let sub = Mat::from_fn(low_rows.len(), cols.len(), &field, |r, s| dk.get(low_rows[r], cols[s]).clone());
                    let ker = sub.kernel(&field);
                    if ker.len() < cols.len() {
                        monotone = false;
                    }
                    ker.into_iter()
                        .map(|x| {
                            let mut v = vec![zero.clone(); n];
                            for (s, &j) in cols.iter().enumerate() {
                                v[j] = x[s].clone();
                            }
                            v
                        })
                        .collect()
                };
                level.insert(k, basis);
            }
            pieces.push(level);
        }
        Ok(Filtration {
            field,
            top,
            d,
            dims,
            pieces,
            defect_monotone: monotone,
        })
    }

    pub fn piece(&self, i: usize, k: i32) -> Subspace<F::E> {
        self.pieces
            .get(i)
            .and_then(|l| l.get(&k))
            .cloned()
            .unwrap_or_default()
    }

    fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    fn apply_d(&self, k: i32, vs: &[Vec<F::E>]) -> Subspace<F::E> {
        match self.d.get(&k) {
            Some(m) if m.rows > 0 => vs.iter().map(|v| m.apply(v, &self.field)).collect(),
            _ => Vec::new(),
        }
    }

    fn span(&self, k: i32, parts: &[&[Vec<F::E>]]) -> usize {
        let all: Vec<Vec<F::E>> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        span_dim(self.dim(k), &all, &self.field)
    }

    /// `{ x ∈ F_i^k : dx ∈ F_{i+1}^{k+1} }`.
    pub fn relative_cycles(&self, i: usize, k: i32) -> Subspace<F::E> {
        let fi = self.piece(i, k);
        if fi.is_empty() {
            return fi;
        }
        let Some(dk) = self.d.get(&k).filter(|m| m.rows > 0) else { return fi };
        let img = Mat::from_columns(dk.rows, &fi.iter().map(|v| dk.apply(v, &self.field)).collect::<Vec<_>>(), &self.field);
        let coeffs = preimage(&img, &self.piece(i + 1, k + 1), &self.field);
        coeffs
            .iter()
            .map(|c| {
                let mut v = vec![self.field.zero(); self.dim(k)];
                for (a, b) in c.iter().zip(&fi) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = self.field.add(x, &self.field.mul(a, y));
                    }
                }
                v
            })
            .collect()
    }

    /// `d(F_i^{k−1}) + F_{i+1}^k`.
    pub fn relative_boundaries(&self, i: usize, k: i32) -> Subspace<F::E> {
        let mut b = self.apply_d(k - 1, &self.piece(i, k - 1));
        b.extend(self.piece(i + 1, k));
        b
    }

    /// `dim H^k(F_i/F_{i+1})`.
    pub fn e1_dim(&self, i: usize, k: i32) -> usize {
        let z = self.relative_cycles(i, k);
        let b = self.relative_boundaries(i, k);
        self.span(k, &[&z, &b]) - self.span(k, &[&b])
    }

    /// Rank of `d_1: E_1^{i,k} → E_1^{i+1,k+1}`.
    pub fn d1_rank(&self, i: usize, k: i32) -> usize {
        let dz = self.apply_d(k, &self.relative_cycles(i, k));
        let b = self.relative_boundaries(i + 1, k + 1);
        self.span(k + 1, &[&dz, &b]) - self.span(k + 1, &[&b])
    }

    fn page(&self, c: &HairyComplex) -> SpectralPage {
        let mut quotient_dims = BTreeMap::new();
        let mut e1 = BTreeMap::new();
        let mut d1_ranks = BTreeMap::new();
        for i in 0..=self.top {
            let mut qd = BTreeMap::new();
            let mut col = BTreeMap::new();
            let mut ranks = BTreeMap::new();
            for &k in self.dims.keys() {
                let dq = self.piece(i, k).len() - self.piece(i + 1, k).len();
                qd.insert(k, dq);
                let h = self.e1_dim(i, k);
                if h > 0 {
                    col.insert(k, h);
                    let r = self.d1_rank(i, k);
                    if r > 0 {
                        ranks.insert(k, r);
                    }
                }
            }
            quotient_dims.insert(i, qd);
            e1.insert(i, col);
            d1_ranks.insert(i, ranks);
        }
        SpectralPage {
            m: c.m,
            n: c.n,
            r: c.r,
            h: c.h,
            top: self.top,
            quotient_dims,
            e1,
            d1_ranks,
            defect_monotone: self.defect_monotone,
        }
    }
}

/// The first page, computed modulo the engine's two primes and exactly if they disagree.
pub fn filtration_pages(c: &HairyComplex, engine: &RankEngine) -> Result<SpectralPage> {
    if engine.exact {
        return Ok(Filtration::new(c, QQ)?.page(c));
    }
    let a = Filtration::new(c, engine.field())?.page(c);
    let b = Filtration::new(c, engine.second_field())?.page(c);
    if a == b {
        Ok(a)
    } else {
        Ok(Filtration::new(c, QQ)?.page(c))
    }
}

/// Checks that `x` maps `F_i(source)` into `F_{i+1}(target)` for every `i`, and returns the ranks
/// of the induced maps `E_1^{i,k}(source) → E_1^{i+1,k+|x|}(target)`.
pub fn shift_on_e1<F: Field + Clone>(
    x: &GradedMap,
    source: &HairyComplex,
    target: &HairyComplex,
    fs: &Filtration<F>,
    ft: &Filtration<F>,
) -> Result<(bool, BTreeMap<usize, BTreeMap<i32, usize>>)> {
    let f = &fs.field;
    let mut raises = true;
    let mut ranks = BTreeMap::new();
    for i in 0..=fs.top {
        let mut col = BTreeMap::new();
        for &k in fs.dims.keys() {
            let kt = k + x.degree;
            let block = x
                .block(source, target, k)
                .to_dense(f)
                .ok_or_else(|| Error::Integrity("bracket not representable modulo the prime".into()))?;
            let apply = |vs: &[Vec<F::E>]| -> Subspace<F::E> {
                if block.rows == 0 {
                    Vec::new()
                } else {
                    vs.iter().map(|v| block.apply(v, f)).collect()
                }
            };
            let img = apply(&fs.piece(i, k));
            let target_piece = ft.piece(i + 1, kt);
            if ft.span(kt, &[&img, &target_piece]) != ft.span(kt, &[&target_piece]) {
                raises = false;
            }
            let tz = apply(&fs.relative_cycles(i, k));
            let b = ft.relative_boundaries(i + 1, kt);
            let r = ft.span(kt, &[&tz, &b]) - ft.span(kt, &[&b]);
            if r > 0 {
                col.insert(k, r);
            }
        }
        ranks.insert(i, col);
    }
    Ok((raises, ranks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::assemble;
    use crate::linalg::ModP;

    #[test]
    fn pieces_are_nested_and_end_at_zero() {
        let c = assemble(1, 2, 2, 3).unwrap();
        let f = Filtration::new(&c, QQ).unwrap();
        for &k in f.dims.keys() {
            assert_eq!(f.piece(0, k).len(), f.dims[&k]);
            assert!(f.piece(f.top + 1, k).is_empty());
            for i in 0..=f.top {
                assert!(f.piece(i + 1, k).len() <= f.piece(i, k).len());
            }
        }
    }

    #[test]
    fn e1_matches_in_both_fields_and_has_the_right_euler_characteristic() {
        let c = assemble(2, 3, 2, 2).unwrap();
        let exact = Filtration::new(&c, QQ).unwrap().page(&c);
        let modular = Filtration::new(&c, ModP::new(1_000_003)).unwrap().page(&c);
        assert_eq!(exact, modular);
        assert_eq!(exact.euler_characteristic(), c.complex.euler_characteristic());
    }
}
