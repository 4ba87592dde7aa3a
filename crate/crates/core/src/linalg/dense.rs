//! Small dense matrices over a [`Field`], with row reduction and subspace helpers.

use super::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug + Send + Sync> Mat<E> {
    pub fn zeros<F: Field<E = E>>(rows: usize, cols: usize, f: &F) -> Self {
        Mat {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<E = E>>(n: usize, f: &F) -> Self {
        let mut m = Self::zeros(n, n, f);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_fn<F: Field<E = E>>(rows: usize, cols: usize, _f: &F, g: impl Fn(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(g(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns<F: Field<E = E>>(rows: usize, columns: &[Vec<E>], f: &F) -> Self {
        let mut m = Self::zeros(rows, columns.len(), f);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<E = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols, f);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply<F: Field<E = E>>(&self, v: &[E], f: &F) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![f.zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, k);
                if !f.is_zero(a) {
                    *o = f.add(o, &f.mul(a, x));
                }
            }
        }
        out
    }

    pub fn add<F: Field<E = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<E = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<E = E>>(&self, s: &E, f: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn is_zero<F: Field<E = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron<F: Field<E = E>>(&self, other: &Self, f: &F) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, f);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if f.is_zero(a) {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !f.is_zero(b) {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace<F: Field<E = E>>(&self, f: &F) -> E {
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            t = f.add(&t, self.get(i, i));
        }
        t
    }

    /// Determinant of a square matrix.
    pub fn det<F: Field<E = E>>(&self, f: &F) -> E {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut acc = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return f.zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                acc = f.neg(&acc);
            }
            let pv = m.get(col, col).clone();
            acc = f.mul(&acc, &pv);
            let inv = f.inv(&pv);
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        acc
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref<F: Field<E = E>>(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.get(row, c);
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub(self.get(r, c), &f.mul(&factor, pv));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank<F: Field<E = E>>(&self, f: &F) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the null space, as column vectors.
    pub fn kernel<F: Field<E = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Indices of a maximal set of linearly independent columns (leftmost choice).
    pub fn independent_columns<F: Field<E = E>>(&self, f: &F) -> Vec<usize> {
        let mut m = self.clone();
        m.rref(f)
    }

    /// Solves `self * x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve<F: Field<E = E>>(&self, b: &[E], f: &F) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1, f);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Column basis of the span of the given vectors (dimension `dim` each).
pub fn span_basis<F: Field>(dim: usize, vectors: &[Vec<F::E>], f: &F) -> Vec<Vec<F::E>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_columns(dim, vectors, f);
    m.independent_columns(f).into_iter().map(|c| vectors[c].clone()).collect()
}

pub fn span_dim<F: Field>(dim: usize, vectors: &[Vec<F::E>], f: &F) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_columns(dim, vectors, f).rank(f)
}

/// Coordinates of `v` in the (independent) basis `basis`, or `None` when `v` is outside the span.
pub fn coordinates<F: Field>(dim: usize, basis: &[Vec<F::E>], v: &[F::E], f: &F) -> Option<Vec<F::E>> {
    if basis.is_empty() {
        return if v.iter().all(|x| f.is_zero(x)) { Some(Vec::new()) } else { None };
    }
    Mat::from_columns(dim, basis, f).solve(v, f)
}

/// Basis of `{ x : A x ∈ span(target) }` for a linear map `A` of shape `rows × cols`.
pub fn preimage<F: Field>(a: &Mat<F::E>, target: &[Vec<F::E>], f: &F) -> Vec<Vec<F::E>> {
    let mut cols = a.columns();
    let n = cols.len();
    for t in target {
        cols.push(t.iter().map(|x| f.neg(x)).collect());
    }
    if cols.is_empty() {
        return Vec::new();
    }
    let big = Mat::from_columns(a.rows, &cols, f);
    let ker = big.kernel(f);
    let proj: Vec<Vec<F::E>> = ker.into_iter().map(|k| k[..n].to_vec()).collect();
    span_basis(n, &proj, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{q, ModP, QQ};

    #[test]
    fn kernel_and_solve() {
        let m = Mat::from_fn(2, 3, &QQ, |r, c| q((r * 3 + c) as i64 + 1));
        let k = m.kernel(&QQ);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0], &QQ).iter().all(|x| x == &q(0)));
        let x = m.solve(&[q(6), q(15)], &QQ).unwrap();
        assert_eq!(m.apply(&x, &QQ), vec![q(6), q(15)]);
        assert!(Mat::from_fn(2, 1, &QQ, |_, _| q(1)).solve(&[q(1), q(2)], &QQ).is_none());
    }

    #[test]
    fn modular_rank() {
        let f = ModP::new(7);
        let m = Mat::from_fn(2, 2, &f, |r, c| [[1, 2], [3, 6]][r][c]);
        assert_eq!(m.rank(&f), 1);
    }

    #[test]
    fn preimage_of_subspace() {
        // A = diag(1, 0, 1); target = span(e0)
        let a = Mat::from_fn(3, 3, &QQ, |r, c| if r == c && r != 1 { q(1) } else { q(0) });
        let pre = preimage(&a, &[vec![q(1), q(0), q(0)]], &QQ);
        assert_eq!(pre.len(), 2);
    }
}
