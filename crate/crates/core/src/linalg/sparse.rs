//! Coordinate-format exact matrices and sparse Gaussian elimination.

use super::field::{Field, ModP, Q, QQ};
use num::Zero;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Sorted by (row, col); no duplicates and no zeros.
    entries: Vec<(usize, usize, Q)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from triplets, summing repeated coordinates and dropping zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Q)>,
    {
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((r, c)).or_insert_with(Q::zero) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, super::field::q(1))))
    }

    pub fn entries(&self) -> &[(usize, usize, Q)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self
            .entries
            .binary_search_by(|(a, b, _)| (*a, *b).cmp(&(r, c)))
        {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|(r, c, v)| (*r, *c, v * s)),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(other.entries.iter()).cloned(),
        )
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, &Q)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in &other.entries {
            by_row[*r].push((*c, v));
        }
        let mut out = Vec::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &by_row[*k] {
                out.push((*r, *c, a * *b));
            }
        }
        Self::from_triplets(self.rows, other.cols, out)
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|(r, c, v)| (row_perm[*r], col_perm[*c], v.clone())),
        )
    }

    pub fn from_dense(m: &super::dense::Mat<Q>) -> Self {
        Self::from_triplets(
            m.rows,
            m.cols,
            (0..m.rows).flat_map(|r| (0..m.cols).map(move |c| (r, c, m.get(r, c).clone()))),
        )
    }

    /// Dense copy over an arbitrary field, or `None` if some denominator vanishes there.
    pub fn to_dense<F: Field>(&self, f: &F) -> Option<super::dense::Mat<F::E>> {
        let mut m = super::dense::Mat::zeros(self.rows, self.cols, f);
        for (r, c, v) in &self.entries {
            m.set(*r, *c, f.from_q(v)?);
        }
        Some(m)
    }

    /// Rank over `F_p`; `None` when an entry's denominator is divisible by `p`.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let f = ModP::new(p);
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            let x = f.from_q(v)?;
            if x != 0 {
                rows[*r].push((*c, x));
            }
        }
        Some(eliminate(&f, self.cols, rows))
    }

    /// Rank over the rationals by exact sparse elimination.
    pub fn rank_exact(&self) -> usize {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        eliminate(&QQ, self.cols, rows)
    }
}

fn axpy_row<F: Field>(f: &F, target: &[(usize, F::E)], factor: &F::E, pivot: &[(usize, F::E)]) -> Vec<(usize, F::E)> {
    // target - factor * pivot, both sorted by column
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        if j == pivot.len() || (i < target.len() && target[i].0 < pivot[j].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i == target.len() || pivot[j].0 < target[i].0 {
            out.push((pivot[j].0, f.neg(&f.mul(factor, &pivot[j].1))));
            j += 1;
        } else {
            let v = f.sub(&target[i].1, &f.mul(factor, &pivot[j].1));
            if !f.is_zero(&v) {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse Gaussian elimination with a Markowitz-style pivot choice; returns the rank.
///
/// Rows must not contain explicit zeros; they are sorted here.
pub fn eliminate<F: Field>(f: &F, cols: usize, mut rows: Vec<Vec<(usize, F::E)>>) -> usize {
    for r in rows.iter_mut() {
        r.sort_by_key(|e| e.0);
    }
    let n = rows.len();
    let mut active = vec![true; n];
    let mut col_count = vec![0usize; cols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_count[*c] += 1;
            col_rows[*c].push(i);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_empty())
        .map(|(i, r)| Reverse((r.len(), i)))
        .collect();
    let mut rank = 0;
    const CANDIDATES: usize = 4;
    loop {
        let mut cands: Vec<usize> = Vec::with_capacity(CANDIDATES);
        while cands.len() < CANDIDATES {
            match heap.pop() {
                None => break,
                Some(Reverse((len, i))) => {
                    if active[i] && rows[i].len() == len && len > 0 && !cands.contains(&i) {
                        cands.push(i);
                    }
                }
            }
        }
        if cands.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &cands {
            let rl = rows[i].len() - 1;
            for (c, _) in &rows[i] {
                let cost = rl * (col_count[*c] - 1);
                if best.map_or(true, |b| cost < b.0) {
                    best = Some((cost, i, *c));
                }
            }
        }
        let (_, pr, pc) = best.unwrap();
        for &i in &cands {
            if i != pr {
                heap.push(Reverse((rows[i].len(), i)));
            }
        }
        active[pr] = false;
        rank += 1;
        let pivot = std::mem::take(&mut rows[pr]);
        for (c, _) in &pivot {
            col_count[*c] -= 1;
        }
        let pv = pivot.iter().find(|e| e.0 == pc).unwrap().1.clone();
        let pinv = f.inv(&pv);
        let users = std::mem::take(&mut col_rows[pc]);
        for i in users {
            if !active[i] {
                continue;
            }
            let Ok(pos) = rows[i].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = f.mul(&rows[i][pos].1, &pinv);
            let old = std::mem::take(&mut rows[i]);
            for (c, _) in &old {
                col_count[*c] -= 1;
            }
            let new = axpy_row(f, &old, &factor, &pivot);
            for (c, _) in &new {
                col_count[*c] += 1;
                if old.binary_search_by_key(c, |e| e.0).is_err() {
                    col_rows[*c].push(i);
                }
            }
            if !new.is_empty() {
                heap.push(Reverse((new.len(), i)));
            }
            rows[i] = new;
        }
    }
    rank
}
