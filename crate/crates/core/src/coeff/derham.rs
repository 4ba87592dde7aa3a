//! The two-term de Rham complex `Σ_j y_j ∂/∂θ_j` on polynomials in odd `y_j` (weight 1) and
//! even `θ_j` (weight 2).

use super::QMat;
use crate::linalg::{q, QQ};
use std::collections::HashMap;

/// A monomial `y_S θ^α`: the set `S` ascending and the exponents `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub ys: Vec<usize>,
    pub thetas: Vec<usize>,
}

impl Monomial {
    pub fn weight(&self) -> usize {
        self.ys.len() + 2 * self.thetas.iter().sum::<usize>()
    }
}

/// `d_dR` from total weight `h` to total weight `h − 1` (the target carries the vertex factor).
#[derive(Clone, Debug)]
pub struct DeRham {
    pub r: usize,
    pub h: usize,
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub matrix: QMat,
}

/// All monomials of weight `w` in `r` variables of each kind.
pub fn monomials(r: usize, w: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) {
        let ys: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        if ys.len() > w || (w - ys.len()) % 2 == 1 {
            continue;
        }
        let half = (w - ys.len()) / 2;
        for thetas in exponent_vectors(half, r) {
            out.push(Monomial { ys: ys.clone(), thetas });
        }
    }
    out.sort();
    out
}

fn exponent_vectors(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponent_vectors(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl DeRham {
    pub fn new(r: usize, h: usize) -> Self {
        let source = monomials(r, h);
        let target = if h == 0 { Vec::new() } else { monomials(r, h - 1) };
        let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = QMat::zeros(target.len(), source.len(), &QQ);
        for (c, mon) in source.iter().enumerate() {
            for j in 0..r {
                let a = mon.thetas[j];
                if a == 0 || mon.ys.contains(&j) {
                    continue;
                }
                let mut thetas = mon.thetas.clone();
                thetas[j] -= 1;
                let below = mon.ys.iter().filter(|&&i| i < j).count();
                let mut ys = mon.ys.clone();
                ys.push(j);
                ys.sort_unstable();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                let row = index[&Monomial { ys, thetas }];
                let v = matrix.get(row, c) + q(sign * a as i64);
                matrix.set(row, c, v);
            }
        }
        DeRham {
            r,
            h,
            source,
            target,
            matrix,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(&QQ)
    }

    pub fn kernel_dim(&self) -> usize {
        self.source.len() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.target.len() - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_theta_is_y() {
        let dr = DeRham::new(1, 2);
        // source: θ₁; target: y₁
        assert_eq!(dr.source.len(), 1);
        assert_eq!(dr.target.len(), 1);
        assert_eq!(*dr.matrix.get(0, 0), q(1));
        let dr3 = DeRham::new(1, 3);
        // y₁θ₁ maps to y₁y₁ = 0
        assert_eq!(dr3.rank(), 0);
    }

    #[test]
    fn two_variable_kernels() {
        assert_eq!(DeRham::new(2, 1).kernel_dim(), 2);
        assert_eq!(DeRham::new(2, 2).kernel_dim(), 1);
        assert_eq!(DeRham::new(2, 3).kernel_dim(), 3);
    }
}
