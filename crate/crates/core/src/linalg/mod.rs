//! Exact linear algebra: modular and rational ranks, dense subspace algebra, homology.

pub mod dense;
pub mod field;
pub mod primes;
pub mod sparse;

use crate::complex::GradedComplex;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

pub use dense::{coordinates, preimage, span_basis, span_dim, Mat};
pub use field::{q, qfrac, Field, ModP, Rationals, Q, QQ};
pub use sparse::SparseMatrix;

/// Matrices with at most this many nonzeros get an exact rational confirmation
/// whenever two primes disagree.
pub const EXACT_CONFIRM_NNZ: usize = 5000;

/// How ranks are computed: a seeded prime stream, optional user primes, optional exact mode.
#[derive(Clone, Debug, Serialize)]
pub struct RankEngine {
    pub seed: u64,
    pub exact: bool,
    primes: Vec<u64>,
}

impl Default for RankEngine {
    fn default() -> Self {
        Self::new(0, None, false)
    }
}

impl RankEngine {
    pub fn new(seed: u64, primes: Option<Vec<u64>>, exact: bool) -> Self {
        let mut stream = primes.unwrap_or_default();
        for p in primes::prime_stream(seed, 12) {
            if !stream.contains(&p) {
                stream.push(p);
            }
        }
        RankEngine {
            seed,
            exact,
            primes: stream,
        }
    }

    /// The two primes every rank is computed with first.
    pub fn primary_primes(&self) -> [u64; 2] {
        [self.primes[0], self.primes[1]]
    }

    /// Rank over the rationals.
    ///
    /// Two primes are tried; if their ranks disagree further primes are drawn until two
    /// agree, and small matrices are then settled by exact elimination.
    pub fn rank(&self, m: &SparseMatrix) -> usize {
        if self.exact {
            return m.rank_exact();
        }
        if m.is_zero() {
            return 0;
        }
        let mut seen: Vec<usize> = Vec::new();
        let mut disagreement = false;
        for &p in &self.primes {
            let Some(r) = m.rank_mod_p(p) else { continue };
            if seen.contains(&r) {
                if disagreement && m.nnz() <= EXACT_CONFIRM_NNZ {
                    return m.rank_exact();
                }
                return r;
            }
            if !seen.is_empty() {
                disagreement = true;
            }
            seen.push(r);
        }
        m.rank_exact()
    }

    /// Field used for dense subspace computations in this engine.
    pub fn field(&self) -> ModP {
        ModP::new(self.primes[0])
    }

    /// Second field for cross-checking dense computations.
    pub fn second_field(&self) -> ModP {
        ModP::new(self.primes[1])
    }

    /// Cohomology dimensions `dim H^d = dim C^d − rank d_d − rank d_{d−1}`, after checking d² = 0.
    pub fn homology_dims(&self, c: &GradedComplex) -> Result<BTreeMap<i32, usize>> {
        c.check_d_squared()?;
        let ranks: BTreeMap<i32, usize> = c
            .blocks
            .iter()
            .map(|(d, m)| (*d, self.rank(m)))
            .collect();
        let mut out = BTreeMap::new();
        for (&d, basis) in &c.basis {
            let r_out = ranks.get(&d).copied().unwrap_or(0);
            let r_in = ranks.get(&(d - 1)).copied().unwrap_or(0);
            let dim = basis.len() as i64 - r_out as i64 - r_in as i64;
            if dim < 0 {
                return Err(Error::Integrity(format!("negative homology dimension in degree {d}")));
            }
            if dim > 0 {
                out.insert(d, dim as usize);
            }
        }
        Ok(out)
    }
}

/// Cohomology dimensions with the default engine.
pub fn homology_dims(c: &GradedComplex) -> Result<BTreeMap<i32, usize>> {
    RankEngine::default().homology_dims(c)
}

/// Rank with the default engine.
pub fn rank(m: &SparseMatrix) -> usize {
    RankEngine::default().rank(m)
}
