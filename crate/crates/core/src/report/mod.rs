//! Tables of hairy graph homology by loop order and hair count: computation, rendering,
//! comparison with reference tables, and an on-disk cell cache.

mod cache;
mod gc;
mod reference;
mod render;

pub use cache::Cache;
pub use gc::{gc_summary, GcSummary};
pub use reference::{reference_for, verify_table, Reference};
pub use render::{format_cell, format_entries, format_entry, parse_entries, render, Format};

use crate::complex::assemble;
use crate::error::{Error, Result};
use crate::graph::enumerate_all;
use crate::linalg::primes::is_prime;
use crate::linalg::RankEngine;
use crate::operators::{hedgehog_prediction, zero_loop_prediction};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// One summand `K^dim` in cohomological degree `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub degree: i32,
    pub dim: usize,
}

/// Nonzero dimensions as entries in increasing degree.
pub fn entries(dims: &BTreeMap<i32, usize>) -> Vec<Entry> {
    dims.iter()
        .filter(|(_, d)| **d > 0)
        .map(|(&degree, &dim)| Entry { degree, dim })
        .collect()
}

/// Parameters of a table run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableConfig {
    pub m: i32,
    pub n: i32,
    pub max_loops: usize,
    pub max_hairs: usize,
    pub seed: u64,
    pub exact: bool,
    pub primes: Option<Vec<u64>>,
    /// Cells whose complexes have more isomorphism classes of graphs than this are skipped.
    pub max_generators: usize,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            m: 2,
            n: 2,
            max_loops: 3,
            max_hairs: 3,
            seed: 0,
            exact: false,
            primes: None,
            max_generators: 2_000_000,
            threads: None,
        }
    }
}

impl TableConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_loops < 1 || self.max_hairs < 1 {
            return Err(Error::Usage("loop and hair bounds must be at least 1".into()));
        }
        if let Some(ps) = &self.primes {
            if let Some(p) = ps.iter().find(|&&p| !is_prime(p) || p < 3 || p >= 1 << 31) {
                return Err(Error::Usage(format!("{p} is not an odd prime below 2^31")));
            }
        }
        Ok(())
    }

    pub fn engine(&self) -> RankEngine {
        RankEngine::new(self.seed, self.primes.clone(), self.exact)
    }
}

/// One table cell `H(HGC^{r,h}_{m,n})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub r: usize,
    pub h: usize,
    pub homology: Vec<Entry>,
    /// Reason the cell was not computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Closed-form prediction at loop orders 0 and 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Vec<Entry>>,
}

impl Cell {
    /// The computed homology disagrees with the closed form.
    pub fn discrepancy(&self) -> bool {
        self.skipped.is_none() && self.closed_form.as_ref().is_some_and(|c| *c != self.homology)
    }
}

/// A computed table; cells are ordered by `(r, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub config: TableConfig,
    pub primes: Vec<u64>,
    pub cells: Vec<Cell>,
}

impl Table {
    pub fn cell(&self, r: usize, h: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| c.r == r && c.h == h)
    }

    pub fn discrepancies(&self) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.discrepancy()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("tables serialize")
    }
}

/// Where optional side outputs go.
#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub cache: Option<Cache>,
    /// Directory receiving each assembled complex as JSON.
    pub dump_complex: Option<PathBuf>,
}

/// Computes every cell with `0 ≤ r ≤ max_loops` and `1 ≤ h ≤ max_hairs`.
pub fn compute_table(config: &TableConfig, out: &Outputs) -> Result<Table> {
    config.validate()?;
    let engine = config.engine();
    if let Some(dir) = &out.dump_complex {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    let coords: Vec<(usize, usize)> =
        (0..=config.max_loops).flat_map(|r| (1..=config.max_hairs).map(move |h| (r, h))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Usage(format!("worker pool: {e}")))?;
    let cells = pool.install(|| {
        coords
            .par_iter()
            .map(|&(r, h)| compute_cell(config, &engine, out, r, h))
            .collect::<Result<Vec<Cell>>>()
    })?;
    Ok(Table {
        config: config.clone(),
        primes: engine.primary_primes().to_vec(),
        cells,
    })
}

fn closed_form(m: i32, n: i32, r: usize, h: usize) -> Option<Vec<Entry>> {
    match r {
        0 => Some(entries(&zero_loop_prediction(m, n, h))),
        1 => Some(entries(&hedgehog_prediction(m, n, h))),
        _ => None,
    }
}

fn compute_cell(config: &TableConfig, engine: &RankEngine, out: &Outputs, r: usize, h: usize) -> Result<Cell> {
    let (m, n) = (config.m, config.n);
    let mut cell = Cell {
        r,
        h,
        homology: Vec::new(),
        skipped: None,
        closed_form: closed_form(m, n, r, h),
    };
    let key = cache::Key::new(m, n, r, h, engine);
    if out.dump_complex.is_none() {
        if let Some(hit) = out.cache.as_ref().and_then(|c| c.get(&key)) {
            cell.homology = hit;
            return Ok(cell);
        }
    }
    let size: usize = enumerate_all(r, h).iter().map(|l| l.len()).sum();
    if size > config.max_generators {
        cell.skipped = Some(format!("{size} graph classes exceed the bound {}", config.max_generators));
        return Ok(cell);
    }
    let c = assemble(m, n, r, h)?;
    if let Some(dir) = &out.dump_complex {
        write_json(&dir.join(format!("hgc_m{m}_n{n}_r{r}_h{h}.json")), &c.to_json())?;
    }
    cell.homology = entries(&engine.homology_dims(&c.complex)?);
    if let Some(cache) = &out.cache {
        cache.put(&key, &cell.homology)?;
    }
    Ok(cell)
}

pub(crate) fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_even_table() {
        let cfg = TableConfig {
            max_loops: 2,
            max_hairs: 3,
            ..TableConfig::default()
        };
        let t = compute_table(&cfg, &Outputs::default()).unwrap();
        assert_eq!(t.cells.len(), 9);
        assert_eq!(format_cell(t.cell(1, 1).unwrap()), "1_0");
        assert_eq!(format_cell(t.cell(1, 3).unwrap()), "1_4");
        assert_eq!(format_cell(t.cell(0, 2).unwrap()), "1_1");
        assert!(t.discrepancies().is_empty());
    }

    #[test]
    fn generator_bound_skips_cells() {
        let cfg = TableConfig {
            max_loops: 2,
            max_hairs: 2,
            max_generators: 3,
            ..TableConfig::default()
        };
        let t = compute_table(&cfg, &Outputs::default()).unwrap();
        let c = t.cell(2, 2).unwrap();
        assert!(c.skipped.is_some());
        assert_eq!(format_cell(c), "skipped");
        assert!(t.cell(0, 2).unwrap().skipped.is_none());
    }

    #[test]
    fn rejects_bad_primes() {
        let cfg = TableConfig {
            primes: Some(vec![15, 17]),
            ..TableConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Usage(_))));
    }
}
