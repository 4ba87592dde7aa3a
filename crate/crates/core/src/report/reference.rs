//! Reference tables shipped with the crate, one per parity class, and the comparison of
//! computed tables against them.

use super::{format_cell, format_entries, parse_entries, Entry, Table};
use crate::error::{Error, Result};
use crate::graph::Parity;
use crate::operators::{Check, Report};
use serde_json::json;
use std::collections::BTreeMap;

const SOURCES: [((i32, i32), &str); 4] = [
    ((2, 2), include_str!("../../data/hgc_2_2.txt")),
    ((3, 3), include_str!("../../data/hgc_3_3.txt")),
    ((1, 2), include_str!("../../data/hgc_1_2.txt")),
    ((2, 3), include_str!("../../data/hgc_2_3.txt")),
];

/// Known nonzero cells for one `(m, n)`; cells within the covered range and not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    pub m: i32,
    pub n: i32,
    pub max_loops: usize,
    pub max_hairs: usize,
    pub cells: BTreeMap<(usize, usize), Vec<Entry>>,
}

impl Reference {
    pub fn parse(m: i32, n: i32, text: &str) -> Result<Self> {
        let mut cells = BTreeMap::new();
        let mut rows = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        rows.next();
        for line in rows {
            let mut cols = line.split_whitespace();
            let (Some(r), Some(h), Some(e)) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("reference row '{line}' needs r, h and entries"),
                });
            };
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad index '{s}' in reference row '{line}'"),
                })
            };
            cells.insert((num(r)?, num(h)?), parse_entries(e)?);
        }
        Ok(Reference {
            m,
            n,
            max_loops: 8,
            max_hairs: 9,
            cells,
        })
    }

    /// Entries of a cell, `None` outside the covered range.
    pub fn get(&self, r: usize, h: usize) -> Option<Vec<Entry>> {
        if r < 1 || r > self.max_loops || h < 1 || h > self.max_hairs {
            return None;
        }
        Some(self.cells.get(&(r, h)).cloned().unwrap_or_default())
    }

    /// The same table for another `(m, n)` of equal parities: a graph with `v` vertices has
    /// degree `m(h−1) + v + (1−n)(r−1+h)`, so only the degrees move.
    pub fn transported(&self, m: i32, n: i32) -> Self {
        let mut out = self.clone();
        out.m = m;
        out.n = n;
        for ((r, h), es) in out.cells.iter_mut() {
            let shift = (m - self.m) * (*h as i32 - 1) + (self.n - n) * (*r as i32 - 1 + *h as i32);
            for e in es.iter_mut() {
                e.degree += shift;
            }
            es.sort();
        }
        out
    }
}

/// The reference table for the parity class of `(m, n)`, transported to `(m, n)`.
pub fn reference_for(m: i32, n: i32) -> Result<Reference> {
    let parity = Parity::of(m, n);
    let ((m0, n0), text) = SOURCES
        .iter()
        .find(|((a, b), _)| Parity::of(*a, *b) == parity)
        .ok_or_else(|| Error::Unsupported(format!("no reference table for (m, n) = ({m}, {n})")))?;
    Ok(Reference::parse(*m0, *n0, text)?.transported(m, n))
}

/// Compares every computed cell with `r ≥ 1` inside the reference range; skipped cells fail.
pub fn verify_table(t: &Table) -> Result<Report> {
    let reference = reference_for(t.config.m, t.config.n)?;
    let mut report = Report::default();
    for c in &t.cells {
        let Some(want) = reference.get(c.r, c.h) else { continue };
        let params = json!({"m": t.config.m, "n": t.config.n, "r": c.r, "h": c.h});
        let got = format_cell(c);
        let want = format_entries(&want);
        let pass = got == want;
        report.checks.push(Check::new("cell matches the reference table", params, got, want, pass));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_sources_parse() {
        for ((m, n), text) in SOURCES {
            let r = Reference::parse(m, n, text).unwrap();
            assert!(r.cells.len() > 15);
        }
    }

    #[test]
    fn transport_keeps_parity_and_moves_degrees() {
        let r = reference_for(4, 4).unwrap();
        let base = reference_for(2, 2).unwrap();
        // (m, n) = (4, 4): m grows by 2, n by 2
        assert_eq!(r.get(1, 3).unwrap()[0].degree, base.get(1, 3).unwrap()[0].degree + 2 * 2 - 2 * 3);
        assert_eq!(r.get(2, 2), Some(Vec::new()));
        assert_eq!(r.get(9, 1), None);
    }
}
