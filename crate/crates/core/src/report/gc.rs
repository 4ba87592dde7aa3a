//! Homology of a decorated graph complex named by a coefficient expression.

use super::{entries, Entry};
use crate::decorated::{build_decorated, gc2_closed_form, parse_system, theta};
use crate::error::Result;
use crate::linalg::RankEngine;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcSummary {
    pub coeff: String,
    pub r: usize,
    pub homology: Vec<Entry>,
    pub total: usize,
    /// Theta invariants, for `r = 2` and systems concentrated in degree 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<usize>,
}

impl GcSummary {
    /// The closed form, when present, is the whole homology and sits in degree 3.
    pub fn pass(&self) -> bool {
        match self.closed_form {
            None => true,
            Some(0) => self.homology.is_empty(),
            Some(k) => self.homology == [Entry { degree: 3, dim: k }],
        }
    }
}

pub fn gc_summary(expr: &str, r: usize, engine: &RankEngine) -> Result<GcSummary> {
    let f = parse_system(expr)?;
    let dc = build_decorated(&f, r)?;
    let homology = entries(&dc.homology(engine)?);
    let closed_form = if r == 2 && !f.is_dg() && f.degrees(&theta())?.iter().all(|&d| d == 0) {
        Some(gc2_closed_form(f.as_ref())?)
    } else {
        None
    };
    Ok(GcSummary {
        coeff: expr.to_string(),
        r,
        total: homology.iter().map(|e| e.dim).sum(),
        homology,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let e = RankEngine::default();
        let s = gc_summary("Det*Sym2(H1)", 2, &e).unwrap();
        assert_eq!((s.total, s.closed_form), (1, Some(1)));
        assert!(s.pass());
        assert_eq!(gc_summary("K", 2, &e).unwrap().total, 0);
        assert_eq!(gc_summary("Sym3(H1)", 2, &e).unwrap().total, 0);
    }
}
