//! Text renderings of tables: entries like `1_4` and `2_{-2}`, several entries joined by `;`.

use super::{Cell, Entry, Table};
use crate::error::{Error, Result};
use std::fmt::Write;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Usage(format!("unknown format '{s}' (csv, json, pretty)"))),
        }
    }
}

/// `dim_degree`, with braces around subscripts longer than one character.
pub fn format_entry(e: &Entry) -> String {
    if (0..10).contains(&e.degree) {
        format!("{}_{}", e.dim, e.degree)
    } else {
        format!("{}_{{{}}}", e.dim, e.degree)
    }
}

pub fn format_entries(es: &[Entry]) -> String {
    es.iter().map(format_entry).collect::<Vec<_>>().join(";")
}

/// A cell as text: empty for zero, `skipped` when not computed.
pub fn format_cell(c: &Cell) -> String {
    if c.skipped.is_some() {
        "skipped".into()
    } else {
        format_entries(&c.homology)
    }
}

/// Inverse of [`format_entries`]; accepts `,` as well as `;` between entries.
pub fn parse_entries(s: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split([';', ',']) {
        let bad = |msg: &str| Error::Parse {
            pos: offset,
            msg: format!("{msg} in '{part}'"),
        };
        let t = part.trim();
        if !t.is_empty() {
            let (dim, deg) = t.split_once('_').ok_or_else(|| bad("expected dim_degree"))?;
            let deg = deg.trim_start_matches('{').trim_end_matches('}');
            out.push(Entry {
                dim: dim.parse().map_err(|_| bad("bad dimension"))?,
                degree: deg.parse().map_err(|_| bad("bad degree"))?,
            });
        }
        offset += part.len() + 1;
    }
    out.sort();
    Ok(out)
}

pub fn render(t: &Table, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&t.to_json()).expect("tables serialize") + "\n",
        Format::Csv => csv(t),
        Format::Pretty => pretty(t),
    }
}

fn loops(t: &Table) -> std::ops::RangeInclusive<usize> {
    1..=t.config.max_loops
}

fn csv(t: &Table) -> String {
    let mut s = String::from("h");
    for r in loops(t) {
        write!(s, ",r={r}").unwrap();
    }
    s.push('\n');
    for h in 1..=t.config.max_hairs {
        write!(s, "{h}").unwrap();
        for r in loops(t) {
            write!(s, ",{}", t.cell(r, h).map(format_cell).unwrap_or_default()).unwrap();
        }
        s.push('\n');
    }
    s
}

/// Rows are hair counts from the top down, columns loop orders; `!` marks a disagreement with
/// the closed form.
fn pretty(t: &Table) -> String {
    let text = |r: usize, h: usize| -> String {
        t.cell(r, h)
            .map(|c| format_cell(c) + if c.discrepancy() { "!" } else { "" })
            .unwrap_or_default()
    };
    let width = loops(t)
        .flat_map(|r| (1..=t.config.max_hairs).map(move |h| (r, h)))
        .map(|(r, h)| text(r, h).chars().count())
        .max()
        .unwrap_or(0)
        .max(3);
    let mut s = format!("H(HGC_{{{},{}}})  rows: hairs, columns: loop order\n", t.config.m, t.config.n);
    for h in (1..=t.config.max_hairs).rev() {
        write!(s, "{h:>3} |").unwrap();
        for r in loops(t) {
            write!(s, " {:>width$}", text(r, h)).unwrap();
        }
        s.push('\n');
    }
    write!(s, "{:>3} +", "").unwrap();
    s.push_str(&"-".repeat(loops(t).count() * (width + 1)));
    s.push('\n');
    write!(s, "{:>3}  ", "").unwrap();
    for r in loops(t) {
        write!(s, " {r:>width$}").unwrap();
    }
    s.push('\n');
    for c in t.discrepancies() {
        let want = c.closed_form.as_deref().map(format_entries).unwrap_or_default();
        writeln!(s, "closed form disagrees at r={} h={}: computed '{}', predicted '{want}'", c.r, c.h, format_cell(c)).unwrap();
    }
    for c in t.cells.iter().filter(|c| c.skipped.is_some()) {
        writeln!(s, "skipped r={} h={}: {}", c.r, c.h, c.skipped.as_deref().unwrap_or_default()).unwrap();
    }
    s
}
