//! Verifiers comparing hairy graph homology with decorated graph complexes and closed forms.

use super::bracket::{bracket_l, bracket_t};
use super::filtration::{filtration_pages, shift_on_e1, Filtration};
use super::split::{dense, split_even, Part};
use crate::coeff::DeRham;
use crate::complex::{assemble, HairyComplex};
use crate::decorated::{build_decorated, expr::bh, gc2_closed_form, parse_system, theta};
use crate::error::{Error, Result};
use crate::graph::{degree_of, enumerate, HairyGraph, Parity};
use crate::linalg::{RankEngine, QQ};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub type Dims = BTreeMap<i32, usize>;

/// One compared statement.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub parameters: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(claim: impl Into<String>, parameters: Value, lhs: impl Serialize, rhs: impl Serialize, pass: bool) -> Self {
        Check {
            claim: claim.into(),
            parameters,
            lhs: serde_json::to_value(lhs).unwrap_or(Value::Null),
            rhs: serde_json::to_value(rhs).unwrap_or(Value::Null),
            pass,
        }
    }

    fn equal<T: Serialize + PartialEq>(claim: impl Into<String>, parameters: Value, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        Self::new(claim, parameters, lhs, rhs, pass)
    }
}

/// A list of checks; passes when all of them do.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> Value {
        json!({ "pass": self.pass(), "checks": self.checks })
    }
}

/// Moves dims from a decorated complex to hairy degrees: `k ↦ k − shift`.
pub fn shift_dims(d: &Dims, shift: i32) -> Dims {
    d.iter().map(|(k, v)| (k - shift, *v)).collect()
}

fn det_prefix(n: i32) -> &'static str {
    if n.rem_euclid(2) == 1 {
        "Det*"
    } else {
        ""
    }
}

/// `H(GC^r_F)` for an expression in the coefficient grammar.
pub fn gc_homology(expr: &str, r: usize, engine: &RankEngine) -> Result<Dims> {
    let f = parse_system(expr)?;
    build_decorated(&f, r)?.homology(engine)
}

/// The shift `nr + (h−1)(n−m−2) − 2` of the leading summand in both codimension parities.
pub fn leading_shift(m: i32, n: i32, r: usize, h: usize) -> i32 {
    n * r as i32 + (h as i32 - 1) * (n - m - 2) - 2
}

/// `HGC^{r,h}_{m,n}` against `GC^r_{Det^n ⊗ CH^h}` shifted by `nr + m − n`, for `r ≥ 2`.
pub fn verify_decorated_model(m: i32, n: i32, r: usize, h: usize, engine: &RankEngine) -> Result<Report> {
    let params = json!({"m": m, "n": n, "r": r, "h": h});
    let hairy = engine.homology_dims(&assemble(m, n, r, h)?.complex)?;
    let expr = format!("{}CH<{},{}>", det_prefix(n), n - m - 2, h);
    let gc = shift_dims(&gc_homology(&expr, r, engine)?, n * r as i32 + m - n);
    Ok(Report {
        checks: vec![Check::equal(format!("H(HGC) = H(GC_{{{expr}}})[nr+m-n]"), params, hairy, gc)],
    })
}

/// The even-codimension splitting: summand homologies against symmetric powers of `H_1`, and
/// `[L, −]` carrying summand I of `h` onto summand II of `h+1` while killing summand II.
pub fn verify_splitting(m: i32, n: i32, r: usize, h: usize, engine: &RankEngine) -> Result<Report> {
    if !Parity::of(m, n).even_codim() {
        return Err(Error::Usage("the I/II splitting needs even n − m".into()));
    }
    let params = json!({"m": m, "n": n, "r": r, "h": h});
    let c = assemble(m, n, r, h)?;
    let next = assemble(m, n, r, h + 1)?;
    let split = split_even(&c)?;
    let split_next = split_even(&next)?;
    let mut report = Report::default();
    report.checks.push(Check::new(
        "summand projector is idempotent and commutes with d",
        params.clone(),
        split.is_idempotent() && split.commutes_with(&c),
        true,
        split.is_idempotent() && split.commutes_with(&c),
    ));
    let h_i = engine.homology_dims(&split.summand(&c, Part::I)?)?;
    let h_ii = engine.homology_dims(&split.summand(&c, Part::II)?)?;
    let pre = det_prefix(n);
    let s = leading_shift(m, n, r, h);
    let rhs_i = shift_dims(&gc_homology(&format!("{pre}Sym{h}(H1)"), r, engine)?, s);
    let rhs_ii = shift_dims(&gc_homology(&format!("{pre}Sym{}(H1)", h - 1), r, engine)?, s + 1);
    report
        .checks
        .push(Check::equal(format!("H(HGC^I) = H(GC_{{{pre}S^h H1}})[shift]"), params.clone(), h_i, rhs_i));
    report
        .checks
        .push(Check::equal(format!("H(HGC^II) = H(GC_{{{pre}S^(h-1) H1}})[shift+1]"), params.clone(), h_ii, rhs_ii));

    let l = bracket_l(&c, &next)?;
    report.checks.push(Check::new("[L,-] is a chain map", params.clone(), l.is_chain_map(&c, &next), true, l.is_chain_map(&c, &next)));
    let mut kills_ii = true;
    let mut lands_in_ii = true;
    let mut rank_lp = Dims::new();
    let mut dim_i = Dims::new();
    for &k in c.graphs.keys() {
        let kt = k + l.degree;
        let lk = dense(&l.block(&c, &next, k));
        let p1 = split.projector(k, Part::I);
        kills_ii &= lk.mul(&split.projector(k, Part::II), &QQ).is_zero(&QQ);
        let lp = lk.mul(&p1, &QQ);
        if split_next.projectors.contains_key(&kt) {
            lands_in_ii &= split_next.projector(kt, Part::I).mul(&lp, &QQ).is_zero(&QQ);
        }
        rank_lp.insert(kt, lp.rank(&QQ));
        dim_i.insert(kt, p1.rank(&QQ));
    }
    let dim_ii_next: Dims = next.graphs.keys().map(|&k| (k, split_next.projector(k, Part::II).rank(&QQ))).collect();
    let nonzero = |d: &Dims| -> Dims { d.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect() };
    report.checks.push(Check::new("[L,-] kills summand II", params.clone(), kills_ii, true, kills_ii));
    report.checks.push(Check::new("[L,-] maps summand I into summand II of h+1", params.clone(), lands_in_ii, true, lands_in_ii));
    let iso = rank_lp == dim_i && nonzero(&dim_i) == nonzero(&dim_ii_next);
    report.checks.push(Check::new(
        "[L,-] restricted to summand I is an isomorphism onto summand II of h+1",
        params,
        json!({"rank L·P_I": rank_lp, "dim I": nonzero(&dim_i)}),
        json!({"dim II(h+1)": nonzero(&dim_ii_next)}),
        iso,
    ));
    Ok(report)
}

/// The second column of `E_1` predicted for odd codimension.
fn predicted_second_column(m: i32, n: i32, r: usize, h: usize, engine: &RankEngine) -> Result<Dims> {
    let pre = det_prefix(n);
    Ok(match h {
        1 => {
            let expr = if pre.is_empty() { "K" } else { "Det" };
            shift_dims(&gc_homology(expr, r, engine)?, n * r as i32 - 1)
        }
        2 => Dims::new(),
        _ => shift_dims(&gc_homology(&format!("{pre}B{}", h - 2), r, engine)?, leading_shift(m, n, r, h) + 1),
    })
}

/// The same systems at `r = 2` rewritten through `B_2^{2k−1} = S^k H_1`,
/// `B_2^{2k} = Det ⊗ S^{k−1} H_1`.
fn bh2_expr(h: usize, det: bool) -> String {
    let (twist, k) = if h % 2 == 1 { (false, (h + 1) / 2) } else { (true, h / 2 - 1) };
    let pre = if twist != det { "Det*" } else { "" };
    format!("{pre}Sym{k}(H1)")
}

/// The defect filtration in odd codimension: deep quotients acyclic, the two columns of `E_1`
/// against `B`-type decorated complexes, `d_1` trivial for `h ≤ 2`, and `[T, −]` shifting
/// columns.
pub fn verify_filtration(m: i32, n: i32, r: usize, h: usize, engine: &RankEngine) -> Result<Report> {
    if Parity::of(m, n).even_codim() {
        return Err(Error::Usage("the defect filtration comparison needs odd n − m".into()));
    }
    let params = json!({"m": m, "n": n, "r": r, "h": h});
    let c = assemble(m, n, r, h)?;
    let page = filtration_pages(&c, engine)?;
    let mut report = Report::default();
    let deep: BTreeMap<usize, Dims> = page.e1.iter().filter(|(i, _)| **i >= 2).map(|(i, d)| (*i, d.clone())).collect();
    let deep_zero: BTreeMap<usize, Dims> = deep.keys().map(|i| (*i, Dims::new())).collect();
    report.checks.push(Check::equal("F_i/F_{i+1} acyclic for i >= 2", params.clone(), deep, deep_zero));

    let pre = det_prefix(n);
    let s = leading_shift(m, n, r, h);
    let col0 = shift_dims(&gc_homology(&format!("{pre}B{h}"), r, engine)?, s);
    report
        .checks
        .push(Check::equal(format!("E_1^0 = H(GC_{{{pre}B^h}})[shift]"), params.clone(), page.column(0), col0.clone()));
    let col1 = predicted_second_column(m, n, r, h, engine)?;
    report
        .checks
        .push(Check::equal("E_1^1 = predicted second column", params.clone(), page.column(1), col1));
    if r == 2 {
        let oracle = shift_dims(&gc_homology(&bh2_expr(h, !pre.is_empty()), r, engine)?, s);
        report
            .checks
            .push(Check::equal("E_1^0 via B_2^h in terms of S^k H1", params.clone(), col0, oracle));
        report.checks.push(Check::new(
            "at most one nonzero column",
            params.clone(),
            page.nonzero_columns(),
            "≤ 1 column",
            page.nonzero_columns().len() <= 1,
        ));
    }
    let euler = engine.homology_dims(&c.complex)?.iter().map(|(k, d)| if k.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum::<i64>();
    report
        .checks
        .push(Check::equal("Euler characteristic of E_1 equals that of the complex", params.clone(), page.euler_characteristic(), euler));
    if h <= 2 {
        let d1: BTreeMap<usize, Dims> = page.d1_ranks.iter().filter(|(_, v)| !v.is_empty()).map(|(i, v)| (*i, v.clone())).collect();
        report.checks.push(Check::equal("d_1 = 0 for h <= 2", params.clone(), d1, BTreeMap::new()));
    }
    report.extend(verify_tripod_shift(&c, engine)?);
    Ok(report)
}

/// `[T, −]` maps `F_i(h)` into `F_{i+1}(h+2)` and induces an isomorphism from `E_1^0(h)` onto
/// `E_1^1(h+2)`.
pub fn verify_tripod_shift(c: &HairyComplex, engine: &RankEngine) -> Result<Report> {
    let params = json!({"m": c.m, "n": c.n, "r": c.r, "h": c.h, "target_h": c.h + 2});
    let target = assemble(c.m, c.n, c.r, c.h + 2)?;
    let t = bracket_t(c, &target)?;
    let mut report = Report::default();
    report
        .checks
        .push(Check::new("[T,-] is a chain map", params.clone(), t.is_chain_map(c, &target), true, t.is_chain_map(c, &target)));
    let fs = Filtration::new(c, engine.field())?;
    let ft = Filtration::new(&target, engine.field())?;
    let (raises, ranks) = shift_on_e1(&t, c, &target, &fs, &ft)?;
    report.checks.push(Check::new("[T,-] maps F_i into F_{i+1}", params.clone(), raises, true, raises));
    let source_page = filtration_pages(c, engine)?;
    let target_page = filtration_pages(&target, engine)?;
    let induced = ranks.get(&0).cloned().unwrap_or_default();
    let src0 = source_page.column(0);
    let tgt1: Dims = shift_dims(&target_page.column(1), t.degree);
    report.checks.push(Check::new(
        "[T,-] induces E_1^0(h) ≅ E_1^1(h+2)",
        params,
        json!({"rank": induced, "source": src0}),
        json!({"target": tgt1}),
        induced == src0 && src0 == tgt1,
    ));
    Ok(report)
}

/// Predicted one-loop homology: the hedgehog with `h` vertices when `h ≡ Ln+1 (mod 2L)`.
pub fn hedgehog_prediction(m: i32, n: i32, h: usize) -> Dims {
    let l = if Parity::of(m, n).even_codim() { 1 } else { 2 };
    let k = h as i64;
    let target = (l * n as i64 + 1).rem_euclid(2 * l);
    let mut out = Dims::new();
    if k.rem_euclid(2 * l) == target {
        out.insert(degree_of(m, n, 1, h, h), 1);
    }
    out
}

/// Predicted tree-level homology: the line graph in even codimension, the tripod in odd.
pub fn zero_loop_prediction(m: i32, n: i32, h: usize) -> Dims {
    let g = if Parity::of(m, n).even_codim() { HairyGraph::line() } else { HairyGraph::tripod() };
    let mut out = Dims::new();
    if g.hair_count() == h {
        out.insert(crate::graph::degree(&g, m, n), 1);
    }
    out
}

/// Loop orders 0 and 1 against the closed forms.
pub fn verify_loop01(m: i32, n: i32, max_hairs: usize, engine: &RankEngine) -> Result<Report> {
    let parity = Parity::of(m, n);
    let mut report = Report::default();
    for h in 1..=max_hairs {
        let params = json!({"m": m, "n": n, "r": 1, "h": h});
        let got = engine.homology_dims(&assemble(m, n, 1, h)?.complex)?;
        let want = hedgehog_prediction(m, n, h);
        if !want.is_empty() {
            let hedgehog_alive = enumerate(1, h, h, parity).iter().any(|c| c.graph.v == h && c.graph.hairs.len() == h);
            report.checks.push(Check::new("hedgehog is a nonzero generator", params.clone(), hedgehog_alive, true, hedgehog_alive));
        }
        report.checks.push(Check::equal("H(HGC^1) = hedgehog closed form", params, got, want));
    }
    for h in 1..=max_hairs.max(3) {
        let params = json!({"m": m, "n": n, "r": 0, "h": h});
        let got = engine.homology_dims(&assemble(m, n, 0, h)?.complex)?;
        report.checks.push(Check::equal("H(HGC^0) = line or tripod", params, got, zero_loop_prediction(m, n, h)));
    }
    Ok(report)
}

/// `dim B_2^h` from the closed form: `k+1` for `h = 2k−1`, `k` for `h = 2k`.
pub fn bh2_dim(h: usize) -> usize {
    if h % 2 == 1 {
        (h + 1) / 2 + 1
    } else {
        h / 2
    }
}

/// Loop order two: `H^3(GC²_{S^{2k} H1}) = ⌊k/3⌋`, `H^3(GC²_{Det⊗S^{2k} H1}) = ⌊k/3⌋ + 1`, odd
/// powers vanish, and `dim B_2^h` against both the de Rham kernel and the hp homology.
pub fn verify_r2(max_k: usize, max_h: usize, engine: &RankEngine) -> Result<Report> {
    let mut report = Report::default();
    for k in 0..=max_k {
        for (pre, extra) in [("", 0usize), ("Det*", 1)] {
            let expr = format!("{pre}Sym{}(H1)", 2 * k);
            let got = gc_homology(&expr, 2, engine)?;
            let mut want = Dims::new();
            if k / 3 + extra > 0 {
                want.insert(3, k / 3 + extra);
            }
            report.checks.push(Check::equal(format!("H(GC²_{{{expr}}})"), json!({"k": k}), got, want));
            let closed = gc2_closed_form(parse_system(&expr)?.as_ref())?;
            report
                .checks
                .push(Check::equal(format!("theta invariants of {expr}"), json!({"k": k}), closed, k / 3 + extra));
        }
        if k >= 1 {
            for pre in ["", "Det*"] {
                let expr = format!("{pre}Sym{}(H1)", 2 * k - 1);
                let got = gc_homology(&expr, 2, engine)?;
                report.checks.push(Check::equal(format!("H(GC²_{{{expr}}}) = 0"), json!({"k": k}), got, Dims::new()));
            }
        }
    }
    let th = theta();
    for h in 1..=max_h {
        let derham = DeRham::new(2, h).kernel_dim();
        let hp = bh(h).dim(&th)?;
        report.checks.push(Check::equal(
            "dim B_2^h: de Rham kernel, hp homology on theta, closed form",
            json!({"h": h}),
            (derham, hp),
            (bh2_dim(h), bh2_dim(h)),
        ));
    }
    Ok(report)
}
