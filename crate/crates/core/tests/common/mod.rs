//! Property checks shared by the acceptance run and the property suites. Each returns a short
//! summary on success and a description of the first counterexample on failure.

#![allow(dead_code)]

use hgc_core::coeff::derived::{Summand, SymSplit};
use hgc_core::coeff::{contract, core_graphs, relabel, CoreGraph, DeRham, HpComplex, LocalSystem, QMat, System};
use hgc_core::complex::assemble;
use hgc_core::decorated::expr::bh;
use hgc_core::decorated::{build_decorated, parse_system};
use hgc_core::graph::canon::{full_automorphisms, Relabel};
use hgc_core::graph::{canonical_form, canonicalize, enumerate_all, max_vertices, HairyGraph, Parity};
use hgc_core::linalg::{span_dim, RankEngine, Q, QQ};
use hgc_core::operators::filtration_pages;
use hgc_core::operators::verify::bh2_dim;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub type Outcome = Result<String, String>;

pub const PARITIES: [(i32, i32); 4] = [(2, 2), (3, 3), (1, 2), (2, 3)];

/// Coefficient systems exercised by the functoriality squares.
pub const SYSTEMS: [&str; 16] = [
    "K",
    "H1",
    "Det",
    "C",
    "Sym2(H1)",
    "Sym3(H1)",
    "Det*Sym2(H1)",
    "Sym2(C)",
    "H1*C",
    "CH<even,2>",
    "CH<odd,2>",
    "CH<odd,3>",
    "CH<-3,2>",
    "B2",
    "B3",
    "L1B2",
];

fn systems() -> Result<Vec<System>, String> {
    let mut out: Vec<System> = SYSTEMS
        .iter()
        .map(|s| parse_system(s).map_err(|e| format!("{s}: {e}")))
        .collect::<Result<_, _>>()?;
    for d in [-3, -2] {
        for part in [Summand::I, Summand::II] {
            out.push(SymSplit::system(d, 2, part));
        }
    }
    Ok(out)
}

/// `d² = 0` on every hairy complex with `r ≤ max_r`, `h ≤ max_h` and on decorated complexes.
pub fn d_squared(max_r: usize, max_h: usize) -> Outcome {
    let mut count = 0;
    for (m, n) in PARITIES {
        for r in 0..=max_r {
            for h in 1..=max_h {
                let c = assemble(m, n, r, h).map_err(|e| e.to_string())?;
                c.complex
                    .check_d_squared()
                    .map_err(|e| format!("HGC ({m},{n}) r={r} h={h}: {e}"))?;
                count += 1;
            }
        }
    }
    for s in ["C", "Sym2(C)", "CH<odd,2>", "CH<even,2>", "Det*CH<-3,2>", "B2"] {
        for r in [2, 3] {
            let dc = build_decorated(&parse_system(s).map_err(|e| e.to_string())?, r).map_err(|e| e.to_string())?;
            dc.gc.check_d_squared().map_err(|e| format!("GC^{r}_{s}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} complexes"))
}

/// A uniformly random relabeling of a hairy graph, with the isomorphism onto the result.
pub fn random_relabel(g: &HairyGraph, rng: &mut impl Rng) -> (HairyGraph, Relabel) {
    let mut vmap: Vec<usize> = (0..g.v).collect();
    let mut emap: Vec<usize> = (0..g.edges.len()).collect();
    let mut hmap: Vec<usize> = (0..g.hairs.len()).collect();
    vmap.shuffle(rng);
    emap.shuffle(rng);
    hmap.shuffle(rng);
    let eflip: Vec<bool> = (0..g.edges.len()).map(|_| rng.gen()).collect();
    let mut edges = vec![(0, 0); g.edges.len()];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let (x, y) = (vmap[a], vmap[b]);
        edges[emap[i]] = if eflip[i] { (y, x) } else { (x, y) };
    }
    let mut hairs = vec![0; g.hairs.len()];
    for (j, &a) in g.hairs.iter().enumerate() {
        hairs[hmap[j]] = vmap[a];
    }
    (
        HairyGraph::new(g.v, edges, hairs),
        Relabel {
            vmap,
            emap,
            eflip,
            hmap,
        },
    )
}

/// Canonical forms are invariant under relabeling, and signs change by the relabeling's sign.
pub fn relabeling_invariance(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<HairyGraph> = Vec::new();
    for (r, h) in [(1, 3), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        for level in enumerate_all(r, h).iter() {
            pool.extend(level.iter().map(|c| c.graph.clone()));
        }
    }
    for t in 0..trials {
        let g = pool.choose(&mut rng).expect("nonempty pool");
        let (m, n) = PARITIES[t % 4];
        let parity = Parity::of(m, n);
        let (g2, sigma) = random_relabel(g, &mut rng);
        let a = canonicalize(g, parity).map_err(|e| e.to_string())?;
        let b = canonicalize(&g2, parity).map_err(|e| e.to_string())?;
        if a.canonical != b.canonical {
            return Err(format!("{g} and its relabeling {g2} canonicalize differently"));
        }
        if !a.canonical.is_zero && b.sign != a.sign * sigma.sign(parity) {
            return Err(format!("sign of {g2} is {} but {g} has {} and the relabeling {}", b.sign, a.sign, sigma.sign(parity)));
        }
    }
    Ok(format!("{trials} relabelings of {} graphs", pool.len()))
}

/// The natural isomorphism `(g/e)/f → (g/f)/e` for two non-parallel non-loop edges.
fn contraction_square(g: &CoreGraph, e: usize, f: usize) -> Option<[(CoreGraph, usize, CoreGraph); 2]> {
    let ce = contract(g, e).ok()?;
    let cf = contract(g, f).ok()?;
    let fe = ce.emap[f]?;
    let ef = cf.emap[e]?;
    let (a, b) = ce.graph.edges[fe];
    let (c, d) = cf.graph.edges[ef];
    if a == b || c == d {
        return None;
    }
    Some([(g.clone(), e, ce.graph), (g.clone(), f, cf.graph)])
}

fn check_contraction_squares(sys: &dyn LocalSystem, g: &CoreGraph) -> Result<usize, String> {
    let mut count = 0;
    for e in 0..g.edges.len() {
        for f in e + 1..g.edges.len() {
            if contraction_square(g, e, f).is_none() {
                continue;
            }
            let ce = contract(g, e).unwrap();
            let cf = contract(g, f).unwrap();
            let fe = ce.emap[f].unwrap();
            let ef = cf.emap[e].unwrap();
            let cef = contract(&ce.graph, fe).unwrap();
            let cfe = contract(&cf.graph, ef).unwrap();
            let mut vmap = vec![0; cef.graph.v];
            for x in 0..g.v {
                vmap[cef.vmap[ce.vmap[x]]] = cfe.vmap[cf.vmap[x]];
            }
            let k = cef.graph.edges.len();
            let mut emap = vec![0; k];
            for i in 0..g.edges.len() {
                if let Some(j) = ce.emap[i].and_then(|j| cef.emap[j]) {
                    emap[j] = cf.emap[i].and_then(|j| cfe.emap[j]).expect("same surviving edges");
                }
            }
            let psi = Relabel {
                vmap,
                emap,
                eflip: vec![false; k],
                hmap: Vec::new(),
            };
            if !psi.is_isomorphism(&cef.graph, &cfe.graph) {
                return Err(format!("contraction square on {g} does not close"));
            }
            let err = |x: hgc_core::Error| x.to_string();
            let left = sys
                .on_iso(&cef.graph, &psi, &cfe.graph)
                .map_err(err)?
                .mul(&sys.on_contract(&ce.graph, fe).map_err(err)?, &QQ)
                .mul(&sys.on_contract(g, e).map_err(err)?, &QQ);
            let right = sys
                .on_contract(&cf.graph, ef)
                .map_err(err)?
                .mul(&sys.on_contract(g, f).map_err(err)?, &QQ);
            if left != right {
                return Err(format!("{}: contractions of edges {e} and {f} of {g} do not commute", sys.name()));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Functoriality squares for every system on every core graph with at most four vertices.
pub fn functoriality(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<CoreGraph> = [2, 3].iter().flat_map(|&r| core_graphs(r)).filter(|g| g.v <= 4).collect();
    let mut squares = 0;
    for sys in systems()? {
        for g in &graphs {
            let cf = canonical_form(g);
            let mut isos: Vec<(Relabel, CoreGraph)> =
                full_automorphisms(g, &cf.vertex_automorphisms).into_iter().map(|a| (a, g.clone())).collect();
            for _ in 0..2 {
                let mut vmap: Vec<usize> = (0..g.v).collect();
                let mut emap: Vec<usize> = (0..g.edges.len()).collect();
                vmap.shuffle(&mut rng);
                emap.shuffle(&mut rng);
                let eflip: Vec<bool> = (0..g.edges.len()).map(|_| rng.gen()).collect();
                let (t, rel) = relabel(g, &vmap, &emap, &eflip);
                isos.push((rel, t));
            }
            squares += isos.len();
            hgc_core::coeff::check_functoriality(sys.as_ref(), g, &isos).map_err(|e| e.to_string())?;
            squares += check_contraction_squares(sys.as_ref(), g)?;
        }
    }
    Ok(format!("{} systems, {} graphs, {squares} squares", systems()?.len(), graphs.len()))
}

/// Per-degree homology of a finite-dimensional dg space.
pub fn dg_homology(deg: &[i32], d: &QMat) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let degrees: BTreeSet<i32> = deg.iter().copied().collect();
    let idx = |k: i32| -> Vec<usize> { (0..deg.len()).filter(|&i| deg[i] == k).collect() };
    let block_rank = |k: i32| -> usize {
        let (src, tgt) = (idx(k), idx(k + 1));
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        QMat::from_fn(tgt.len(), src.len(), &QQ, |r, c| d.get(tgt[r], src[c]).clone()).rank(&QQ)
    };
    for k in degrees {
        let h = idx(k).len() - block_rank(k) - block_rank(k - 1);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

fn theta() -> CoreGraph {
    HairyGraph::new(2, vec![(0, 1); 3], vec![])
}

/// `F(c_e): CH^θ → CH^{W_2}` is a chain map inducing an isomorphism on homology.
pub fn hp_contract_quasi_iso(max_h: usize) -> Outcome {
    let g = theta();
    let mut count = 0;
    for d in [-3, -2, 0, 1] {
        for h in 1..=max_h {
            let hp = HpComplex::new(d, h);
            for e in 0..3 {
                let err = |x: hgc_core::Error| x.to_string();
                let rose = contract(&g, e).map_err(err)?.graph;
                let f = hp.on_contract(&g, e).map_err(err)?;
                let (ds, dt) = (hp.differential(&g).map_err(err)?, hp.differential(&rose).map_err(err)?);
                if dt.mul(&f, &QQ) != f.mul(&ds, &QQ) {
                    return Err(format!("CH<{d},{h}> contraction of edge {e} is not a chain map"));
                }
                let cycles = ds.kernel(&QQ);
                let boundaries: Vec<Vec<Q>> = (0..dt.cols).map(|c| dt.column(c)).collect();
                let images: Vec<Vec<Q>> = cycles.iter().map(|z| f.apply(z, &QQ)).collect();
                let n = dt.rows;
                let induced = span_dim(n, &[images, boundaries.clone()].concat(), &QQ) - span_dim(n, &boundaries, &QQ);
                let hs: usize = dg_homology(&hp.degrees(&g).map_err(err)?, &ds).values().sum();
                let ht: usize = dg_homology(&hp.degrees(&rose).map_err(err)?, &dt).values().sum();
                if !(induced == hs && hs == ht) {
                    return Err(format!("CH<{d},{h}> edge {e}: rank {induced}, H(theta) {hs}, H(rose) {ht}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} contractions"))
}

/// For even generator degree, `CH^{Γ,h}` and `S^h(C_•[−d−1])` agree degreewise, on chains and
/// on homology.
pub fn hp_even_is_sym_chains(max_h: usize) -> Outcome {
    let graphs: Vec<CoreGraph> = [2, 3].iter().flat_map(|&r| core_graphs(r)).filter(|g| g.v <= 4).collect();
    let mut count = 0;
    for d in [-2, 0, 2] {
        for h in 1..=max_h {
            let hp = HpComplex::new(d, h);
            let sym = SymSplit::ambient(d, h);
            for g in &graphs {
                let err = |x: hgc_core::Error| x.to_string();
                let (da, db) = (hp.degrees(g).map_err(err)?, sym.degrees(g).map_err(err)?);
                let tally = |v: &[i32]| v.iter().fold(BTreeMap::new(), |mut m, k| {
                    *m.entry(*k).or_insert(0usize) += 1;
                    m
                });
                if tally(&da) != tally(&db) {
                    return Err(format!("CH<{d},{h}> and S^{h}(C) differ in size on {g}"));
                }
                let ha = dg_homology(&da, &hp.differential(g).map_err(err)?);
                let hb = dg_homology(&db, &sym.differential(g).map_err(err)?);
                if ha != hb {
                    return Err(format!("CH<{d},{h}> and S^{h}(C) differ in homology on {g}: {ha:?} vs {hb:?}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} graphs"))
}

/// De Rham kernels against the closed form at `r = 2` and the hp homology of the rose at `r = 3`.
pub fn de_rham_kernels(max_h2: usize, max_h3: usize) -> Outcome {
    for h in 1..=max_h2 {
        let k = DeRham::new(2, h).kernel_dim();
        if k != bh2_dim(h) {
            return Err(format!("r=2 h={h}: de Rham kernel {k}, closed form {}", bh2_dim(h)));
        }
    }
    let rose = HairyGraph::new(1, vec![(0, 0); 3], vec![]);
    for h in 1..=max_h3 {
        let k = DeRham::new(3, h).kernel_dim();
        let b = bh(h).dim(&rose).map_err(|e| e.to_string())?;
        if k != b {
            return Err(format!("r=3 h={h}: de Rham kernel {k}, hp homology on the rose {b}"));
        }
    }
    Ok(format!("r=2 h<={max_h2}, r=3 h<={max_h3}"))
}

fn euler(d: &BTreeMap<i32, usize>) -> i64 {
    d.iter().map(|(k, v)| if k.rem_euclid(2) == 0 { *v as i64 } else { -(*v as i64) }).sum()
}

/// Chains and homology have equal Euler characteristic on hairy complexes, decorated complexes
/// and the first page of the defect filtration.
pub fn euler_identities(max_r: usize, max_h: usize) -> Outcome {
    let engine = RankEngine::default();
    let mut count = 0;
    for (m, n) in PARITIES {
        for r in 0..=max_r {
            for h in 1..=max_h {
                let c = assemble(m, n, r, h).map_err(|e| e.to_string())?;
                let hom = engine.homology_dims(&c.complex).map_err(|e| e.to_string())?;
                if euler(&hom) != c.complex.euler_characteristic() {
                    return Err(format!("HGC ({m},{n}) r={r} h={h}: Euler characteristic mismatch"));
                }
                if r >= 2 && !Parity::of(m, n).even_codim() {
                    let page = filtration_pages(&c, &engine).map_err(|e| e.to_string())?;
                    if page.euler_characteristic() != c.complex.euler_characteristic() {
                        return Err(format!("E_1 of ({m},{n}) r={r} h={h}: Euler characteristic mismatch"));
                    }
                }
                count += 1;
            }
        }
    }
    for s in ["Det*Sym2(H1)", "Sym6(H1)", "CH<odd,2>", "Det*CH<-3,2>"] {
        let dc = build_decorated(&parse_system(s).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
        let hom = dc.homology(&engine).map_err(|e| e.to_string())?;
        if euler(&hom) != dc.gc.euler_characteristic() {
            return Err(format!("GC^2_{s}: Euler characteristic mismatch"));
        }
        count += 1;
    }
    Ok(format!("{count} complexes"))
}

/// Graph classes by brute force: all multigraphs on `v` labeled vertices with hairs, reduced
/// modulo vertex permutations.
pub fn brute_force_classes(r: usize, h: usize, v: usize) -> usize {
    if v == 0 {
        return usize::from(r == 0 && h == 2);
    }
    let e = r + v - 1;
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
    let mut seen: BTreeSet<(Vec<(usize, usize)>, Vec<usize>)> = BTreeSet::new();
    let perms = permutations(v);
    for edges in multisets(pairs.len(), e) {
        let edges: Vec<(usize, usize)> = edges.iter().map(|&i| pairs[i]).collect();
        for hairs in multisets(v, h) {
            let g = HairyGraph::new(v, edges.clone(), hairs);
            if g.valences().iter().any(|&x| x < 3) || !g.is_connected() {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let mut es: Vec<(usize, usize)> = g
                        .edges
                        .iter()
                        .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                        .collect();
                    es.sort();
                    let mut hs: Vec<usize> = g.hairs.iter().map(|&a| p[a]).collect();
                    hs.sort();
                    (es, hs)
                })
                .min()
                .unwrap();
            seen.insert(key);
        }
    }
    seen.len()
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Enumerated class counts against brute force, per vertex count.
pub fn enumeration_oracle(cases: &[(usize, usize)]) -> Outcome {
    let mut total = 0;
    for &(r, h) in cases {
        let levels = enumerate_all(r, h);
        for v in 0..=max_vertices(r, h) {
            let got = levels.get(v).map_or(0, |l| l.len());
            let want = brute_force_classes(r, h, v);
            if got != want {
                return Err(format!("r={r} h={h} v={v}: enumerated {got}, brute force {want}"));
            }
            total += got;
        }
    }
    Ok(format!("{total} classes"))
}
