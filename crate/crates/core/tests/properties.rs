//! Property suites: structural identities that hold without reference numbers.

mod common;

use common::*;
use hgc_core::graph::{canonicalize, enumerate_all, HairyGraph, Parity};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn check(o: Outcome) {
    match o {
        Ok(s) => println!("{s}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn d_squared_vanishes_everywhere() {
    check(d_squared(3, 3));
}

fn pool() -> &'static Vec<HairyGraph> {
    static POOL: OnceLock<Vec<HairyGraph>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (r, h) in [(0, 4), (1, 3), (2, 2), (2, 3), (3, 1), (3, 2)] {
            for level in enumerate_all(r, h).iter() {
                out.extend(level.iter().map(|c| c.graph.clone()));
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn canonical_forms_ignore_relabeling(index in 0usize..1_000_000, seed in any::<u64>(), p in 0usize..4) {
        let g = &pool()[index % pool().len()];
        let (m, n) = PARITIES[p];
        let parity = Parity::of(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g2, sigma) = random_relabel(g, &mut rng);
        let a = canonicalize(g, parity).unwrap();
        let b = canonicalize(&g2, parity).unwrap();
        prop_assert_eq!(&a.canonical, &b.canonical);
        if !a.canonical.is_zero {
            prop_assert_eq!(b.sign, a.sign * sigma.sign(parity));
        }
    }
}

#[test]
fn relabeling_sweep() {
    check(relabeling_invariance(10_000, 7));
}

#[test]
fn functoriality_squares_on_small_core_graphs() {
    check(functoriality(11));
}

#[test]
fn hp_contraction_is_a_quasi_isomorphism() {
    check(hp_contract_quasi_iso(2));
}

#[test]
fn hp_with_even_generator_is_symmetric_chains() {
    check(hp_even_is_sym_chains(3));
}

#[test]
fn de_rham_kernel_dimensions() {
    check(de_rham_kernels(6, 4));
}

#[test]
fn euler_characteristics_agree() {
    check(euler_identities(3, 3));
}

#[test]
fn enumeration_matches_brute_force() {
    check(enumeration_oracle(&[(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1)]));
}
