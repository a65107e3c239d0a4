//! Property-based invariants for the series engine, the encodings and the
//! bijections.

use proptest::prelude::*;
use stirlmark::generate::{
    gen_cycle_stirling, gen_matchings, gen_stirling_prefixed, odd_double_factorial,
};
use stirlmark::maps;
use stirlmark::objects::{
    blocks, red, rl_blocks, BicoloredTree, CycleStirlingPerm, MarkedPerm, Matching, Perm,
    StirlingPerm,
};
use stirlmark::poly::{int, MPoly, Var};
use stirlmark::series::TSeries;
use stirlmark::stats;

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Perm> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|w| Perm::new(w).unwrap())
    })
}

fn marked_strategy(max_n: usize, r: u32) -> impl Strategy<Value = MarkedPerm> {
    (perm_strategy(max_n), prop::collection::vec(0..r, max_n)).prop_map(move |(p, raw)| {
        let word = p.word().to_vec();
        let mins = stirlmark::objects::lrmin_positions(&word);
        let mut colors: Vec<u32> = raw.into_iter().take(word.len()).collect();
        colors.resize(word.len(), 0);
        for i in mins {
            colors[i] = 0;
        }
        MarkedPerm::new(word, colors, r).unwrap()
    })
}

/// A Stirling permutation from a random insertion-choice vector, built
/// through the prefix hook (a full prefix pins down a single object).
fn stirling_strategy(max_n: usize) -> impl Strategy<Value = StirlingPerm> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<prop::sample::Index>(), n - 1).prop_map(move |idx| {
            let choices: Vec<usize> = idx
                .iter()
                .enumerate()
                .map(|(i, ix)| ix.index(2 * i + 3))
                .collect();
            gen_stirling_prefixed(n, &choices)
                .next()
                .expect("full prefix yields one object")
        })
    })
}

fn matching_strategy(max_n: usize) -> impl Strategy<Value = Matching> {
    (1..=max_n).prop_flat_map(|n| {
        let total = odd_double_factorial(n) as usize;
        (0..total).prop_map(move |i| gen_matchings(n).nth(i).unwrap())
    })
}

fn cycle_stirling_strategy(max_n: usize) -> impl Strategy<Value = CycleStirlingPerm> {
    (1..=max_n).prop_flat_map(|n| {
        let total = odd_double_factorial(n) as usize;
        (0..total).prop_map(move |i| gen_cycle_stirling(n).nth(i).unwrap())
    })
}

fn tree_strategy(max_n: usize) -> impl Strategy<Value = BicoloredTree> {
    marked_strategy(max_n, 2).prop_map(|m| maps::tree_of(&m))
}

/// Sparse polynomial in x and y with small integer coefficients.
fn poly_strategy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u16..3), (0u16..3), (-4i64..=4)), 0..4).prop_map(|terms| {
        let mut p = MPoly::zero();
        for (ex, ey, c) in terms {
            let mono = stirlmark::poly::Mono([ex, ey, 0, 0, 0, 0]);
            p.add_term(mono, int(c));
        }
        p
    })
}

/// Truncated series with zero constant term.
fn series_strategy(order: usize) -> impl Strategy<Value = TSeries> {
    prop::collection::vec(poly_strategy(), order).prop_map(move |mut coeffs| {
        coeffs.insert(0, MPoly::zero());
        TSeries::from_ordinary(coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ----- series engine -----

    #[test]
    fn exp_then_log_is_identity(f in series_strategy(6)) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f);
    }

    #[test]
    fn log_then_exp_is_identity(f in series_strategy(6)) {
        let g = TSeries::one(6).add(&f); // constant term 1
        prop_assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn sqrt_squares_back(f in series_strategy(6)) {
        let g = TSeries::one(6).add(&f);
        let root = g.sqrt().unwrap();
        prop_assert_eq!(root.mul(&root), g.clone());
        prop_assert_eq!(g.sqrt_by_recurrence().unwrap(), root);
    }

    #[test]
    fn inverse_multiplies_to_one(f in series_strategy(6)) {
        let g = TSeries::one(6).add(&f);
        prop_assert_eq!(g.mul(&g.inverse().unwrap()), TSeries::one(6));
    }

    #[test]
    fn fractional_power_squares_back(f in series_strategy(5)) {
        let g = TSeries::one(5).add(&f);
        let sq = g.mul(&g);
        let root = sq.pow_frac(&MPoly::one(), &MPoly::from_int(2)).unwrap();
        prop_assert_eq!(root, g);
    }

    #[test]
    fn scale_t_composes(f in series_strategy(5), a in 1i64..4, b in 1i64..4) {
        let lhs = f.scale_t(&MPoly::from_int(a)).scale_t(&MPoly::from_int(b));
        let rhs = f.scale_t(&MPoly::from_int(a * b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fractional_power_routes_agree(f in series_strategy(5)) {
        // (g^3)^(2/3) = g^2 through the exact-divisibility path
        let g = TSeries::one(5).add(&f);
        let cubed = g.pow(3);
        let back = cubed
            .pow_frac(&MPoly::from_int(2), &MPoly::from_int(3))
            .unwrap();
        prop_assert_eq!(back, g.pow(2));
    }

    #[test]
    fn polynomial_divisor_power_stays_exact(f in series_strategy(5)) {
        // scaling t by (1+y) makes every log coefficient divisible by it,
        // so the q/(1+y) power is defined; evaluating q at 1+y undoes it
        let one_plus_y = &MPoly::one() + &MPoly::var(Var::Y);
        let g = TSeries::one(5).add(&f).scale_t(&one_plus_y);
        let powered = g.pow_frac(&MPoly::var(Var::Q), &one_plus_y).unwrap();
        prop_assert_eq!(powered.substitute(Var::Q, &one_plus_y), g);
    }

    // ----- encodings -----

    #[test]
    fn perm_text_roundtrip(p in perm_strategy(9)) {
        prop_assert_eq!(Perm::decode_text(&p.encode_text()).unwrap(), p.clone());
        prop_assert_eq!(Perm::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn marked_text_roundtrip(m in marked_strategy(8, 3)) {
        prop_assert_eq!(MarkedPerm::decode_text(&m.encode_text()).unwrap(), m.clone());
        prop_assert_eq!(MarkedPerm::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn stirling_text_roundtrip(s in stirling_strategy(7)) {
        prop_assert_eq!(StirlingPerm::decode_text(&s.encode_text()).unwrap(), s.clone());
        prop_assert_eq!(StirlingPerm::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn matching_text_roundtrip(m in matching_strategy(5)) {
        prop_assert_eq!(Matching::decode_text(&m.encode_text()).unwrap(), m.clone());
        prop_assert_eq!(Matching::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn cycle_stirling_text_roundtrip(c in cycle_stirling_strategy(5)) {
        prop_assert_eq!(CycleStirlingPerm::decode_text(&c.encode_text()).unwrap(), c.clone());
        prop_assert_eq!(CycleStirlingPerm::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn tree_text_roundtrip(t in tree_strategy(7)) {
        prop_assert_eq!(BicoloredTree::decode_text(&t.encode_text()).unwrap(), t.clone());
        prop_assert_eq!(BicoloredTree::from_json(&t.to_json()).unwrap(), t);
    }

    // ----- decompositions and statistics -----

    #[test]
    fn red_is_idempotent(word in prop::collection::vec(1u32..9, 0..12)) {
        prop_assert_eq!(red(&red(&word)), red(&word));
    }

    #[test]
    fn red_preserves_stirling(s in stirling_strategy(6), shift in 0u32..5) {
        // relabel by an increasing injection, reduce, recover the original
        let relabeled: Vec<u32> = s.word().iter().map(|&v| 2 * v + shift).collect();
        prop_assert_eq!(red(&relabeled), s.word().to_vec());
    }

    #[test]
    fn block_counts_match_minima(p in perm_strategy(9)) {
        let w = p.word();
        prop_assert_eq!(blocks(w).len(), stats::lrmin_count(w));
        prop_assert_eq!(rl_blocks(w).len(), stats::rlmin_count(w));
        prop_assert_eq!(blocks(w).concat(), w.to_vec());
        prop_assert_eq!(rl_blocks(w).concat(), w.to_vec());
        // each block contains exactly one left-to-right minimum of the word
        let mins = stirlmark::objects::lrmin_positions(w);
        let min_values: Vec<u32> = mins.iter().map(|&i| w[i]).collect();
        for b in blocks(w) {
            let inside = b.iter().filter(|v| min_values.contains(v)).count();
            prop_assert_eq!(inside, 1);
        }
    }

    #[test]
    fn asc_plus_des_is_n_minus_one(p in perm_strategy(9)) {
        let w = p.word();
        prop_assert_eq!(stats::asc_count(w) + stats::des_count(w), w.len() - 1);
    }

    #[test]
    fn even_plus_odd_is_n(s in stirling_strategy(7)) {
        let w = s.word();
        prop_assert_eq!(stats::even_count(w) + stats::odd_count(w), s.n());
    }

    #[test]
    fn minimum_is_in_both_minima_sets(p in perm_strategy(9)) {
        use stirlmark::stats::StatName;
        let rep = stats::perm_stats(&MarkedPerm::from_perm(&p, 1));
        prop_assert!(rep.set(StatName::Lrmin).unwrap().contains(&1));
        prop_assert!(rep.set(StatName::Rlmin).unwrap().contains(&1));
    }

    // ----- maps -----

    #[test]
    fn psi_is_an_involution_with_the_statistic_law(p in perm_strategy(9)) {
        let q = maps::psi(&p);
        prop_assert_eq!(maps::psi(&q), p.clone());
        prop_assert_eq!(
            stats::asc_count(p.word()) + 1,
            stats::desrlmin_count(q.word())
        );
    }

    #[test]
    fn phi_roundtrips(s in stirling_strategy(7)) {
        let m = maps::phi(&s);
        m.validate().unwrap();
        prop_assert_eq!(maps::phi_inv(&m).unwrap(), s);
    }

    #[test]
    fn tree_roundtrips(m in marked_strategy(8, 2)) {
        let t = maps::tree_of(&m);
        t.validate().unwrap();
        prop_assert_eq!(maps::perm_of_tree(&t).unwrap(), m);
    }

    #[test]
    fn iota_is_a_sign_reversing_involution(m in marked_strategy(8, 2)) {
        match maps::iota(&m) {
            Ok(other) => {
                prop_assert_eq!(maps::iota(&other).unwrap(), m.clone());
                prop_assert_eq!(
                    stats::asc_count(other.word()),
                    stats::asc_count(m.word())
                );
                let a = stats::mark_count(m.colors());
                let b = stats::mark_count(other.colors());
                prop_assert_eq!(a.abs_diff(b), 1);
            }
            Err(maps::MapError::FixedClass) => {
                // only the decreasing permutation carries no move
                let n = m.n() as u32;
                let decreasing: Vec<u32> = (1..=n).rev().collect();
                prop_assert_eq!(m.word(), &decreasing[..]);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn validated_generation(s in stirling_strategy(7)) {
        s.validate().unwrap();
    }
}
