mod common;

use common::*;
use opoly::checker::{
    self, check_direct, check_remark, check_slopes, check_walsh, corollary_excess,
    count_deficiency, count_moments, SpectralSums,
};
use opoly::geometry::{hyperoval_points, is_hyperoval};
use opoly::spectrum::{full_spectrum, walsh_at};
use opoly::{Field, VecFunc};
use proptest::prelude::*;

fn arb_func(n: u32) -> impl Strategy<Value = VecFunc> {
    let f = field(n);
    proptest::collection::vec(0u32..1 << n, 1 << n)
        .prop_map(move |t| VecFunc::from_table(f, t).unwrap())
}

/// Random tables that are permutations more often than uniform sampling
/// would give.
fn arb_perm(n: u32) -> impl Strategy<Value = VecFunc> {
    let f = field(n);
    Just((0..1u32 << n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |t| VecFunc::from_table(f, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn excess_is_scaled_deficiency(func in (2u32..=5).prop_flat_map(arb_func)) {
        let n = func.n();
        let excess = checker::walsh_excess(&func);
        prop_assert!(excess >= 0);
        prop_assert_eq!(excess, (1i128 << (2 * n)) * count_deficiency(&func));
    }

    #[test]
    fn moments_match_counts(func in (2u32..=4).prop_flat_map(arb_func)) {
        let sums = SpectralSums::compute(&func);
        let counts = count_moments(&func);
        for j in 1..=3 {
            prop_assert_eq!(sums.moment(j).unwrap(), naive_count_moment(&func, j));
            prop_assert_eq!(counts.get(j).unwrap(), naive_count_moment(&func, j));
        }
    }

    #[test]
    fn fast_triple_sum_matches_double_loop(func in (2u32..=4).prop_flat_map(arb_func)) {
        prop_assert_eq!(checker::triple_sum(&func), naive_triple_sum(&func));
    }

    #[test]
    fn square_sums_match_definition(func in (2u32..=4).prop_flat_map(arb_func)) {
        let sums = SpectralSums::compute(&func);
        for b in func.field().elements() {
            prop_assert_eq!(sums.square_sum(b), naive_square_sum(&func, b));
            prop_assert_eq!(checker::square_sum(&func, b), sums.square_sum(b));
        }
    }

    #[test]
    fn parseval_links_square_total_to_balance(func in (2u32..=5).prop_flat_map(arb_func)) {
        let n = func.n();
        let sums = SpectralSums::compute(&func);
        let expected = ((1i128 << n) - 1) * (1i128 << (2 * n + 1)) - sums.zero_row_energy();
        prop_assert_eq!(sums.square_sum_total(), expected);
    }

    #[test]
    fn corollary_matches_excess(func in arb_func(3)) {
        let excess = checker::walsh_excess(&func);
        prop_assert_eq!(corollary_excess(&func), excess);
        prop_assert_eq!(checker::corollary_excess_oracle(&func).unwrap(), excess);
    }

    #[test]
    fn verdicts_agree_on_permutations(func in (2u32..=4).prop_flat_map(arb_perm)) {
        let direct = check_direct(&func);
        prop_assert_eq!(check_slopes(&func), direct);
        prop_assert_eq!(check_walsh(&func), direct);
        prop_assert_eq!(check_remark(&func), direct);
        prop_assert_eq!(is_hyperoval(func.field(), &hyperoval_points(&func)).unwrap(), direct);
    }

    #[test]
    fn blocked_streaming_is_exact(func in (2u32..=5).prop_flat_map(arb_func), budget in 1usize..200) {
        prop_assert_eq!(SpectralSums::with_budget(&func, budget), SpectralSums::compute(&func));
    }
}

#[test]
fn all_routes_agree_on_every_map_of_gf4() {
    // n = 2: enumerate all 256 functions
    let f = field(2);
    let mut hits = 0;
    for code in 0u32..256 {
        let table = (0..4).map(|i| code >> (2 * i) & 3).collect();
        let func = VecFunc::from_table(f, table).unwrap();
        let report = checker::full_report(&func, true).unwrap();
        hits += report.is_o_polynomial() as u32;
    }
    // independent enumeration: 12 of the 256 maps GF(4) -> GF(4)
    assert_eq!(hits, 12);
    assert!(checker::full_report(&mono(2, 2), true)
        .unwrap()
        .is_o_polynomial());
}

#[test]
fn full_spectrum_matches_definition_for_monomials() {
    for n in 2..=5 {
        for d in 0..(1u64 << n) {
            let func = mono(n, d);
            let s = full_spectrum(&func).unwrap();
            for u in func.field().elements() {
                for v in func.field().elements() {
                    assert_eq!(s.get(u, v), walsh_at(&func, u, v));
                }
            }
        }
    }
}

#[test]
fn basis_independence_of_all_sums() {
    let a = Field::new(4, 0x13).unwrap();
    let b = Field::new(4, 0x19).unwrap();
    for d in 0..16 {
        let fa = VecFunc::from_monomial(a, d).unwrap();
        let fb = VecFunc::from_monomial(b, d).unwrap();
        let (ra, rb) = (
            checker::full_report(&fa, true).unwrap(),
            checker::full_report(&fb, true).unwrap(),
        );
        assert_eq!(
            (
                ra.verdict_direct,
                ra.count_deficiency,
                ra.walsh_excess,
                ra.triple_sum,
                ra.square_sum_total,
                ra.moments
            ),
            (
                rb.verdict_direct,
                rb.count_deficiency,
                rb.walsh_excess,
                rb.triple_sum,
                rb.square_sum_total,
                rb.moments
            ),
            "x^{d}"
        );
    }
}
