use latchain::constructors::random::{random_bounded_poset, random_poset, random_rank3};
use latchain::par::Exec;
use latchain::poly::{
    f_from_h, h_from_f, interlaces, is_real_rooted, is_unit_interval_rooted, rat,
    sturm_real_root_count, ExactPoly, RootRange,
};
use latchain::poset::{diamond_product, read_poset, write_poset, Poset};
use latchain::verify::{brute_force_oracle, rank3_formula};
use proptest::prelude::*;

/// `prod (1 + k t)` for the given positive integers.
fn from_unit_roots(ks: &[i64]) -> ExactPoly {
    ks.iter().fold(ExactPoly::one(), |acc, &k| {
        &acc * &ExactPoly::from_ints([1, k])
    })
}

fn small_poly() -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(-6i64..=6, 1..7).prop_map(ExactPoly::from_ints)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_of_linear_factors_lie_in_the_unit_interval(ks in prop::collection::vec(1i64..6, 1..6)) {
        let p = from_unit_roots(&ks);
        prop_assert!(is_unit_interval_rooted(&p).unwrap());
        let mut distinct = ks.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(sturm_real_root_count(&p, &RootRange::Whole).unwrap(), distinct.len());
    }

    #[test]
    fn derivative_interlaces(ks in prop::collection::vec(-5i64..=5, 2..6)) {
        // distinct integer roots so that f' separates them strictly
        let mut roots = ks.clone();
        roots.sort_unstable();
        roots.dedup();
        prop_assume!(roots.len() >= 2);
        let f = roots.iter().fold(ExactPoly::one(), |acc, &r| &acc * &ExactPoly::from_ints([-r, 1]));
        prop_assert!(interlaces(&f.derivative(), &f).unwrap());
        prop_assert!(!interlaces(&f, &f.derivative()).unwrap());
    }

    #[test]
    fn h_transform_round_trips(p in small_poly(), extra in 0usize..3) {
        let n = p.degree().unwrap_or(0) + extra;
        let h = h_from_f(&p, n).unwrap();
        prop_assert_eq!(f_from_h(&h, n).unwrap(), p);
    }

    #[test]
    fn diamond_is_commutative_and_associative(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(diamond_product(&f, &g), diamond_product(&g, &f));
        prop_assert_eq!(
            diamond_product(&diamond_product(&f, &g), &h),
            diamond_product(&f, &diamond_product(&g, &h))
        );
    }

    #[test]
    fn chain_dp_matches_brute_force(n in 0usize..13, density in 0.0f64..1.0, seed in any::<u64>()) {
        let p = random_poset(n, density, seed);
        let seq = p.chain_profile_with(Exec::Sequential);
        prop_assert_eq!(&seq, &p.chain_profile_with(Exec::Parallel));
        prop_assert_eq!(seq, brute_force_oracle(&p).unwrap());
    }

    #[test]
    fn chain_and_p_polynomials_agree(n in 2usize..9, seed in any::<u64>()) {
        let p = random_bounded_poset(n, seed).unwrap();
        let pp = p.p_polynomial().unwrap();
        prop_assert_eq!(p.chain_polynomial().shift(1), &ExactPoly::from_ints([1, 2, 1]) * &pp);
    }

    #[test]
    fn products_multiply_p_polynomials(a in 2usize..6, b in 2usize..6, s in any::<u64>(), t in any::<u64>()) {
        let (p, q) = (random_bounded_poset(a, s).unwrap(), random_bounded_poset(b, t).unwrap());
        let prod = Poset::direct_product(&p, &q);
        let want = diamond_product(&p.p_polynomial().unwrap(), &q.p_polynomial().unwrap());
        prop_assert_eq!(prod.p_polynomial().unwrap(), want);
    }

    #[test]
    fn rank3_lattices_are_real_rooted(seed in any::<u64>()) {
        let l = random_rank3(seed).unwrap();
        let c = l.poset().chain_polynomial();
        prop_assert!(is_real_rooted(&c).unwrap());
        prop_assert_eq!(rank3_formula(l.poset()).unwrap(), c.clone());
        // every chain polynomial of a bounded poset vanishes at -1 twice
        prop_assert_eq!(c.eval(&rat(-1)), rat(0));
        prop_assert_eq!(c.derivative().eval(&rat(-1)), rat(0));
    }

    #[test]
    fn poset_text_round_trips(n in 0usize..12, density in 0.0f64..1.0, seed in any::<u64>()) {
        let p = random_poset(n, density, seed);
        let back = read_poset(&write_poset(&p)).unwrap();
        prop_assert_eq!(back.cover_pairs(), p.cover_pairs());
    }
}
