mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use etnc::criteria::{recognize_character_values, RecognitionConfig};
use etnc::cyclotomic::CycNum;
use etnc::groupring::{
    char_eval, exact_inverse_dft, ideal_power_membership, is_zp_unit, CyclicGroup, GroupRingElt,
};
use etnc::mwshape::{ranks_from_shape, shape_from_ranks, PermShape};
use etnc::pipeline::{run_all, RunConfig};
use etnc::problem::ProblemFile;
use etnc::synthetic::{synthesize, SyntheticSpec};
use etnc::transform::change_generator;

const PREC: usize = 160;

fn group_strategy() -> impl Strategy<Value = CyclicGroup> {
    prop_oneof![Just((3u64, 1u32)), Just((3, 2)), Just((5, 1)), Just((7, 1)), Just((5, 2))]
        .prop_map(|(p, n)| CyclicGroup::new(p, n).unwrap())
}

fn element_strategy() -> impl Strategy<Value = GroupRingElt> {
    group_strategy().prop_flat_map(|g| {
        prop::collection::vec(-6i64..=6, g.order() as usize).prop_map(move |c| GroupRingElt::from_ints(g, &c).unwrap())
    })
}

fn cyc_strategy(m: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0i64..m as i64, -5i64..=5), 1..6).prop_map(move |t| CycNum::from_int_terms(m, &t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonzero_cyclotomic_numbers_are_invertible(x in cyc_strategy(9)) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert_eq!(&x * &inv, CycNum::one(9));
    }

    #[test]
    fn galois_action_is_multiplicative(x in cyc_strategy(25), y in cyc_strategy(25), s in 1i64..25) {
        prop_assume!(s % 5 != 0);
        let lhs = (&x * &y).galois_apply(s).unwrap();
        let rhs = &x.galois_apply(s).unwrap() * &y.galois_apply(s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_is_multiplicative(x in cyc_strategy(7), y in cyc_strategy(7)) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn exact_dft_round_trips(x in element_strategy()) {
        let g = x.group();
        let values: Vec<CycNum> = g.characters().map(|psi| char_eval(&x, &psi).unwrap()).collect();
        prop_assert_eq!(exact_inverse_dft(g, &values).unwrap(), x);
    }

    #[test]
    fn characters_are_ring_homomorphisms(x in element_strategy(), k in 0i64..50) {
        let g = x.group();
        let y = GroupRingElt::sigma_pow(g, k);
        for psi in g.characters() {
            let lhs = char_eval(&(&x * &y), &psi).unwrap();
            let rhs = &char_eval(&x, &psi).unwrap() * &char_eval(&y, &psi).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn recognition_recovers_exact_values(x in element_strategy()) {
        let g = x.group();
        let exact: Vec<CycNum> = g.characters().map(|psi| char_eval(&x, &psi).unwrap()).collect();
        // psi_j(x) lies in Q(zeta_{p^t}); embed with zeta_{p^t} = exp(2 pi i / p^t)
        let numeric: Vec<_> = exact.iter().map(|v| v.embed(1, PREC).unwrap()).collect();
        let cfg = RecognitionConfig::new(30, BigInt::from(1_000_000), PREC);
        let rec = recognize_character_values(g, &numeric, &cfg).unwrap();
        for (a, b) in rec.values.iter().zip(&exact) {
            let m = num_integer::lcm(a.modulus(), b.modulus());
            prop_assert_eq!(a.lift(m).unwrap(), b.lift(m).unwrap());
        }
    }

    #[test]
    fn augmentation_filtration_is_multiplicative(x in element_strategy(), h in 0u32..3) {
        let g = x.group();
        let p = g.p();
        let s = GroupRingElt::sigma_power_minus_one(g, 0);
        let y = &x * &s.pow(h);
        prop_assert!(ideal_power_membership(&y, h, p).unwrap());
        if ideal_power_membership(&x, 1, p).unwrap() {
            prop_assert!(ideal_power_membership(&y, h + 1, p).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_hnf_oracle(x in element_strategy(), h in 1u32..4) {
        let ints: Vec<i64> = x.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect();
        prop_assert_eq!(ideal_power_membership(&x, h, x.group().p()).unwrap(), common::hnf_membership(&ints, h, x.group().p()));
    }

    #[test]
    fn units_are_closed_under_products(x in element_strategy(), y in element_strategy()) {
        prop_assume!(x.group() == y.group());
        let p = x.group().p();
        let both = is_zp_unit(&x, p).is_unit() && is_zp_unit(&y, p).is_unit();
        prop_assert_eq!(is_zp_unit(&(&x * &y), p).is_unit(), both);
    }

    #[test]
    fn unit_test_agrees_with_inverse_search(x in element_strategy()) {
        let p = x.group().p();
        prop_assert_eq!(is_zp_unit(&x, p).is_unit(), common::brute_force_unit(x.coeffs(), p));
    }

    #[test]
    fn shapes_round_trip(g in group_strategy(), m in prop::collection::vec(0u64..4, 3)) {
        let m: Vec<u64> = m.into_iter().chain(std::iter::repeat(0)).take(g.n() as usize + 1).collect();
        let shape = PermShape::new(g, m).unwrap();
        let ranks = ranks_from_shape(&shape);
        prop_assert_eq!(shape_from_ranks(g, &ranks).unwrap(), shape);
    }
}

#[test]
fn problem_files_round_trip_after_one_normalisation() {
    let file = synthesize(&SyntheticSpec::default()).unwrap();
    let once = ProblemFile::from_toml_str(&file.to_toml_string()).unwrap().to_toml_string();
    let twice = ProblemFile::from_toml_str(&once).unwrap().to_toml_string();
    assert_eq!(once, twice);
}

#[test]
fn reports_are_deterministic() {
    let file = synthesize(&SyntheticSpec::default()).unwrap();
    let a = run_all(&file, &RunConfig::default()).unwrap().to_json();
    let b = std::thread::spawn(move || run_all(&file, &RunConfig::default()).unwrap().to_json()).join().unwrap();
    assert_eq!(a, b);
}

#[test]
fn projective_synthetic_data_is_generator_invariant() {
    let spec = SyntheticSpec { shape: vec![0, 0, 1], ..SyntheticSpec::default() };
    let file = synthesize(&spec).unwrap();
    let base = run_all(&file, &RunConfig::default()).unwrap().verdicts();
    for a in [2, 4, 5, 7, 8] {
        let moved = change_generator(&file, a).unwrap();
        assert_eq!(run_all(&moved, &RunConfig::default()).unwrap().verdicts(), base, "sigma^{a}");
    }
}
