use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use wmtrop_core::rational::{from_bigint, int};
use wmtrop_core::ratlin::Matrix;
use wmtrop_core::tropbundle::{
    ample_check, chi_valuation, construct_f, extends_to, form_matrix, minimal_level, tensor_power, verify_section,
    BundleData, TropicalSection,
};
use wmtrop_core::troplattice::{max_dividing_width, CellWidth, TropicalLattice};
use wmtrop_testkit as kit;

fn quad(s: &Matrix, a: &[BigInt], b: &[BigInt]) -> wmtrop_core::Rational {
    let bv: Vec<_> = b.iter().map(|x| from_bigint(x.clone())).collect();
    let sb = s.mul_vec(&bv);
    a.iter().zip(&sb).map(|(x, y)| from_bigint(x.clone()) * y).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cocycle_identity(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=3);
        let b = kit::random_bundle(&mut rng, r, 3, &[2]);
        let a1 = kit::random_int_vector(&mut rng, r, 6);
        let a2 = kit::random_int_vector(&mut rng, r, 6);
        let sum: Vec<BigInt> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        let s = form_matrix(&b);
        prop_assert_eq!(
            chi_valuation(&b, &sum),
            chi_valuation(&b, &a1) + chi_valuation(&b, &a2) + quad(&s, &a1, &a2)
        );
        prop_assert_eq!(chi_valuation(&b, &a1), kit::chi_by_steps(&b, &a1));
    }

    #[test]
    fn formal_roots(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=3);
        let b = kit::random_bundle(&mut rng, r, p, &[]);
        let alpha = max_dividing_width(b.lattice()).divide_by(rng.gen_range(1..=3));
        if extends_to(&tensor_power(&b, p as u32), &alpha).unwrap() {
            prop_assert!(extends_to(&b, &alpha.divide_by(p)).unwrap());
        }
    }

    #[test]
    fn s_integrality_and_refinement(seed in any::<u64>(), m in 1u64..6) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=3);
        let b = kit::random_bundle(&mut rng, r, 3, &[2, 5]);
        let alpha = max_dividing_width(b.lattice());
        for x in form_matrix(&b).entries() {
            prop_assert!((x / alpha.value()).is_integer());
        }
        if extends_to(&b, &alpha).unwrap() {
            prop_assert!(extends_to(&b, &alpha.divide_by(m)).unwrap());
        }
    }

    #[test]
    fn ampleness_stable_under_powers(seed in any::<u64>(), n in 1u32..6) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=3);
        let b = kit::random_bundle(&mut rng, r, 2, &[]);
        prop_assert_eq!(ample_check(&tensor_power(&b, n)), ample_check(&b));
    }

    #[test]
    fn constructed_sections_verify(k in 1i64..6, d in -3i64..4, num in -12i64..13, p in prop::sample::select(vec![2u64, 3]), neg in any::<bool>()) {
        let lambda = if neg { -k } else { k };
        let b = BundleData::rank_one(int(lambda), d, wmtrop_core::rational::rat(num, p as i64)).unwrap();
        let alpha = CellWidth::new(int(1)).unwrap();
        let n = minimal_level(&b, &alpha, p).unwrap();
        let f = construct_f(&b, &alpha.refine(p, n)).unwrap();
        let report = verify_section(&b, &f).unwrap();
        prop_assert!(report.passed(), "{:?}", report.diagnostics);
        prop_assert!(kit::section_oracle(&b, &f));
        prop_assert!(n == 0 || !extends_to(&b, &alpha.refine(p, n - 1)).unwrap());
    }

    #[test]
    fn verify_agrees_with_sampling_oracle(k in 1i64..5, d in -2i64..3, v in -6i64..7, seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let b = BundleData::rank_one(int(k), d, int(v)).unwrap();
        let mut slopes: Vec<_> = (0..k)
            .map(|_| if rng.gen_bool(0.1) { wmtrop_core::rational::rat(1, 2) } else { int(rng.gen_range(-3..=3)) })
            .collect();
        if rng.gen_bool(0.5) {
            // Close the period so roughly half the cases are valid.
            let rest: wmtrop_core::Rational = slopes[1..].iter().sum();
            slopes[0] = int(v) - rest;
        }
        let f = TropicalSection {
            alpha: CellWidth::new(int(1)).unwrap(),
            lambda: int(k),
            slopes,
            base_value: int(rng.gen_range(-2..=2)),
            slope_increment: int(if rng.gen_bool(0.9) { d } else { d + 1 }),
            value_increment: int(v),
        };
        prop_assert_eq!(verify_section(&b, &f).unwrap().passed(), kit::section_oracle(&b, &f));
    }
}

#[test]
fn rank_two_chi_matches_steps() {
    let lat = TropicalLattice::new(Matrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
    let b = BundleData::new(lat, Matrix::from_i64(&[&[1, 0], &[0, 1]]), vec![int(1), int(2)]).unwrap();
    let a = vec![BigInt::from(3), BigInt::from(-2)];
    assert_eq!(chi_valuation(&b, &a), kit::chi_by_steps(&b, &a));
}
