use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use wmtrop_core::rational::int;
use wmtrop_core::ratlin::{
    char_poly, factor_rational, kernel, subspace_intersect, subspace_sum, Matrix, RatPoly, Subspace,
};
use wmtrop_testkit as kit;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn echelon_basis_is_canonical(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let n = rng.gen_range(1..=8);
        let ku = rng.gen_range(0..=n);
        let u = kit::random_subspace(&mut rng, n, ku);
        // Any shuffled spanning set, padded with combinations, gives the same basis.
        let mut span = u.basis_vectors();
        for _ in 0..3 {
            if span.is_empty() { break; }
            let c = kit::small_rational(&mut rng, 3, 3);
            let a = span.choose(&mut rng).unwrap().clone();
            let b = span.choose(&mut rng).unwrap().clone();
            span.push(a.iter().zip(&b).map(|(x, y)| x + &c * y).collect());
        }
        span.shuffle(&mut rng);
        prop_assert_eq!(Subspace::span(&span, n).unwrap(), u);
    }

    #[test]
    fn dimension_formula(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let n = rng.gen_range(1..=8);
        let ku = rng.gen_range(0..=n);
        let u = kit::random_subspace(&mut rng, n, ku);
        let kv = rng.gen_range(0..=n);
        let v = kit::random_subspace(&mut rng, n, kv);
        let s = subspace_sum(&u, &v).unwrap();
        let i = subspace_intersect(&u, &v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
        prop_assert!(s.contains(&u).unwrap() && u.contains(&i).unwrap());
    }

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let mut m = kit::random_matrix(&mut rng, r, c, 4, 3);
        // Force some dependency now and then.
        if r > 1 && rng.gen_bool(0.5) {
            for j in 0..c {
                let x = &m[(0, j)] * int(2);
                m[(r - 1, j)] = x;
            }
        }
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), c);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn cayley_hamilton(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let d = rng.gen_range(1..=6);
        let m = kit::random_matrix(&mut rng, d, d, 5, 3);
        let p = char_poly(&m).unwrap();
        prop_assert_eq!(p.degree(), Some(d));
        prop_assert!(p.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn factors_remultiply(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let k = rng.gen_range(1..=4);
        let mut p = RatPoly::one();
        for _ in 0..k {
            let deg = rng.gen_range(1..=3);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-6..=6)).collect();
            c.push(1);
            p = &p * &RatPoly::from_i64(&c).pow(rng.gen_range(1..=2));
        }
        let lead = kit::small_rational(&mut rng, 5, 4);
        prop_assume!(lead != int(0));
        let p = p.scale(&lead);
        let factors = factor_rational(&p).unwrap();
        let back = factors.iter().fold(RatPoly::constant(lead), |acc, (f, e)| &acc * &f.pow(*e));
        prop_assert_eq!(back, p);
        for (f, _) in &factors {
            prop_assert!(f.is_monic());
            // Irreducible factors stay single when re-factored.
            prop_assert_eq!(factor_rational(f).unwrap(), vec![(f.clone(), 1)]);
        }
    }
}

#[test]
fn companion_char_poly_round_trips() {
    let p = RatPoly::from_i64(&[7, 0, -3, 1]);
    let m = wmtrop_core::ratlin::companion(&p).unwrap();
    assert_eq!(char_poly(&m).unwrap(), p);
    assert_eq!(Matrix::identity(3).rank(), 3);
}
