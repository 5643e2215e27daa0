use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use wmtrop_core::rational::{int, rat};
use wmtrop_core::troplattice::{
    cell_index, divides, dual_graph, in_closed_cell, max_dividing_width, quotient_components, tower_preimages,
    tower_project, CellWidth, QuotientModel, TropicalLattice,
};
use wmtrop_testkit as kit;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn width_matches_brute_force(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=4);
        let lat = kit::random_lattice(&mut rng, r);
        let w = max_dividing_width(&lat);
        prop_assert_eq!(w.value(), &kit::brute_force_width(&lat));
        prop_assert!(divides(&w, &lat));
        for c in [2, 3, 5] {
            prop_assert!(!divides(&CellWidth::new(w.value() * int(c)).unwrap(), &lat));
        }
        for m in 1..=6u64 {
            prop_assert!(divides(&w.divide_by(m), &lat));
        }
    }

    #[test]
    fn tower_is_functorial(k in 1i64..8, p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 0u32..3, m in 1u32..3, seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let lat = TropicalLattice::rank_one(int(k)).unwrap();
        let q = QuotientModel::new(lat, CellWidth::new(int(1)).unwrap(), p, n).unwrap();
        let modulus = q.modulus().unwrap();
        let e = rng.gen_range(0..modulus);
        let one_step = tower_preimages(e, &q, 1).unwrap();
        for &x in &one_step {
            prop_assert_eq!(tower_project(x, &q).unwrap(), e);
        }
        let pre = tower_preimages(e, &q, m).unwrap();
        prop_assert_eq!(pre.len() as u64, p.pow(m));
        let other = (e + 1) % modulus;
        if other != e {
            let pre2 = tower_preimages(other, &q, m).unwrap();
            prop_assert!(pre.iter().all(|x| !pre2.contains(x)));
        }
        // Projecting step by step lands back on e.
        for &x in &pre {
            let mut y = x;
            for lvl in (n..n + m).rev() {
                y = tower_project(y, &q.at_level(lvl).unwrap()).unwrap();
            }
            prop_assert_eq!(y, e);
        }
    }

    #[test]
    fn components_scale_by_p_to_the_r(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=3);
        let lat = kit::random_lattice(&mut rng, r);
        let alpha = max_dividing_width(&lat);
        let q0 = QuotientModel::new(lat, alpha, p, 0).unwrap();
        let mut prev = quotient_components(&q0);
        for n in 1..=2 {
            let cur = quotient_components(&q0.at_level(n).unwrap());
            prop_assert_eq!(&cur, &(&prev * BigInt::from(p.pow(r as u32))));
            prev = cur;
        }
    }

    #[test]
    fn rank_one_dual_graph_is_a_cycle(k in 1i64..10, den in 1i64..4, p in prop::sample::select(vec![2u64, 3]), n in 0u32..3) {
        let lat = TropicalLattice::rank_one(rat(k, den)).unwrap();
        let q = QuotientModel::new(lat, CellWidth::new(rat(1, den)).unwrap(), p, n).unwrap();
        let g = dual_graph(&q).unwrap();
        prop_assert_eq!(BigInt::from(g.vertices.len()), quotient_components(&q));
        for &v in &g.vertices {
            prop_assert_eq!(g.degree(v), 2);
        }
        prop_assert_eq!(g.edge_count() as usize, g.vertices.len());
    }

    #[test]
    fn point_lies_in_its_cell(seed in any::<u64>()) {
        let mut rng = kit::rng(seed);
        let r = rng.gen_range(1..=4);
        let u: Vec<_> = (0..r).map(|_| kit::small_rational(&mut rng, 20, 7)).collect();
        let alpha = CellWidth::new(rat(rng.gen_range(1..=5), rng.gen_range(1..=5))).unwrap();
        let c = cell_index(&u, &alpha);
        prop_assert!(in_closed_cell(&u, &c.e, &alpha));
        for i in 0..r {
            // On a face, the neighbouring cell also contains the point.
            let mut e2 = c.e.clone();
            e2[i] -= 1;
            prop_assert_eq!(in_closed_cell(&u, &e2, &alpha), c.on_boundary[i]);
        }
    }
}
