use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ohmgraph_core::gen::{random_conductance, random_minimal_network, random_planar_network, random_split_system};
use ohmgraph_core::grassmann::{
    build_omega_resistance, build_omega_response, plucker, three_term_relation_holds, PluckerVector,
};
use ohmgraph_core::metrics::{
    gromov_transform, kalmanson_check, m_of_d, metric_from_splits, resistance_from_dual_response, split_weights,
};
use ohmgraph_core::netcore::{
    dual_network, next_reduction, resistance_matrix, resistance_oracle, response_matrix, simplify, transform,
    unit_weights,
};
use ohmgraph_core::reconstruct::{column_permutation_g, network_strands, strands_of};
use ohmgraph_core::{CircularOrder, Edge, Scalar, WeightedGraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn same_point(a: &PluckerVector, b: &PluckerVector) -> bool {
    let Some((i, pivot)) = a
        .coords()
        .iter()
        .enumerate()
        .find(|(_, (_, v))| !v.is_zero())
        .map(|(i, (_, v))| (i, v))
    else {
        return b.is_zero();
    };
    let ratio = &b.coords()[i].1 / pivot;
    !ratio.is_zero()
        && a.coords()
            .iter()
            .zip(b.coords())
            .all(|((_, x), (_, y))| &(x * &ratio) == y)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn oracle_matches_schur_resistance(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 10);
        let d = resistance_matrix(&g).unwrap();
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        prop_assert_eq!(&resistance_oracle(&g, i, j).unwrap(), d.get(i, j));
    }

    #[test]
    fn resistance_is_a_kalmanson_metric(seed in any::<u64>(), n in 3usize..=6) {
        let mut r = rng(seed);
        let d = resistance_matrix(&random_planar_network(&mut r, n, 12)).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    prop_assert!(d.get(i, k) <= &(d.get(i, j) + d.get(j, k)));
                }
            }
        }
        prop_assert!(kalmanson_check(&d, &CircularOrder::identity(n)).unwrap().is_none());
    }

    #[test]
    fn reductions_preserve_response(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 10);
        let before = response_matrix(&g).unwrap();
        if let Some(mv) = next_reduction(&g) {
            prop_assert_eq!(&response_matrix(&transform(&g, mv).unwrap()).unwrap(), &before);
        }
        let h = simplify(&g);
        prop_assert!(next_reduction(&h).is_none());
        prop_assert_eq!(response_matrix(&h).unwrap(), before);
    }

    #[test]
    fn split_decomposition_round_trips(seed in any::<u64>(), n in 3usize..=6) {
        let mut r = rng(seed);
        let sys = random_split_system(&mut r, n);
        let d = metric_from_splits(&sys);
        let back = split_weights(&d, sys.order()).unwrap();
        prop_assert_eq!(metric_from_splits(&back), d);
        for (s, w) in sys.splits() {
            prop_assert_eq!(back.weight_of(s), Some(w));
        }
    }

    #[test]
    fn m_of_d_is_dual_response(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 10);
        let d = resistance_matrix(&g).unwrap();
        let order = CircularOrder::identity(n);
        let m = m_of_d(&d, &order).unwrap().into_matrix();
        let dual = response_matrix(&dual_network(&g).unwrap()).unwrap();
        prop_assert_eq!(dual.matrix(), &m);
        // The dual resistance formula read off the primal response.
        let star = resistance_from_dual_response(&response_matrix(&g).unwrap(), &order).unwrap();
        prop_assert_eq!(star, resistance_matrix(&dual_network(&g).unwrap()).unwrap());
    }

    #[test]
    fn gromov_transform_inverts_reduced_response(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 10);
        let d = resistance_matrix(&g).unwrap();
        let base = n - 1;
        let gram = gromov_transform(&d, base).unwrap();
        let reduced = response_matrix(&g).unwrap().reduced();
        prop_assert_eq!(gram, reduced.inverse().unwrap());
    }

    #[test]
    fn both_omega_forms_give_one_point(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 9);
        let a = plucker(&build_omega_response(&response_matrix(&g).unwrap()).unwrap()).unwrap();
        let d = resistance_matrix(&g).unwrap();
        let b = plucker(&build_omega_resistance(&d, &CircularOrder::identity(n)).unwrap()).unwrap();
        prop_assert!(same_point(&a, &b));
        prop_assert!(a.coords().iter().all(|(_, v)| *v >= Scalar::zero()) || a.coords().iter().all(|(_, v)| *v <= Scalar::zero()));
    }

    #[test]
    fn three_term_relations_hold(seed in any::<u64>(), n in 3usize..=4) {
        let mut r = rng(seed);
        let d = resistance_matrix(&random_planar_network(&mut r, n, 9)).unwrap();
        let p = plucker(&build_omega_resistance(&d, &CircularOrder::identity(n)).unwrap()).unwrap();
        let mut cols: Vec<usize> = (0..2 * n).collect();
        for _ in 0..4 {
            rand::seq::SliceRandom::shuffle(&mut cols[..], &mut r);
            let mut quad = [cols[0], cols[1], cols[2], cols[3]];
            quad.sort_unstable();
            let mut rest: Vec<usize> = cols[4..4 + (n - 3)].to_vec();
            rest.sort_unstable();
            prop_assert!(three_term_relation_holds(&p, &rest, quad));
        }
    }

    #[test]
    fn strands_ignore_weights_and_scale(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let (tau, g) = random_minimal_network(&mut r, n);
        let order = CircularOrder::identity(n);
        let d = resistance_matrix(&g).unwrap();
        let unit = resistance_matrix(&unit_weights(&g)).unwrap();
        let s = strands_of(&d, &order).unwrap();
        prop_assert_eq!(&s, &tau);
        prop_assert_eq!(&strands_of(&unit, &order).unwrap(), &tau);
        let k = random_conductance(&mut r);
        prop_assert_eq!(&strands_of(&d.scaled(&k), &order).unwrap(), &tau);
        prop_assert_eq!(network_strands(&g).unwrap(), tau);
    }

    #[test]
    fn g_is_invariant_under_column_scaling(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let d = resistance_matrix(&random_planar_network(&mut r, n, 9)).unwrap();
        let omega = build_omega_resistance(&d, &CircularOrder::identity(n)).unwrap();
        let factors: Vec<Scalar> = (0..2 * n).map(|_| random_conductance(&mut r)).collect();
        let scaled = omega.with_scaled_columns(&factors);
        prop_assert_eq!(column_permutation_g(&omega).ok(), column_permutation_g(&scaled).ok());
    }

    #[test]
    fn scaling_conductances_scales_resistance(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let g = random_planar_network(&mut r, n, 10);
        let k = random_conductance(&mut r);
        let h = WeightedGraph::new(
            g.vertex_count(),
            g.boundary().to_vec(),
            g.edges().iter().map(|e| Edge::new(e.u, e.v, &e.conductance * &k)).collect(),
        ).unwrap();
        let d = resistance_matrix(&g).unwrap();
        prop_assert_eq!(resistance_matrix(&h).unwrap(), d.scaled(&(Scalar::one() / k)));
    }
}
