mod common;

use std::collections::BTreeSet;

use houghton_core::complex::SimplicialComplex;
use houghton_core::houghton::{Character, EventualInjection, RayPoint};
use houghton_core::topology::{homology, smith_normal_form};
use houghton_core::MachineMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn injection(n: usize, w: usize) -> impl Strategy<Value = EventualInjection> {
    any::<u64>().prop_map(move |s| common::random_injection(&mut ChaCha8Rng::seed_from_u64(s), n, w))
}

fn triple() -> impl Strategy<Value = (EventualInjection, EventualInjection, EventualInjection)> {
    (2usize..=4, 1usize..=6).prop_flat_map(|(n, w)| (injection(n, w), injection(n, w), injection(n, w)))
}

/// Random facets on `v` vertices, each of size 1..=4.
fn facets() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (3usize..=8).prop_flat_map(|v| {
        let facet = proptest::collection::btree_set(0..v, 1..=4).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(v), proptest::collection::vec(facet, 1..=8))
    })
}

fn complex(v: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_facets((0..v).map(|i| i.to_string()).collect(), facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn composition_is_associative_and_unital((a, b, c) in triple()) {
        let id = EventualInjection::identity(a.n());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert_eq!(id.compose(&a).unwrap(), a.clone());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn characters_are_homomorphisms((a, b, _) in triple(), coeffs in proptest::collection::vec(-4i64..=4, 4)) {
        let n = a.n();
        let chi = Character::new(coeffs[..n].to_vec()).unwrap();
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(chi.eval(&ab).unwrap(), chi.eval(&a).unwrap() + chi.eval(&b).unwrap());
        // sum of translations is the deficiency
        let total: i64 = (1..=n).map(|r| a.chi_component(r).unwrap()).sum();
        prop_assert_eq!(total, a.deficiency() as i64);
    }

    #[test]
    fn generators_act_by_shifting((a, _, _) in triple(), ray in 1usize..=4) {
        let n = a.n();
        let ray = (ray - 1) % n + 1;
        let t = EventualInjection::generator_t(ray, n).unwrap();
        prop_assert_eq!(t.compose(&a).unwrap(), a.raised(ray));
        for k in 1..=10u64 {
            prop_assert_eq!(a.raised(ray).apply(RayPoint::new(ray, k)), a.apply(RayPoint::new(ray, k + 1)));
        }
    }

    #[test]
    fn homology_ignores_vertex_order((v, fs) in facets(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..v).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let relabelled: Vec<Vec<usize>> = fs.iter().map(|f| f.iter().map(|&x| perm[x]).collect()).collect();
        let a = homology(&complex(v, &fs).chain_complex().unwrap(), false).unwrap();
        let b = homology(&complex(v, &relabelled).chain_complex().unwrap(), false).unwrap();
        prop_assert_eq!(&a.betti, &b.betti);
        prop_assert_eq!(&a.torsion, &b.torsion);
        let chain = complex(v, &fs).chain_complex().unwrap();
        prop_assert_eq!(a.euler_characteristic(), chain.euler_characteristic());
    }

    #[test]
    fn homology_ignores_cell_order((v, fs) in facets(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let chain = complex(v, &fs).chain_complex().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = chain
            .dims()
            .iter()
            .map(|&d| {
                let mut p: Vec<usize> = (0..d).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let shuffled = chain.reordered(&perms).unwrap();
        prop_assert_eq!(homology(&chain, true).unwrap(), homology(&shuffled, true).unwrap());
    }

    #[test]
    fn smith_form_is_unimodular_invariant(
        rows in 1usize..=7,
        cols in 1usize..=7,
        seed in any::<u64>(),
        ops in proptest::collection::vec((0usize..7, 0usize..7, -3i64..=3, any::<bool>()), 0..12),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = common::random_matrix(&mut rng, rows, cols, 5);
        let before = smith_normal_form(&MachineMatrix::from_dense(&a).unwrap()).unwrap();
        for (i, j, k, on_rows) in ops {
            if on_rows && i % rows != j % rows {
                let (i, j) = (i % rows, j % rows);
                for c in 0..cols {
                    a[i][c] += k * a[j][c];
                }
            } else if !on_rows && i % cols != j % cols {
                let (i, j) = (i % cols, j % cols);
                for row in a.iter_mut() {
                    row[i] += k * row[j];
                }
            }
        }
        let after = smith_normal_form(&MachineMatrix::from_dense(&a).unwrap()).unwrap();
        prop_assert_eq!(before, after);
        let transposed: Vec<Vec<i64>> = (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect();
        let t = smith_normal_form(&MachineMatrix::from_dense(&transposed).unwrap()).unwrap();
        prop_assert_eq!(t.factors, common::naive_invariant_factors(&a).into_iter().map(|d| d as i64).collect::<Vec<_>>());
    }

    #[test]
    fn down_and_up_moves_are_inverse((a, _, _) in triple(), ray in 1usize..=4) {
        let ray = (ray - 1) % a.n() + 1;
        let downs = a.down_options(ray).unwrap();
        prop_assert_eq!(downs.len() as u64, a.deficiency());
        let distinct: BTreeSet<_> = downs.iter().collect();
        prop_assert_eq!(distinct.len(), downs.len());
        for d in &downs {
            prop_assert_eq!(d.raised(ray), a.clone());
            prop_assert_eq!(d.deficiency() + 1, a.deficiency());
        }
    }
}
