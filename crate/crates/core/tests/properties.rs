use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

use topoqd_core::builtin::{builtin, ZOO};
use topoqd_core::fusion::{borromean_fusion, loop_fusion_table, point_fusion_invariant_dim, sector_probability};
use topoqd_core::group::{conjugacy_classes, FiniteGroup, Permutation, DEFAULT_ELEMENT_CAP};
use topoqd_core::oracle::{abelian_fusion_oracle, orbit_count_direct, ORACLE_CAP};
use topoqd_core::pairing::{anyon_s_matrix, pairing_matrix_s2s1};
use topoqd_core::sectors::{count_graph_sectors, enumerate_graph_sectors, EnumOptions, QuantumDim};
use topoqd_core::QuantumDouble;

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn small_perm_group() -> impl Strategy<Value = FiniteGroup> {
    (1usize..=5).prop_flat_map(|deg| {
        prop::collection::vec(permutation(deg), 1..=3)
            .prop_map(|gens| FiniteGroup::from_permutations(&gens, DEFAULT_ELEMENT_CAP).unwrap())
    })
}

fn zoo_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(ZOO.to_vec())
}

fn abelian_product() -> impl Strategy<Value = FiniteGroup> {
    // Z_a × Z_b as a permutation group on disjoint cycles
    (1usize..=5, 1usize..=4).prop_map(|(a, b)| {
        let mut gens = Vec::new();
        for (offset, len) in [(0, a), (a, b)] {
            let images: Vec<u32> = (0..(a + b) as u32)
                .map(|i| {
                    let i = i as usize;
                    if i >= offset && i < offset + len {
                        (offset + (i - offset + 1) % len) as u32
                    } else {
                        i as u32
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
        FiniteGroup::from_permutations(&gens, DEFAULT_ELEMENT_CAP).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_order_divides_factorial(g in small_perm_group()) {
        let degree = match g.source() {
            topoqd_core::group::GroupSource::Permutations { degree, .. } => *degree,
            _ => unreachable!(),
        };
        let fact: usize = (1..=degree).product();
        prop_assert_eq!(fact % g.order(), 0);
        for x in g.elements() {
            prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        }
    }

    #[test]
    fn class_equation_and_table(g in small_perm_group()) {
        let classes = conjugacy_classes(&g);
        let sizes = classes.sizes();
        prop_assert_eq!(sizes.iter().sum::<usize>(), g.order());
        for c in classes.iter() {
            prop_assert_eq!(c.size * c.centralizer_order(), g.order());
        }
        let qd = QuantumDouble::new(g).unwrap();
        prop_assert!(qd.table().validate().is_ok());
        let sq: usize = qd.table().degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(sq, qd.order());
    }

    #[test]
    fn burnside_matches_oracle_and_enumeration(g in small_perm_group(), genus in 1usize..=2) {
        let classes = conjugacy_classes(&g);
        let burnside = count_graph_sectors(&g, &classes, genus);
        let direct = orbit_count_direct(&g, genus, ORACLE_CAP).unwrap();
        let sectors = enumerate_graph_sectors(&g, &classes, genus, &EnumOptions::default()).unwrap();
        prop_assert_eq!(burnside.clone(), direct.into());
        prop_assert_eq!(burnside, sectors.len().into());
        let total: u64 = sectors.iter().map(|s| s.orbit_size).sum();
        prop_assert_eq!(total as u128, (g.order() as u128).pow(genus as u32));
    }

    #[test]
    fn cayley_round_trip(g in small_perm_group()) {
        let table: Vec<Vec<usize>> = g.elements().map(|a| g.elements().map(|b| g.mul(a, b)).collect()).collect();
        let h = FiniteGroup::from_cayley_table(&table).unwrap();
        prop_assert_eq!(conjugacy_classes(&h).sizes(), conjugacy_classes(&g).sizes());
    }

    #[test]
    fn abelian_sectors_are_singletons(g in abelian_product(), genus in 1usize..=3) {
        let classes = conjugacy_classes(&g);
        let sectors = enumerate_graph_sectors(&g, &classes, genus, &EnumOptions::default()).unwrap();
        prop_assert_eq!(sectors.len() as u128, (g.order() as u128).pow(genus as u32));
        prop_assert!(sectors.iter().all(|s| s.orbit_size == 1));
        let one = classes.identity_class();
        for mu in 0..classes.len() {
            for nu in 0..classes.len() {
                prop_assert_eq!(borromean_fusion(&g, &classes, mu, nu), vec![(one, Ratio::one())]);
            }
        }
    }

    #[test]
    fn abelian_fusion_matches_oracle(g in abelian_product(), a in 0usize..20, b in 0usize..20, c in 0usize..20) {
        let qd = QuantumDouble::new(g).unwrap();
        let r = qd.table().len();
        let irreps = [a % r, b % r, c % r];
        prop_assert_eq!(
            abelian_fusion_oracle(qd.group(), qd.table(), &irreps).unwrap(),
            point_fusion_invariant_dim(qd.table(), &irreps).unwrap()
        );
    }

    #[test]
    fn flux_fusion_conditions(name in zoo_group(), mu in 0usize..16, nu in 0usize..16) {
        let g = builtin(name, DEFAULT_ELEMENT_CAP).unwrap();
        let classes = conjugacy_classes(&g);
        let r = classes.len();
        let (mu, nu) = (mu % r, nu % r);
        let t = loop_fusion_table(&g, &classes, mu, nu);
        let swapped = loop_fusion_table(&g, &classes, nu, mu);
        let total = t.channels.iter().fold(Ratio::zero(), |acc, c| acc + c.p);
        prop_assert!(total.is_one());
        prop_assert_eq!(t.total_dim_squared(), (classes.get(mu).size * classes.get(nu).size) as u64);
        prop_assert_eq!(t.by_lambda(), swapped.by_lambda());
        let one = classes.identity_class();
        let expect = if nu == classes.inverse_class(mu) {
            Ratio::new(1, classes.get(mu).size as u64)
        } else {
            Ratio::zero()
        };
        prop_assert_eq!(t.probability(one), expect);
        let with_vacuum = loop_fusion_table(&g, &classes, mu, one);
        prop_assert_eq!(with_vacuum.by_lambda(), vec![(mu, Ratio::one())]);
        let borromean_total = borromean_fusion(&g, &classes, mu, nu).into_iter().fold(Ratio::zero(), |acc, (_, p)| acc + p);
        prop_assert!(borromean_total.is_one());
    }

    #[test]
    fn sector_probabilities_sum_to_one(items in prop::collection::vec((0u64..5, 1u64..7), 1..8)) {
        prop_assume!(items.iter().any(|(n, _)| *n > 0));
        let mults: Vec<u64> = items.iter().map(|(n, _)| *n).collect();
        let dims: Vec<QuantumDim> = items.iter().map(|(_, d)| QuantumDim::from_integer(*d)).collect();
        match sector_probability(&mults, &dims).unwrap() {
            topoqd_core::fusion::Probabilities::Exact(p) => {
                prop_assert!(p.iter().fold(Ratio::zero(), |acc, x| acc + x).is_one())
            }
            other => prop_assert!(false, "expected exact probabilities, got {:?}", other),
        }
    }

    #[test]
    fn pairing_matrices_unitary(g in small_perm_group()) {
        let qd = QuantumDouble::new(g).unwrap();
        let p = pairing_matrix_s2s1(&qd).unwrap();
        let s = anyon_s_matrix(&qd).unwrap();
        prop_assert!(p.vacuum_row_residual() < 1e-9 && p.vacuum_col_residual() < 1e-9);
        prop_assert!(s.symmetry_residual() < 1e-9);
        prop_assert!(s.square_permutation_residual() < 1e-9);
    }

    #[test]
    fn multithreaded_enumeration_identical(name in prop::sample::select(vec!["S3", "D4", "Q8", "A4"]), threads in 2usize..5) {
        let g = builtin(name, DEFAULT_ELEMENT_CAP).unwrap();
        let classes = conjugacy_classes(&g);
        let single = enumerate_graph_sectors(&g, &classes, 2, &EnumOptions::default()).unwrap();
        let multi = enumerate_graph_sectors(&g, &classes, 2, &EnumOptions { threads, ..EnumOptions::default() }).unwrap();
        prop_assert_eq!(single, multi);
    }
}
