mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rgroups_core::clifford::{
    dual_group, restriction_census, solve_multiplicity, twist_orbit_partition, CliffordInstance, FiniteAbelianGroup,
};
use rgroups_core::extension::{
    build_extension, character_table, irreps_with_central_character, parameterize_with_dimension, verify_cocycle,
    Cocycle,
};
use rgroups_core::groupcore::{
    double_cosets, factorizations, generate_subgroup, order_census, semidirect_check, FiniteGroup, GroupTable,
    Subgroup,
};
use rgroups_core::parabolic::{
    base_normalizer, containment_anomalies, cuspidal_levi_components, n_levi_component_image, theta_stabilizer,
    ParabolicDatum,
};
use rgroups_core::rgroup::{
    dim_commuting_algebra, r_group, reflection_subgroup, semidirect_decompose, validate_sigma_datum, SigmaDatum,
};
use rgroups_core::rootsys::{build_weyl_group, ExtendedWeylGroup, RootSystem, RootType};

fn ambients() -> &'static [ExtendedWeylGroup] {
    static CELL: OnceLock<Vec<ExtendedWeylGroup>> = OnceLock::new();
    CELL.get_or_init(common::ambients)
}

fn small_tables() -> Vec<GroupTable> {
    let z2 = GroupTable::cyclic(2).unwrap();
    vec![
        GroupTable::cyclic(6).unwrap(),
        GroupTable::dihedral(8).unwrap(),
        GroupTable::dicyclic(8).unwrap(),
        GroupTable::dihedral(12).unwrap(),
        GroupTable::direct_product(&z2, &GroupTable::dihedral(6).unwrap()).unwrap(),
        GroupTable::direct_product(&z2, &GroupTable::cyclic(4).unwrap()).unwrap(),
    ]
}

fn random_subgroup<G: FiniteGroup, R: Rng>(g: &G, rng: &mut R) -> Subgroup {
    let gens: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..g.order())).collect();
    generate_subgroup(g, &gens).unwrap()
}

fn relabel(t: &GroupTable, perm: &[usize]) -> GroupTable {
    let n = t.order();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let rows = (0..n)
        .map(|a| (0..n).map(|b| perm[t.mul(inv[a], inv[b])]).collect())
        .collect();
    GroupTable::from_rows(rows).unwrap()
}

fn random_cocycle<R: Rng>(rng: &mut R, base: &GroupTable, modulus: u64) -> Cocycle {
    let mut c: Vec<u64> = (0..base.order()).map(|_| rng.gen_range(0..modulus)).collect();
    c[base.identity()] = 0;
    Cocycle::coboundary(base.clone(), modulus, &c).unwrap()
}

/// `η(aⁱbʲ, aᵏbˡ) = j·k mod 2` on the Klein four-group.
fn klein_cocycle() -> Cocycle {
    let z2 = GroupTable::cyclic(2).unwrap();
    let v4 = GroupTable::direct_product(&z2, &z2).unwrap();
    let rows: Vec<Vec<u64>> = (0..4)
        .map(|x| (0..4).map(|y| ((x % 2) * (y / 2)) as u64).collect())
        .collect();
    Cocycle::from_table(v4, 2, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tables_are_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = small_tables();
        let t = tables.choose(&mut rng).unwrap();
        let n = t.order();
        for _ in 0..200 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            prop_assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        }
    }

    #[test]
    fn generation_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambients().choose(&mut rng).unwrap();
        let h = random_subgroup(g, &mut rng);
        prop_assert_eq!(generate_subgroup(g, h.members()).unwrap(), h);
    }

    #[test]
    fn double_cosets_partition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambients().choose(&mut rng).unwrap();
        let h = random_subgroup(g, &mut rng);
        let k = random_subgroup(g, &mut rng);
        let parts = double_cosets(g, &h, &k).unwrap();
        let mut seen = BTreeSet::new();
        for d in &parts {
            for &x in &d.members {
                prop_assert!(seen.insert(x));
                for &y in k.members() {
                    prop_assert!(d.members.contains(&g.mul(x, y)));
                }
                for &y in h.members() {
                    prop_assert!(d.members.contains(&g.mul(y, x)));
                }
            }
        }
        prop_assert_eq!(seen.len(), g.order());
    }

    #[test]
    fn semidirect_gives_unique_factorization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambients().choose(&mut rng).unwrap();
        let n = random_subgroup(g, &mut rng);
        let h = random_subgroup(g, &mut rng);
        if semidirect_check(g, &n, &h).holds() {
            prop_assert_eq!(g.order(), n.order() * h.order());
            for x in 0..g.order() {
                prop_assert_eq!(factorizations(g, x, &n, &h).len(), 1);
            }
        }
    }

    #[test]
    fn census_survives_relabeling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = small_tables();
        let t = tables.choose(&mut rng).unwrap();
        let mut perm: Vec<usize> = (0..t.order()).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(order_census(&relabel(t, &perm)), order_census(t));
    }

    #[test]
    fn sigma_data_decompose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambients().choose(&mut rng).unwrap();
        let (ws, phi1) = common::random_sigma(&mut rng, g);
        let v = validate_sigma_datum(SigmaDatum::new(g, ws.clone(), phi1.clone())).unwrap();
        let w1 = reflection_subgroup(&v).unwrap();
        let r = r_group(&v).unwrap();
        for &w in w1.members() {
            prop_assert!(g.stabilizes(w, &phi1));
        }
        prop_assert!(r.intersection(&w1).is_trivial());
        prop_assert_eq!(ws.order(), w1.order() * r.order());
        let dec = semidirect_decompose(&v).unwrap();
        prop_assert_eq!(dec.factorization.len(), ws.order());
        let dim = dim_commuting_algebra(&v).unwrap();
        prop_assert_eq!(dim.via_r_group, dim.via_quotient);

        // Conjugating the whole datum gives an R-group of the same order.
        let x = rng.gen_range(0..g.order());
        let xi = g.inv(x);
        let conj: Vec<usize> = ws.members().iter().map(|&w| g.mul(g.mul(x, w), xi)).collect();
        let conj = Subgroup::from_members(g, &conj).unwrap();
        let phi1c: Vec<_> = phi1.iter().map(|b| g.act(x, b)).collect();
        let vc = validate_sigma_datum(SigmaDatum::new(g, conj, phi1c)).unwrap();
        prop_assert_eq!(r_group(&vc).unwrap().order(), r.order());

        let again = validate_sigma_datum(SigmaDatum::new(g, ws, phi1)).unwrap();
        let r_again = r_group(&again).unwrap();
        prop_assert_eq!(r_again.members(), r.members());
    }

    #[test]
    fn inner_dimension_route_agrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambients().choose(&mut rng).unwrap();
        let (ws, phi1) = common::random_sigma(&mut rng, g);
        let inner_w = g.inner();
        let inner = ws.intersection(&inner_w);
        let v = validate_sigma_datum(SigmaDatum::new(g, ws, phi1).with_inner(inner)).unwrap();
        let d = dim_commuting_algebra(&v).unwrap();
        prop_assert_eq!(d.via_inner, Some(d.via_r_group));
    }

    #[test]
    fn dual_pairing_separates_points(factors in prop::sample::select(vec![
        vec![2u64], vec![3], vec![2, 2], vec![2, 4], vec![3, 6], vec![2, 2, 2], vec![4, 8], vec![12],
    ])) {
        let gamma = FiniteAbelianGroup::new(&factors).unwrap();
        let dual = dual_group(&gamma);
        for g in 1..gamma.order() {
            prop_assert!((0..gamma.order()).any(|chi| dual.pairing(chi, g).numerator() != 0));
        }
    }

    #[test]
    fn multiplicity_solutions_multiply_back(idx in 1u64..=64, factors in prop::sample::select(vec![
        vec![2u64], vec![2, 2], vec![4], vec![2, 2, 2, 2], vec![2, 4, 8],
    ])) {
        let gamma = FiniteAbelianGroup::new(&factors).unwrap();
        if let Ok(sols) = solve_multiplicity(&gamma, idx) {
            for (r, x) in sols {
                prop_assert_eq!(r * r * x, idx);
                let inst = CliffordInstance::new(gamma.clone(), idx, r, x).unwrap();
                let orbit = gamma.order() as u64 / idx;
                let census = restriction_census(&inst, orbit).unwrap();
                prop_assert_eq!(census.orbit_size * idx, gamma.order() as u64);
            }
        }
    }

    #[test]
    fn twist_orbits_divide_gamma(seed in any::<u64>()) {
        // Γ = Z/4 acting on labels by rotating blocks of size dividing 4.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = FiniteAbelianGroup::cyclic(4).unwrap();
        let sizes: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| *[1usize, 2, 4].choose(&mut rng).unwrap()).collect();
        let n: usize = sizes.iter().sum();
        let mut action = vec![vec![0; n]; 4];
        let mut start = 0;
        for &s in &sizes {
            for (g, perm) in action.iter_mut().enumerate() {
                for i in 0..s {
                    perm[start + i] = start + (i + g) % s;
                }
            }
            start += s;
        }
        let labels: Vec<String> = (0..n).map(|i| format!("π{i}")).collect();
        let orbits = twist_orbit_partition(&gamma, &labels, &action, &vec![1; n]).unwrap();
        for o in orbits {
            prop_assert_eq!(4 % o.labels.len(), 0);
        }
    }

    #[test]
    fn extension_projects_onto_base(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = small_tables();
        let base = tables.choose(&mut rng).unwrap();
        let modulus = rng.gen_range(1..4);
        let c = random_cocycle(&mut rng, base, modulus);
        prop_assert!(verify_cocycle(&c).holds);
        let ext = build_extension(&c).unwrap();
        let t = ext.total();
        for a in 0..t.order() {
            for b in 0..t.order() {
                prop_assert_eq!(ext.project(t.mul(a, b)), base.mul(ext.project(a), ext.project(b)));
            }
        }
    }

    #[test]
    fn cohomologous_cocycles_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = klein_cocycle();
        let shifted = base.add(&random_cocycle(&mut rng, base.base(), 2)).unwrap();
        let e1 = build_extension(&base).unwrap();
        let e2 = build_extension(&shifted).unwrap();
        prop_assert_eq!(order_census(e1.total()), order_census(e2.total()));
        let t1 = character_table(e1.total()).unwrap();
        let t2 = character_table(e2.total()).unwrap();
        let mut total = 0;
        for k in 0..2 {
            let d = |e, t: &rgroups_core::extension::CharacterTable| {
                let mut v: Vec<u64> = irreps_with_central_character(e, t, k)
                    .unwrap()
                    .into_iter()
                    .map(|i| t.characters()[i].degree)
                    .collect();
                v.sort();
                v
            };
            let d1 = d(&e1, &t1);
            total += d1.iter().map(|x| x * x).sum::<u64>();
            prop_assert_eq!(d1, d(&e2, &t2));
        }
        prop_assert_eq!(total, 8);
    }
}

#[test]
fn central_blocks_cover_every_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for base in small_tables() {
        for modulus in 1..=3 {
            let c = random_cocycle(&mut rng, &base, modulus);
            let ext = build_extension(&c).unwrap();
            let t = character_table(ext.total()).unwrap();
            let total: u64 = (0..modulus)
                .flat_map(|k| irreps_with_central_character(&ext, &t, k).unwrap())
                .map(|i| t.characters()[i].degree.pow(2))
                .sum();
            assert_eq!(total, modulus * base.order() as u64);
        }
    }
}

#[test]
fn character_tables_are_orthonormal() {
    for t in small_tables() {
        let ct = character_table(&t).unwrap();
        assert!(ct.orthogonality_residual() < 1e-8);
        assert!(ct.degree_residual() < 1e-6);
    }
}

#[test]
fn trivial_cocycle_on_abelian_group_is_all_linear() {
    let z2 = GroupTable::cyclic(2).unwrap();
    for base in [GroupTable::cyclic(6).unwrap(), GroupTable::direct_product(&z2, &z2).unwrap()] {
        let n = base.order() as u64;
        let p = parameterize_with_dimension(&Cocycle::trivial(base, 2).unwrap(), Some(0), n).unwrap();
        assert_eq!(p.constituents.len() as u64, n);
        assert!(p.constituents.iter().all(|c| c.degree == 1));
    }
}

#[test]
fn every_weyl_element_permutes_the_roots() {
    for g in ambients() {
        let rs = g.root_system();
        for i in 0..g.order() {
            let image: BTreeSet<_> = rs.roots().iter().map(|r| g.act(i, r)).collect();
            assert_eq!(image.len(), rs.roots().len());
            assert!(image.iter().all(|r| rs.is_root(r)));
        }
    }
}

#[test]
fn base_stabilizer_is_trivial_inside_w() {
    let types: [&[(RootType, usize)]; 3] = [&[(RootType::A, 1)], &[(RootType::A, 1), (RootType::A, 1)], &[(RootType::D, 4)]];
    for parts in types {
        let g = build_weyl_group(&RootSystem::product(parts).unwrap()).unwrap();
        let simple = g.root_system().simple_roots().to_vec();
        let fixing: Vec<usize> = (0..g.order()).filter(|&i| g.stabilizes(i, &simple)).collect();
        assert_eq!(fixing, vec![0]);
    }
}

#[test]
fn type_d_counts() {
    for n in 2..=5usize {
        let rs = RootSystem::classical(RootType::D, n).unwrap();
        assert_eq!(rs.positive_roots().len(), n * (n - 1));
        let g = build_weyl_group(&rs).unwrap();
        let fact: usize = (1..=n).product();
        assert_eq!(g.order(), (1 << (n - 1)) * fact);
    }
}

#[test]
fn component_map_is_a_homomorphism() {
    for g in ambients() {
        let gamma = g.gamma();
        let n = g.order();
        for a in 0..n {
            for b in (0..n).step_by(7) {
                assert_eq!(g.component(g.mul(a, b)), gamma.mul(g.component(a), g.component(b)));
            }
        }
        assert_eq!((0..n).filter(|&i| g.component(i) == 0).count(), g.weyl_order());
    }
}

#[test]
fn extreme_theta_stabilizers_equal_base_normalizer() {
    for g in ambients() {
        let base = base_normalizer(g).unwrap();
        let r = g.root_system().simple_roots().len();
        let all: Vec<usize> = (0..r).collect();
        for theta in [vec![], all] {
            let d = ParabolicDatum::from_indices(g, &theta).unwrap();
            assert_eq!(theta_stabilizer(&d).unwrap(), base);
        }
    }
}

#[test]
fn cuspidal_components_contain_fixing_levi_components() {
    for g in ambients() {
        let r = g.root_system().simple_roots().len();
        for mask in 0u32..1 << r {
            let theta: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            let d = ParabolicDatum::from_indices(g, &theta).unwrap();
            let cusp = cuspidal_levi_components(&d).unwrap();
            let image = n_levi_component_image(&d).unwrap();
            let stab = theta_stabilizer(&d).unwrap();
            for &gamma in image.members() {
                let fixing = stab
                    .members()
                    .iter()
                    .any(|&w| g.component(w) == gamma && d.fixes_a_theta(w));
                if fixing {
                    assert!(cusp.contains(gamma));
                }
            }
        }
    }
}

#[test]
fn anomalies_are_real() {
    for g in ambients() {
        let simple = g.root_system().simple_roots().to_vec();
        let base = base_normalizer(g).unwrap();
        for a in containment_anomalies(g).unwrap() {
            let larger: Vec<_> = a.larger.iter().map(|&i| simple[i].clone()).collect();
            let smaller: Vec<_> = a.smaller.iter().map(|&i| simple[i].clone()).collect();
            assert!(base.contains(a.witness));
            assert!(g.stabilizes(a.witness, &smaller));
            assert!(!g.stabilizes(a.witness, &larger));
        }
    }
}

#[test]
fn a_theta_has_expected_dimension() {
    let mut census = BTreeMap::new();
    for (kind, max) in [(RootType::A, 4), (RootType::B, 4), (RootType::C, 4), (RootType::D, 5)] {
        for rank in 1..=max {
            if kind == RootType::D && rank < 2 {
                continue;
            }
            let rs = RootSystem::classical(kind, rank).unwrap();
            let g = build_weyl_group(&rs).unwrap();
            for mask in 0u32..1 << rank {
                let theta: Vec<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
                let d = ParabolicDatum::from_indices(&g, &theta).unwrap();
                assert_eq!(d.a_theta().len(), rs.dim() - theta.len());
                *census.entry(kind.to_string()).or_insert(0) += 1;
            }
        }
    }
    assert_eq!(census.len(), 4);
}
