#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rgroups_core::clifford::FiniteAbelianGroup;
use rgroups_core::groupcore::{generate_subgroup, Subgroup};
use rgroups_core::rootsys::{
    block_swap, build_extended_weyl, build_weyl_group, last_sign_change, ComponentAction, ExtendedWeylGroup,
    Root, RootSystem, RootType, SignedPerm,
};

/// `e_i ↦ -e_{n+1-i}` on the coordinates of `A_{n}`, i.e. `-w₀`.
pub fn minus_w0_type_a(rank: usize) -> SignedPerm {
    let dim = rank + 1;
    let rows: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| if j == dim - 1 - i { -1 } else { 0 }).collect())
        .collect();
    SignedPerm::from_matrix(&rows).unwrap()
}

fn with_z2(rs: RootSystem, m: SignedPerm) -> ExtendedWeylGroup {
    let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![m]).unwrap();
    build_extended_weyl(&rs, &act).unwrap()
}

/// Small ambients covering every supported type and a few outer actions.
pub fn ambients() -> Vec<ExtendedWeylGroup> {
    let a1a1 = RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)]).unwrap();
    vec![
        build_weyl_group(&RootSystem::classical(RootType::A, 1).unwrap()).unwrap(),
        with_z2(a1a1.clone(), block_swap(4, 0, 2, 2).unwrap()),
        build_weyl_group(&a1a1).unwrap(),
        with_z2(RootSystem::classical(RootType::A, 2).unwrap(), minus_w0_type_a(2)),
        with_z2(RootSystem::classical(RootType::A, 3).unwrap(), minus_w0_type_a(3)),
        build_weyl_group(&RootSystem::classical(RootType::B, 2).unwrap()).unwrap(),
        build_weyl_group(&RootSystem::classical(RootType::C, 3).unwrap()).unwrap(),
        with_z2(RootSystem::classical(RootType::D, 4).unwrap(), last_sign_change(4)),
    ]
}

fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

/// Smallest set of roots containing `seed` and closed under its own reflections.
pub fn subsystem_closure(g: &ExtendedWeylGroup, seed: &[Root]) -> Vec<Root> {
    let mut set: Vec<Root> = Vec::new();
    for r in seed {
        for x in [r.clone(), neg(r)] {
            if !set.contains(&x) {
                set.push(x);
            }
        }
    }
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for b in &snapshot {
            let s = g.reflection_index(b).unwrap();
            for a in &snapshot {
                let img = g.act(s, a);
                if !set.contains(&img) {
                    set.push(img);
                    added = true;
                }
            }
        }
        if !added {
            set.sort();
            return set;
        }
    }
}

/// A random consistent σ-datum: `Φ₁` is a random root subsystem and `W(σ)`
/// is generated by `W(Φ₁)` and a few random elements stabilizing `Φ₁`.
pub fn random_sigma<R: Rng>(rng: &mut R, g: &ExtendedWeylGroup) -> (Subgroup, Vec<Root>) {
    let roots = g.root_system().roots();
    let k = rng.gen_range(0..=2usize.min(roots.len()));
    let seed: Vec<Root> = roots.choose_multiple(rng, k).cloned().collect();
    let phi1 = subsystem_closure(g, &seed);
    let stab: Vec<usize> = (0..rgroups_core::groupcore::FiniteGroup::order(g))
        .filter(|&i| g.stabilizes(i, &phi1))
        .collect();
    let mut gens: Vec<usize> = phi1
        .iter()
        .filter(|r| g.root_system().is_positive(r))
        .map(|r| g.reflection_index(r).unwrap())
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        gens.push(*stab.choose(rng).unwrap());
    }
    (generate_subgroup(g, &gens).unwrap(), phi1)
}
