use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rgroups_core::clifford::FiniteAbelianGroup;
use rgroups_core::extension::{build_extension, character_table, is_coboundary, parameterize_components, Cocycle};
use rgroups_core::groupcore::{double_cosets, generate_subgroup, GroupTable, Subgroup};
use rgroups_core::parabolic::containment_anomalies;
use rgroups_core::rgroup::{semidirect_decompose, validate_sigma_datum, SigmaDatum};
use rgroups_core::rootsys::{
    block_swap, build_extended_weyl, build_weyl_group, last_sign_change, ComponentAction, ExtendedWeylGroup,
    RootSystem, RootType,
};

fn orthogonal_even(n: usize) -> ExtendedWeylGroup {
    let rs = RootSystem::classical(RootType::D, n).unwrap();
    let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![last_sign_change(n)]).unwrap();
    build_extended_weyl(&rs, &act).unwrap()
}

fn swapped_a1_pair() -> ExtendedWeylGroup {
    let rs = RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)]).unwrap();
    let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![block_swap(4, 0, 2, 2).unwrap()])
        .unwrap();
    build_extended_weyl(&rs, &act).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::new("D_n x Z2", n), &n, |b, &n| b.iter(|| orthogonal_even(black_box(n))));
    }
    group.bench_function("B4", |b| {
        b.iter(|| build_weyl_group(&RootSystem::classical(RootType::B, 4).unwrap()).unwrap())
    });
    group.finish();
}

fn sigma_pipeline(c: &mut Criterion) {
    let g = swapped_a1_pair();
    c.bench_function("principal series parameterization", |b| {
        b.iter(|| {
            let v = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), vec![]).with_inner(g.inner()))
                .unwrap();
            let dec = semidirect_decompose(&v).unwrap();
            let (table, _) = GroupTable::from_subgroup(&g, &dec.r_group).unwrap();
            let cocycle = Cocycle::trivial(table, 4).unwrap();
            black_box(parameterize_components(&v, &cocycle, None).unwrap())
        })
    });
    let d4 = orthogonal_even(4);
    let phi1 = vec![vec![1, -1, 0, 0], vec![-1, 1, 0, 0]];
    let stab: Vec<usize> = (0..384).filter(|&i| d4.stabilizes(i, &phi1)).collect();
    let w_sigma = generate_subgroup(&d4, &stab).unwrap();
    c.bench_function("semidirect decomposition in D4 x Z2", |b| {
        b.iter(|| {
            let v = validate_sigma_datum(SigmaDatum::new(&d4, w_sigma.clone(), phi1.clone())).unwrap();
            black_box(semidirect_decompose(&v).unwrap())
        })
    });
}

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character table");
    let cases = [
        ("dihedral 64", GroupTable::dihedral(64).unwrap()),
        ("dicyclic 32", GroupTable::dicyclic(32).unwrap()),
        ("cyclic 64", GroupTable::cyclic(64).unwrap()),
        (
            "S3 x Q8",
            GroupTable::direct_product(&GroupTable::dihedral(6).unwrap(), &GroupTable::dicyclic(8).unwrap()).unwrap(),
        ),
    ];
    for (name, g) in &cases {
        group.bench_function(*name, |b| b.iter(|| character_table(black_box(g)).unwrap()));
    }
    group.finish();
}

fn cocycles(c: &mut Criterion) {
    let d8 = GroupTable::dihedral(8).unwrap();
    let f: Vec<u64> = (0..8).map(|i| (i * 3) % 4).collect();
    let cob = Cocycle::coboundary(d8, 4, &f).unwrap();
    c.bench_function("coboundary search D8 mod 4", |b| b.iter(|| is_coboundary(black_box(&cob)).unwrap()));
    c.bench_function("extension of D8 by Z4", |b| b.iter(|| build_extension(black_box(&cob)).unwrap()));
}

fn parabolics(c: &mut Criterion) {
    let g = orthogonal_even(4);
    c.bench_function("containment anomalies D4 x Z2", |b| b.iter(|| containment_anomalies(black_box(&g)).unwrap()));
    let w = build_weyl_group(&RootSystem::classical(RootType::D, 4).unwrap()).unwrap();
    let left = generate_subgroup(&w, &[1, 2]).unwrap();
    let right = generate_subgroup(&w, &[3]).unwrap();
    c.bench_function("double cosets W(D4)", |b| b.iter(|| double_cosets(&w, &left, &right).unwrap()));
}

criterion_group!(benches, enumeration, sigma_pipeline, character_tables, cocycles, parabolics);
criterion_main!(benches);
