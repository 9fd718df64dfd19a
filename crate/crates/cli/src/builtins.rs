//! Built-in scenarios reproducing known worked examples.

use std::collections::{BTreeMap, BTreeSet};

use rgroups_core::clifford::{
    restriction_census, solve_multiplicity, stabilizer_transfer_check, twist_orbit_partition, CliffordInstance,
    FiniteAbelianGroup, RootOfUnity,
};
use rgroups_core::extension::{character_table, default_modulus, Cocycle, Cyclotomic};
use rgroups_core::groupcore::{generate_subgroup, FiniteGroup, GroupTable, Subgroup};
use rgroups_core::parabolic::{n_levi_component_image, ParabolicDatum};
use rgroups_core::rootsys::{
    block_swap, build_extended_weyl, last_sign_change, parse_root, ComponentAction, ExtendedWeylGroup, Root,
    RootSystem, RootType, SignedPerm,
};
use rgroups_core::Error as CoreError;

use crate::error::{CliError, CliResult};
use crate::pipeline::{ambient_section, analyze, parabolic_section, root_labels};
use crate::report::*;
use crate::scenario::{Output, Scenario, SigmaInput, SCHEMA_VERSION};

pub const BUILTINS: [&str; 4] = ["o2n-theta", "d8-principal", "o8-ind-counts", "o2-cuspidality"];

pub fn run_builtin(name: &str, params: &BTreeMap<String, String>) -> CliResult<Report> {
    match name {
        "o2n-theta" => o2n_theta(params),
        "d8-principal" => {
            no_params(name, params, &[])?;
            d8_principal()
        }
        "o8-ind-counts" => {
            no_params(name, params, &["stabilizer_index"])?;
            o8_ind_counts(params)
        }
        "o2-cuspidality" => {
            no_params(name, params, &[])?;
            o2_cuspidality()
        }
        other => Err(CliError::Usage(format!(
            "unknown built-in {other:?}; available: {}",
            BUILTINS.join(", ")
        ))),
    }
}

fn no_params(name: &str, params: &BTreeMap<String, String>, allowed: &[&str]) -> CliResult<()> {
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "built-in {name} does not take parameter {k:?} (accepted: {})",
            if allowed.is_empty() { "none".to_string() } else { allowed.join(", ") }
        )));
    }
    Ok(())
}

fn z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(2).expect("Z/2")
}

/// `D_n` with the sign change `c_n` on the last coordinate.
pub fn orthogonal_even(n: usize) -> CliResult<ExtendedWeylGroup> {
    let rs = RootSystem::classical(RootType::D, n)?;
    let act = ComponentAction::new(&rs, z2(), vec![last_sign_change(n)])?;
    Ok(build_extended_weyl(&rs, &act)?)
}

fn parse_theta(spec: &str, dim: usize) -> CliResult<Vec<Root>> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "none" {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|s| parse_root(s, dim).map_err(|e| CliError::validation("param theta", e)))
        .collect()
}

fn o2n_theta(params: &BTreeMap<String, String>) -> CliResult<Report> {
    no_params("o2n-theta", params, &["n", "theta"])?;
    let n: usize = match params.get("n") {
        None => 4,
        Some(s) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("parameter n must be an integer, got {s:?}")))?,
    };
    if !(2..=6).contains(&n) {
        return Err(CliError::Usage(format!("parameter n must lie in 2..=6, got {n}")));
    }
    let default_theta = format!("e{}-e{}", n - 1, n);
    let theta = parse_theta(params.get("theta").unwrap_or(&default_theta), n)?;
    let g = orthogonal_even(n)?;
    let (section, line) = parabolic_section(&g, &theta)?;
    Ok(Report {
        schema: SCHEMA_VERSION,
        scenario: format!("o2n-theta(n={n})"),
        summary: format!("O({}) with Θ = {{{}}}: {line}", 2 * n, section.theta.join(", ")),
        ambient: Some(ambient_section(&g)),
        parabolic: Some(section),
        ..Report::default()
    })
}

fn o2_cuspidality() -> CliResult<Report> {
    let rs = RootSystem::torus(1)?;
    let minus = SignedPerm::from_matrix(&[vec![-1]])?;
    let act = ComponentAction::new(&rs, z2(), vec![minus])?;
    let g = build_extended_weyl(&rs, &act)?;
    let (section, _) = parabolic_section(&g, &[])?;
    let summary = format!(
        "the full group is {}cuspidal; the cuspidal parabolic over G⁰ meets {} component(s){}",
        if section.n_levi_is_cuspidal { "" } else { "not " },
        section.cuspidal_components,
        if section.cuspidal_components == 1 { " (connected)" } else { "" }
    );
    Ok(Report {
        schema: SCHEMA_VERSION,
        scenario: "o2-cuspidality".into(),
        summary,
        ambient: Some(ambient_section(&g)),
        parabolic: Some(section),
        ..Report::default()
    })
}

fn o8_ind_counts(params: &BTreeMap<String, String>) -> CliResult<Report> {
    let g = orthogonal_even(4)?;
    let theta1 = vec![parse_root("e3-e4", 4)?];
    let theta2 = vec![parse_root("e1-e2", 4)?];
    let levi1 = n_levi_component_image(&ParabolicDatum::from_roots(&g, &theta1)?)?;
    let levi2 = n_levi_component_image(&ParabolicDatum::from_roots(&g, &theta2)?)?;
    let gamma_m2 = FiniteAbelianGroup::cyclic(levi2.order() as u64)?;
    let stab: u64 = match params.get("stabilizer_index") {
        None => 2,
        Some(s) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("stabilizer_index must be an integer, got {s:?}")))?,
    };
    if stab == 0 || gamma_m2.order() as u64 % stab != 0 {
        return Err(CliError::validation(
            "param stabilizer_index",
            CoreError::InconsistentDatum(format!(
                "stabilizer index {stab} does not divide the component count {}",
                gamma_m2.order()
            )),
        ));
    }
    let solutions = solve_multiplicity(&gamma_m2, stab)?;
    let &(r, x) = solutions
        .first()
        .ok_or_else(|| CoreError::InconsistentDatum("no admissible multiplicity".into()))?;
    let inst = CliffordInstance::new(gamma_m2.clone(), stab, r, x)?;
    let orbit = gamma_m2.order() as u64 / stab;
    let census = restriction_census(&inst, orbit)?;
    let transfer = stabilizer_transfer_check(stab, stab);

    let summands: Vec<String> = if census.induction_length == 2 {
        vec!["Ind(σ₂)".into(), "Ind(σ₂⊗η)".into()]
    } else {
        (0..census.induction_length).map(|i| format!("Ind(σ₂,{i})")).collect()
    };
    let induction = InductionSection {
        connected_theta: root_labels(&theta1),
        disconnected_theta: root_labels(&theta2),
        connected_levi_components: levi1.order(),
        disconnected_levi_components: levi2.order(),
        stabilizer_index: stab,
        multiplicity_solutions: solutions.iter().map(|&(a, b)| [a, b]).collect(),
        induction_length: census.induction_length,
        summands,
        levis_conjugate: levi1.order() == levi2.order(),
        shares_constituents: census.induction_length >= 1,
        equivalent: census.induction_length == 1,
        intertwining_lower_bound: 1,
    };
    let clifford = CliffordSection {
        restriction: vec![RestrictionRow {
            label: "σ₀".into(),
            stabilizer_index: stab,
            multiplicity: census.multiplicity,
            x_mod_xpi: x,
            orbit_size: census.orbit_size,
            restriction_length: census.restriction_length,
            induction_length: census.induction_length,
        }],
        twist_orbits: vec![OrbitRow {
            labels: vec!["σ₀".into()],
            multiplicity: 1,
        }],
        predicted_constituents: x,
    };
    let mut notes = Vec::new();
    if !transfer.holds {
        notes.push(transfer.diagnostic);
    }
    let summary = if induction.equivalent {
        "induction from the connected Levi is equivalent to induction from the disconnected one".to_string()
    } else {
        format!(
            "Ind from the connected Levi splits into {} summands; the two induced representations share constituents but are not equivalent",
            census.induction_length
        )
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        scenario: "o8-ind-counts".into(),
        summary,
        ambient: Some(ambient_section(&g)),
        clifford: Some(clifford),
        induction: Some(induction),
        notes,
        ..Report::default()
    })
}

/// `A₁ × A₁` with `Γ = Z/2` swapping the factors.
pub fn swapped_a1_pair() -> CliResult<ExtendedWeylGroup> {
    let rs = RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)])?;
    let act = ComponentAction::new(&rs, z2(), vec![block_swap(4, 0, 2, 2)?])?;
    Ok(build_extended_weyl(&rs, &act)?)
}

/// The principal-series scenario on `SL₂ × SL₂` extended by the swap.
pub fn d8_scenario() -> CliResult<Scenario> {
    let g = swapped_a1_pair()?;
    let whole = Subgroup::whole(&g);
    let inner = g.inner();
    let (table, _) = GroupTable::from_subgroup(&g, &whole)?;
    let n = default_modulus(&table);
    let cocycle = Cocycle::trivial(table, n)?;
    Ok(Scenario {
        name: "d8-principal".into(),
        sigma: Some(SigmaInput {
            w_sigma: whole,
            phi1: Vec::new(),
            positive: None,
            inner: Some(inner),
            clifford: None,
        }),
        ambient: g,
        cocycle: Some(cocycle),
        central_character: None,
        theta: None,
        outputs: Output::ALL.into_iter().collect(),
    })
}

fn sign_of(v: &Cyclotomic, e: u64) -> i32 {
    match v.as_scaled_root(e) {
        Some((_, r)) if r == RootOfUnity::ONE => 1,
        Some((_, r)) if r == RootOfUnity::new(1, 2) => -1,
        _ => 0,
    }
}

fn letter(sign: i32) -> &'static str {
    if sign > 0 {
        "1"
    } else {
        "s"
    }
}

fn d8_principal() -> CliResult<Report> {
    let scenario = d8_scenario()?;
    let g = &scenario.ambient;
    let analysis = analyze(&scenario)?;
    let mut report = analysis.report;
    let p = analysis
        .parameterization
        .ok_or_else(|| CoreError::Computation("parameterization missing".into()))?;
    let r_members = analysis.r_members;
    let table = &p.table;
    let e = table.exponent();
    let ext = &p.extension;

    let s1 = g.reflection_index(&parse_root("e1-e2", 4)?)?;
    let s2 = g.reflection_index(&parse_root("e3-e4", 4)?)?;
    let swap = g
        .find(&block_swap(4, 0, 2, 2)?, 1)
        .ok_or_else(|| CoreError::Computation("swap not found".into()))?;
    let lift = |w: usize| -> usize {
        let pos = r_members.iter().position(|&m| m == w).expect("element of R");
        ext.pair_index(0, pos)
    };
    let value = |ci: usize, w: usize| -> &Cyclotomic {
        let class = table.class_of(lift(w)).expect("class");
        &table.characters()[ci].values[class]
    };

    // Label each constituent by its restriction to R⁰ and its sign on the swap.
    let mut labels = BTreeMap::new();
    if let Some(rows) = report.constituents.as_mut() {
        for row in rows.iter_mut() {
            let label = if row.degree == 1 {
                let i = letter(sign_of(value(row.character, s1), e));
                let base = format!("Π{i}{i}");
                if sign_of(value(row.character, swap), e) > 0 {
                    base
                } else {
                    format!("{base}⊗η")
                }
            } else {
                "Π1s".to_string()
            };
            row.label = label.clone();
            labels.insert(row.character, label);
        }
    }

    // η-twist orbits on the constituent block, and the representation
    // induced from the normalizer-style Borel.
    let eta_negative: Vec<bool> = table
        .classes()
        .iter()
        .map(|c| g.component(r_members[ext.project(c[0])]) != 0)
        .collect();
    let twisted = |ci: usize| -> Vec<Cyclotomic> {
        table.characters()[ci]
            .values
            .iter()
            .zip(&eta_negative)
            .map(|(v, &neg)| if neg { v.times_root(e / 2, e) } else { v.clone() })
            .collect()
    };
    let mut seen = BTreeSet::new();
    let mut n_constituents = Vec::new();
    for (&ci, label) in &labels {
        if !seen.insert(ci) {
            continue;
        }
        let tw = twisted(ci);
        let partner = labels
            .keys()
            .copied()
            .find(|&cj| cj != ci && table.characters()[cj].values == tw);
        let mut orbit = vec![label.clone()];
        if let Some(cj) = partner {
            seen.insert(cj);
            orbit.push(labels[&cj].clone());
        }
        let degree = table.characters()[ci].degree;
        n_constituents.push(OrbitRow {
            multiplicity: degree * orbit.len() as u64 / 2,
            labels: orbit,
        });
    }
    let intertwining_dimension = n_constituents.iter().map(|o| o.multiplicity.pow(2)).sum();
    let subgroup_orders = subgroup_orders(g)?;
    report.n_parabolic = Some(NParabolicSection {
        realized_by_subgroup_order: subgroup_orders.contains(&(intertwining_dimension as usize)),
        constituents: n_constituents,
        intertwining_dimension,
        subgroup_orders,
    });

    report.clifford = Some(identity_component_census(g, s1, s2, swap)?);
    report.summary = format!(
        "{}; constituents {}",
        report.summary,
        report
            .constituents
            .as_ref()
            .map(|c| c.iter().map(|r| format!("{}×{}", r.multiplicity, r.label)).collect::<Vec<_>>().join(" ⊕ "))
            .unwrap_or_default()
    );
    Ok(report)
}

/// Orders of all subgroups generated by at most two elements.
fn subgroup_orders(g: &ExtendedWeylGroup) -> CliResult<Vec<usize>> {
    let mut orders = BTreeSet::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            orders.insert(generate_subgroup(g, &[a, b])?.order());
        }
    }
    Ok(orders.into_iter().collect())
}

/// Clifford counts relating the constituents over `G⁰` (characters of
/// `R⁰ = W`) to those over `G`.
fn identity_component_census(g: &ExtendedWeylGroup, s1: usize, s2: usize, swap: usize) -> CliResult<CliffordSection> {
    let inner = g.inner();
    let (t0, map) = GroupTable::from_subgroup(g, &inner)?;
    let ct = character_table(&t0)?;
    let e = ct.exponent();
    let pos = |w: usize| map.iter().position(|&m| m == w).expect("inner element");
    let val = |ci: usize, w: usize| &ct.characters()[ci].values[ct.class_of(pos(w)).expect("class")];
    let labels: Vec<String> = (0..ct.characters().len())
        .map(|ci| format!("π{}{}", letter(sign_of(val(ci, s1), e)), letter(sign_of(val(ci, s2), e))))
        .collect();
    // γ·ρ = ρ(γ⁻¹ · γ), compared on every element of R⁰.
    let swap_inv = g.inv(swap);
    let conj_values = |ci: usize| -> Vec<Cyclotomic> {
        map.iter()
            .map(|&w| val(ci, g.mul(g.mul(swap_inv, w), swap)).clone())
            .collect()
    };
    let plain_values = |ci: usize| -> Vec<Cyclotomic> { map.iter().map(|&w| val(ci, w).clone()).collect() };
    let perm: Vec<usize> = (0..labels.len())
        .map(|ci| {
            let target = conj_values(ci);
            (0..labels.len()).find(|&cj| plain_values(cj) == target).expect("conjugate character")
        })
        .collect();
    let gamma = z2();
    let action = vec![(0..labels.len()).collect::<Vec<_>>(), perm];
    let orbits = twist_orbit_partition(&gamma, &labels, &action, &vec![1; labels.len()])?;
    let mut restriction = Vec::new();
    let mut predicted = 0;
    for o in &orbits {
        let orbit = o.labels.len() as u64;
        let stab = gamma.order() as u64 / orbit;
        let sols = solve_multiplicity(&gamma, stab)?;
        let &(r, x) = sols
            .first()
            .ok_or_else(|| CoreError::InconsistentDatum("no admissible multiplicity".into()))?;
        let census = restriction_census(&CliffordInstance::new(gamma.clone(), stab, r, x)?, orbit)?;
        predicted += x;
        restriction.push(RestrictionRow {
            label: labels[o.labels[0]].clone(),
            stabilizer_index: stab,
            multiplicity: r,
            x_mod_xpi: x,
            orbit_size: orbit,
            restriction_length: census.restriction_length,
            induction_length: census.induction_length,
        });
    }
    Ok(CliffordSection {
        restriction,
        twist_orbits: orbits
            .iter()
            .map(|o| OrbitRow {
                labels: o.labels.iter().map(|&i| labels[i].clone()).collect(),
                multiplicity: o.multiplicity,
            })
            .collect(),
        predicted_constituents: predicted,
    })
}
