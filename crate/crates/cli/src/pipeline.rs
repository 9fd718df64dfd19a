//! Runs a validated scenario through the core library and assembles a report.

use std::collections::BTreeMap;

use rgroups_core::extension::{is_coboundary, parameterize_components, Cocycle, Parameterization};
use rgroups_core::groupcore::{order_census, order_census_in, FiniteGroup, GroupTable, Subgroup};
use rgroups_core::parabolic::{
    base_normalizer, containment_anomalies, cuspidal_levi_components, is_cuspidal_levi, minimal_nparabolic_exists,
    n_levi_component_image, theta_stabilizer, ParabolicDatum,
};
use rgroups_core::rgroup::{
    dim_commuting_algebra, projection_check, semidirect_decompose, stabilizer_index_identity, validate_sigma_datum,
};
use rgroups_core::rootsys::{format_root, ExtendedWeylGroup, Root};
use rgroups_core::Error as CoreError;

use crate::error::CliResult;
use crate::report::*;
use crate::scenario::{Output, Scenario, SCHEMA_VERSION};

/// Intermediate results kept for callers that post-process a report.
pub struct Analysis {
    pub report: Report,
    /// Members of `R_σ` in increasing order (the indexing of the cocycle).
    pub r_members: Vec<usize>,
    pub parameterization: Option<Parameterization>,
}

pub(crate) fn census_u64(c: BTreeMap<usize, usize>) -> BTreeMap<u64, u64> {
    c.into_iter().map(|(k, v)| (k as u64, v as u64)).collect()
}

pub(crate) fn root_labels(roots: &[Root]) -> Vec<String> {
    roots.iter().map(|r| format_root(r)).collect()
}

pub fn ambient_section(g: &ExtendedWeylGroup) -> AmbientSection {
    let rs = g.root_system();
    AmbientSection {
        label: rs.label().to_string(),
        dim: rs.dim(),
        rank: rs.rank(),
        weyl_order: g.weyl_order(),
        gamma: g.gamma().invariant_factors().to_vec(),
        order: g.order(),
    }
}

pub fn run_scenario(s: &Scenario) -> CliResult<Report> {
    Ok(analyze(s)?.report)
}

pub fn analyze(s: &Scenario) -> CliResult<Analysis> {
    let g = &s.ambient;
    let mut report = Report {
        schema: SCHEMA_VERSION,
        scenario: s.name.clone(),
        ambient: Some(ambient_section(g)),
        ..Report::default()
    };
    let mut r_members = Vec::new();
    let mut parameterization = None;
    let mut summary = Vec::new();

    if let Some(d) = s.sigma_datum() {
        let v = validate_sigma_datum(d)?;
        let dec = semidirect_decompose(&v)?;
        let dim = dim_commuting_algebra(&v)?;
        let r = &dec.r_group;
        r_members = r.members().to_vec();
        if s.wants(Output::RGroup) {
            report.r_group = Some(RGroupSection {
                w_sigma_order: v.w_sigma().order(),
                phi1: root_labels(v.phi1()),
                reflection_subgroup_order: dec.reflection_subgroup.order(),
                order: r.order(),
                census: census_u64(order_census_in(g, r)),
                elements: r.members().iter().map(|&x| g.element_label(x)).collect(),
                semidirect: SemidirectSection {
                    normal: dec.check.normal,
                    trivial_intersection: dec.check.trivial_intersection,
                    order_product: dec.check.order_product,
                    covers: dec.check.covers,
                    unique_factorization: dec.factorization.len() == v.w_sigma().order(),
                },
            });
        }
        report.dim_commuting_algebra = Some(dim.value() as u64);
        let mut dimension = DimensionSection {
            via_r_group: dim.via_r_group as u64,
            via_quotient: dim.via_quotient as u64,
            via_inner: dim.via_inner.map(|x| x as u64),
            via_degrees: None,
        };

        if s.wants(Output::Constituents) {
            let default;
            let cocycle = match &s.cocycle {
                Some(c) => c,
                None => {
                    let (table, _) = GroupTable::from_subgroup(g, r)?;
                    default = Cocycle::trivial(table, 1)?;
                    &default
                }
            };
            let p = parameterize_components(&v, cocycle, s.central_character)?;
            let via_degrees: u64 = p.constituents.iter().map(|c| c.degree * c.degree).sum();
            dimension.via_degrees = Some(via_degrees);
            let mut ext = ExtensionSection {
                modulus: cocycle.modulus(),
                order: p.extension.total().order(),
                census: census_u64(order_census(p.extension.total())),
                central_character: [p.central_character, cocycle.modulus()],
                degrees: p.table.degrees(),
                is_coboundary: None,
                splitting: None,
            };
            if s.wants(Output::Coboundary) {
                match is_coboundary(cocycle) {
                    Ok(res) => {
                        ext.is_coboundary = Some(res.is_coboundary);
                        ext.splitting = res.splitting;
                    }
                    Err(CoreError::Undecided(msg)) => report.notes.push(format!("coboundary test undecided: {msg}")),
                    Err(e) => return Err(e.into()),
                }
            }
            report.extension = Some(ext);
            report.constituents = Some(
                p.constituents
                    .iter()
                    .map(|c| ConstituentRow {
                        character: c.character,
                        label: format!("ρ{}", c.character),
                        degree: c.degree,
                        multiplicity: c.multiplicity,
                    })
                    .collect(),
            );
            summary.push(format!("{} constituent(s)", p.constituents.len()));
            parameterization = Some(p);
        }
        if s.wants(Output::Dimension) {
            report.dimension = Some(dimension);
        }
        if s.wants(Output::Projection) {
            report.projection = Some(component_projection(g, v.w_sigma())?);
        }
        if s.wants(Output::IndexIdentity) {
            if let Some((_, w0)) = s.sigma.as_ref().and_then(|x| x.clifford.as_ref()) {
                let rep = stabilizer_index_identity(&v, w0)?;
                report.index_identity = Some(IndexIdentitySection {
                    factor: rep.factor,
                    ratio: rep.ratio,
                    dim_sigma: rep.dim_sigma,
                    dim_sigma0: rep.dim_sigma0,
                });
            }
        }
        let head = if r.order() == 1 {
            "R-group trivial; induced representation irreducible".to_string()
        } else {
            format!("R-group of order {}", r.order())
        };
        summary.insert(0, head);
        summary.insert(1, format!("dim C(σ) = {}", dim.value()));
    }

    if let Some(theta) = &s.theta {
        if s.wants(Output::Parabolic) {
            let (section, line) = parabolic_section(g, theta)?;
            report.parabolic = Some(section);
            summary.push(line);
        }
    }
    report.summary = if summary.is_empty() {
        format!("ambient {} of order {}", g.root_system().label(), g.order())
    } else {
        summary.join("; ")
    };
    Ok(Analysis {
        report,
        r_members,
        parameterization,
    })
}

/// Checks that `W(σ) → Γ` is a surjection onto its image with kernel
/// `W(σ) ∩ W`.
pub fn component_projection(g: &ExtendedWeylGroup, source: &Subgroup) -> CliResult<ProjectionSection> {
    let gamma = g.gamma();
    let comps: Vec<usize> = source.members().iter().map(|&w| g.component(w)).collect();
    let image = Subgroup::from_members(gamma, &comps)?;
    let (target, map) = GroupTable::from_subgroup(gamma, &image)?;
    let labeling: Vec<usize> = comps
        .iter()
        .map(|c| map.iter().position(|m| m == c).expect("component lies in the image"))
        .collect();
    let kernel = source.intersection(&g.inner());
    let rep = projection_check(g, source, &kernel, &target, &labeling)?;
    Ok(ProjectionSection {
        source_order: rep.source_order,
        kernel_order: rep.kernel_order,
        image_order: rep.image_order,
    })
}

pub fn parabolic_section(g: &ExtendedWeylGroup, theta: &[Root]) -> CliResult<(ParabolicSection, String)> {
    let datum = ParabolicDatum::from_roots(g, theta)?;
    let base = base_normalizer(g)?;
    let w_theta = theta_stabilizer(&datum)?;
    let levi = n_levi_component_image(&datum)?;
    let cusp = cuspidal_levi_components(&datum)?;
    let cuspidal = is_cuspidal_levi(&datum, &levi)?;
    let simple = g.root_system().simple_roots();
    let names = |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| format_root(&simple[i])).collect() };
    let anomalies = containment_anomalies(g)?
        .into_iter()
        .map(|a| AnomalyRow {
            smaller: names(&a.smaller),
            larger: names(&a.larger),
            witness: g.element_label(a.witness),
        })
        .collect();
    let minimal = minimal_nparabolic_exists(g)?;
    let section = ParabolicSection {
        theta: root_labels(&datum.theta_roots()),
        a_theta_dimension: datum.a_theta().len(),
        base_normalizer_order: base.order(),
        w_theta_order: w_theta.order(),
        w_theta: w_theta.members().iter().map(|&x| g.element_label(x)).collect(),
        n_levi_components: levi.order(),
        cuspidal_components: cusp.order(),
        n_levi_is_cuspidal: cuspidal,
        anomalies,
        minimal_n_parabolic_exists: minimal.exists,
        minimal_witness: minimal.witness.as_deref().map(names),
    };
    let line = format!(
        "|W(Θ)| = {}; N-Levi meets {} component(s){}",
        section.w_theta_order,
        section.n_levi_components,
        if cuspidal { "" } else { " and is not cuspidal" }
    );
    Ok((section, line))
}
