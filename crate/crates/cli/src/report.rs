//! Reports and their human and machine renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_group: Option<RGroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_commuting_algebra: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<DimensionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constituents: Option<Vec<ConstituentRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_identity: Option<IndexIdentitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<ParabolicSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford: Option<CliffordSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_parabolic: Option<NParabolicSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induction: Option<InductionSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSection {
    pub label: String,
    pub dim: usize,
    pub rank: usize,
    pub weyl_order: usize,
    pub gamma: Vec<u64>,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RGroupSection {
    pub w_sigma_order: usize,
    pub phi1: Vec<String>,
    pub reflection_subgroup_order: usize,
    pub order: usize,
    pub census: BTreeMap<u64, u64>,
    pub elements: Vec<String>,
    pub semidirect: SemidirectSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectSection {
    pub normal: bool,
    pub trivial_intersection: bool,
    pub order_product: bool,
    pub covers: bool,
    pub unique_factorization: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionSection {
    pub via_r_group: u64,
    pub via_quotient: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via_inner: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via_degrees: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSection {
    pub modulus: u64,
    pub order: usize,
    pub census: BTreeMap<u64, u64>,
    /// `[k, n]` for the central character `z ↦ exp(2πi·kz/n)`.
    pub central_character: [u64; 2],
    pub degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_coboundary: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstituentRow {
    pub character: usize,
    pub label: String,
    pub degree: u64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionSection {
    pub source_order: usize,
    pub kernel_order: usize,
    pub image_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexIdentitySection {
    pub factor: u64,
    pub ratio: u64,
    pub dim_sigma: u64,
    pub dim_sigma0: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolicSection {
    pub theta: Vec<String>,
    pub a_theta_dimension: usize,
    pub base_normalizer_order: usize,
    pub w_theta_order: usize,
    pub w_theta: Vec<String>,
    pub n_levi_components: usize,
    pub cuspidal_components: usize,
    pub n_levi_is_cuspidal: bool,
    pub anomalies: Vec<AnomalyRow>,
    pub minimal_n_parabolic_exists: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnomalyRow {
    pub smaller: Vec<String>,
    pub larger: Vec<String>,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliffordSection {
    pub restriction: Vec<RestrictionRow>,
    pub twist_orbits: Vec<OrbitRow>,
    /// Constituents of the full induced representation predicted by the
    /// orbit and induction counts.
    pub predicted_constituents: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRow {
    pub label: String,
    pub stabilizer_index: u64,
    pub multiplicity: u64,
    pub x_mod_xpi: u64,
    pub orbit_size: u64,
    pub restriction_length: u64,
    pub induction_length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRow {
    pub labels: Vec<String>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NParabolicSection {
    /// Constituents of the representation induced from the normalizer-style
    /// parabolic, with multiplicities.
    pub constituents: Vec<OrbitRow>,
    pub intertwining_dimension: u64,
    pub subgroup_orders: Vec<usize>,
    pub realized_by_subgroup_order: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InductionSection {
    pub connected_theta: Vec<String>,
    pub disconnected_theta: Vec<String>,
    pub connected_levi_components: usize,
    pub disconnected_levi_components: usize,
    pub stabilizer_index: u64,
    pub multiplicity_solutions: Vec<[u64; 2]>,
    pub induction_length: u64,
    pub summands: Vec<String>,
    pub levis_conjugate: bool,
    pub shares_constituents: bool,
    pub equivalent: bool,
    pub intertwining_lower_bound: u64,
}

/// Renders a report; the machine form is pretty JSON with sorted keys.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Machine => to_sorted_json(report),
        Format::Human => render_human(report),
    }
}

pub(crate) fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> CliResult<Report> {
    crate::scenario::parse_document(text).map_err(|e| match e {
        CliError::Parse { location, message } => CliError::Parse {
            location,
            message: format!("report: {message}"),
        },
        other => other,
    })
}

fn is_trivial(r: &Report) -> bool {
    r.dim_commuting_algebra == Some(1) && r.parabolic.is_none() && r.clifford.is_none() && r.induction.is_none()
}

fn census(c: &BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = c.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_human(r: &Report) -> String {
    if is_trivial(r) {
        return format!("{}: irreducible (R-group trivial, dim C = 1)\n", r.scenario);
    }
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", r.scenario);
    let _ = writeln!(out, "summary: {}", r.summary);
    if let Some(a) = &r.ambient {
        let _ = writeln!(
            out,
            "ambient: {} (dim {}, rank {}), |W| = {}, Γ = {:?}, |W ⋊ Γ| = {}",
            a.label, a.dim, a.rank, a.weyl_order, a.gamma, a.order
        );
    }
    if let Some(g) = &r.r_group {
        let _ = writeln!(out, "|W(σ)| = {}, Φ₁ = [{}]", g.w_sigma_order, g.phi1.join(", "));
        let _ = writeln!(out, "|W(Φ₁)| = {}", g.reflection_subgroup_order);
        let _ = writeln!(out, "|R_σ| = {}, element orders {}", g.order, census(&g.census));
        let s = &g.semidirect;
        let _ = writeln!(
            out,
            "W(σ) = W(Φ₁) ⋊ R_σ: normal {}, trivial intersection {}, orders multiply {}, covers {}, unique factorization {}",
            yes(s.normal),
            yes(s.trivial_intersection),
            yes(s.order_product),
            yes(s.covers),
            yes(s.unique_factorization)
        );
    }
    if let Some(d) = &r.dimension {
        let mut line = format!("dim C(σ): |R_σ| = {}, |W(σ)|/|W(Φ₁)| = {}", d.via_r_group, d.via_quotient);
        if let Some(x) = d.via_inner {
            let _ = write!(line, ", inner route = {x}");
        }
        if let Some(x) = d.via_degrees {
            let _ = write!(line, ", Σ deg² = {x}");
        }
        let _ = writeln!(out, "{line}");
    }
    if let Some(e) = &r.extension {
        let _ = writeln!(
            out,
            "extension: modulus {}, order {}, element orders {}, central character {}/{}",
            e.modulus,
            e.order,
            census(&e.census),
            e.central_character[0],
            e.central_character[1]
        );
        if let Some(b) = e.is_coboundary {
            let _ = writeln!(out, "cocycle is a coboundary: {}", yes(b));
        }
    }
    if let Some(cs) = &r.constituents {
        let _ = writeln!(out, "constituents:");
        for c in cs {
            let _ = writeln!(
                out,
                "  {:<12} degree {}  multiplicity {}",
                c.label, c.degree, c.multiplicity
            );
        }
    }
    if let Some(p) = &r.projection {
        let _ = writeln!(
            out,
            "projection onto components: source {}, kernel {}, image {}",
            p.source_order, p.kernel_order, p.image_order
        );
    }
    if let Some(i) = &r.index_identity {
        let _ = writeln!(
            out,
            "index identity: s²[X : X(σ)][X₁(σ) : X(σ)] = {} = [W_G(σ₀) : W_G(σ)]; dim C(σ₀) = {}",
            i.factor, i.dim_sigma0
        );
    }
    if let Some(p) = &r.parabolic {
        let _ = writeln!(out, "Θ = {{{}}}, dim a_Θ = {}", p.theta.join(", "), p.a_theta_dimension);
        let _ = writeln!(out, "|W_G(P₀, A₀)| = {}, |W(Θ)| = {}", p.base_normalizer_order, p.w_theta_order);
        let _ = writeln!(
            out,
            "N-Levi meets {} component(s); cuspidal Levi meets {}; N-Levi cuspidal: {}",
            p.n_levi_components,
            p.cuspidal_components,
            yes(p.n_levi_is_cuspidal)
        );
        for a in &p.anomalies {
            let _ = writeln!(
                out,
                "containment anomaly: {{{}}} ⊂ {{{}}} but W(Θ) not nested (witness {})",
                a.smaller.join(", "),
                a.larger.join(", "),
                a.witness
            );
        }
        let _ = writeln!(out, "minimal N-parabolic exists: {}", yes(p.minimal_n_parabolic_exists));
    }
    if let Some(c) = &r.clifford {
        for row in &c.restriction {
            let _ = writeln!(
                out,
                "{}: [G_π : G⁰] = {}, r = {}, [X : X(Π)] = {}, orbit {}, restriction length {}, induction length {}",
                row.label,
                row.stabilizer_index,
                row.multiplicity,
                row.x_mod_xpi,
                row.orbit_size,
                row.restriction_length,
                row.induction_length
            );
        }
        for o in &c.twist_orbits {
            let _ = writeln!(out, "twist orbit {{{}}} multiplicity {}", o.labels.join(", "), o.multiplicity);
        }
        let _ = writeln!(out, "constituents predicted by Clifford counts: {}", c.predicted_constituents);
    }
    if let Some(n) = &r.n_parabolic {
        let parts: Vec<String> = n
            .constituents
            .iter()
            .map(|o| format!("{}×{}", o.multiplicity, o.labels.join("/")))
            .collect();
        let _ = writeln!(
            out,
            "induced from the N-parabolic: {}; intertwining dimension {}; subgroup orders {:?}",
            parts.join(" ⊕ "),
            n.intertwining_dimension,
            n.subgroup_orders
        );
    }
    if let Some(i) = &r.induction {
        let _ = writeln!(
            out,
            "connected Levi {{{}}} meets {} component(s); Levi {{{}}} meets {}",
            i.connected_theta.join(", "),
            i.connected_levi_components,
            i.disconnected_theta.join(", "),
            i.disconnected_levi_components
        );
        let _ = writeln!(
            out,
            "induction length {} ({}); equivalent: {}; shares constituents: {}",
            i.induction_length,
            i.summands.join(" ⊕ "),
            yes(i.equivalent),
            yes(i.shares_constituents)
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}
