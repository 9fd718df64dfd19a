//! Scenario documents: JSON schema, parsing with located errors, and
//! validation into domain objects.

use std::collections::BTreeSet;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use rgroups_core::clifford::FiniteAbelianGroup;
use rgroups_core::extension::{default_modulus, verify_cocycle, Cocycle};
use rgroups_core::groupcore::{generate_subgroup, GroupTable, Subgroup};
use rgroups_core::parabolic::ParabolicDatum;
use rgroups_core::rgroup::{r_group, stabilizer_index_identity, validate_sigma_datum, CliffordIndices, SigmaDatum};
use rgroups_core::rootsys::{
    build_extended_weyl, ComponentAction, ExtendedWeylGroup, Root, RootSystem, RootType, SignedPerm,
};
use rgroups_core::Error as CoreError;

use crate::error::{At, CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Parses a JSON document, reporting failures with the path into the
/// document together with line and column.
pub fn parse_document<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            location: format!("{path} (line {}, column {})", inner.line(), inner.column()),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| CliError::Parse {
        location: format!(". (line {}, column {})", e.line(), e.column()),
        message: e.to_string(),
    })?;
    Ok(value)
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn check_schema(schema: u32) -> CliResult<()> {
    if schema != SCHEMA_VERSION {
        return Err(CliError::validation(
            "schema",
            CoreError::Input(format!("unsupported schema version {schema} (expected {SCHEMA_VERSION})")),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub schema: u32,
    pub name: String,
    pub root_system: RootSystemSpec,
    #[serde(default)]
    pub component_action: Option<ActionSpec>,
    #[serde(default)]
    pub sigma: Option<SigmaSpec>,
    #[serde(default)]
    pub cocycle: Option<CocycleSpec>,
    #[serde(default)]
    pub central_character: Option<u64>,
    #[serde(default)]
    pub parabolic: Option<ParabolicSpec>,
    #[serde(default)]
    pub outputs: Option<Vec<Output>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RootSystemSpec {
    Components(Vec<ComponentSpec>),
    Explicit {
        label: String,
        dim: usize,
        positive_roots: Vec<Vec<i64>>,
    },
    Torus {
        dim: usize,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub invariant_factors: Vec<u64>,
    /// One integer matrix per invariant factor, row-major.
    pub generators: Vec<Vec<Vec<i64>>>,
}

/// An element of `W ⋊ Γ`, given either as a matrix with component
/// coordinates or as a reflection in a root.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub reflection: Option<Vec<i64>>,
    /// Exponents of the generators of Γ; omitted means the identity component.
    #[serde(default)]
    pub component: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSpec {
    /// Generators of `W(σ)`.
    pub w_sigma: Vec<ElementSpec>,
    pub phi1: Vec<Vec<i64>>,
    #[serde(default)]
    pub positive_roots: Option<Vec<Vec<i64>>>,
    /// Generators of the inner stabilizer `W_{G⁰}(σ)`.
    #[serde(default)]
    pub inner: Option<Vec<ElementSpec>>,
    #[serde(default)]
    pub clifford: Option<CliffordSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliffordSpec {
    pub s: u64,
    pub x_mod_xsigma: u64,
    pub x1_mod_xsigma: u64,
    /// Generators of the larger stabilizer `W_G(σ₀)`.
    pub w_sigma0: Vec<ElementSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CocycleSpec {
    Trivial {
        #[serde(default)]
        modulus: Option<u64>,
    },
    /// `values[a][b]` indexed by the elements of `R_σ` in increasing order.
    Table { modulus: u64, values: Vec<Vec<u64>> },
    Coboundary {
        #[serde(default)]
        modulus: Option<u64>,
        function: Vec<u64>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolicSpec {
    pub theta: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    RGroup,
    Dimension,
    Constituents,
    Coboundary,
    Parabolic,
    Projection,
    IndexIdentity,
}

impl Output {
    pub const ALL: [Output; 7] = [
        Output::RGroup,
        Output::Dimension,
        Output::Constituents,
        Output::Coboundary,
        Output::Parabolic,
        Output::Projection,
        Output::IndexIdentity,
    ];
}

/// Validated σ-datum inputs, owned so they can live beside the ambient.
#[derive(Debug, Clone)]
pub struct SigmaInput {
    pub w_sigma: Subgroup,
    pub phi1: Vec<Root>,
    pub positive: Option<Vec<Root>>,
    pub inner: Option<Subgroup>,
    pub clifford: Option<(CliffordIndices, Subgroup)>,
}

/// A fully validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub ambient: ExtendedWeylGroup,
    pub sigma: Option<SigmaInput>,
    pub cocycle: Option<Cocycle>,
    pub central_character: Option<u64>,
    pub theta: Option<Vec<Root>>,
    pub outputs: BTreeSet<Output>,
}

impl Scenario {
    pub fn sigma_datum(&self) -> Option<SigmaDatum<'_>> {
        self.sigma.as_ref().map(|s| {
            let mut d = SigmaDatum::new(&self.ambient, s.w_sigma.clone(), s.phi1.clone());
            if let Some(p) = &s.positive {
                d = d.with_positive(p.clone());
            }
            if let Some(i) = &s.inner {
                d = d.with_inner(i.clone());
            }
            if let Some((c, _)) = &s.clifford {
                d = d.with_clifford(*c);
            }
            d
        })
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }
}

pub fn load_scenario(path: &Path) -> CliResult<Scenario> {
    parse_scenario(&read_file(path)?)
}

pub fn parse_scenario(text: &str) -> CliResult<Scenario> {
    let doc: ScenarioDoc = parse_document(text)?;
    validate_scenario(doc)
}

pub fn build_root_system(spec: &RootSystemSpec) -> CliResult<RootSystem> {
    match spec {
        RootSystemSpec::Components(parts) => {
            if parts.is_empty() {
                return Err(CliError::validation(
                    "root_system.components",
                    CoreError::Input("at least one component is required".into()),
                ));
            }
            let parsed = parts
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    RootType::parse(&p.kind)
                        .map(|t| (t, p.rank))
                        .at(&format!("root_system.components[{i}].type"))
                })
                .collect::<CliResult<Vec<_>>>()?;
            RootSystem::product(&parsed).at("root_system.components")
        }
        RootSystemSpec::Explicit {
            label,
            dim,
            positive_roots,
        } => RootSystem::from_positive_roots(label, *dim, positive_roots.clone()).at("root_system.explicit"),
        RootSystemSpec::Torus { dim } => RootSystem::torus(*dim).at("root_system.torus"),
    }
}

pub fn build_ambient(rs: &RootSystemSpec, action: Option<&ActionSpec>) -> CliResult<ExtendedWeylGroup> {
    let rs = build_root_system(rs)?;
    let action = match action {
        None => ComponentAction::trivial(&rs),
        Some(a) => {
            let gamma = FiniteAbelianGroup::new(&a.invariant_factors).at("component_action.invariant_factors")?;
            let gens = a
                .generators
                .iter()
                .enumerate()
                .map(|(i, m)| SignedPerm::from_matrix(m).at(&format!("component_action.generators[{i}]")))
                .collect::<CliResult<Vec<_>>>()?;
            ComponentAction::new(&rs, gamma, gens).at("component_action")?
        }
    };
    build_extended_weyl(&rs, &action).at("root_system")
}

pub fn resolve_element(g: &ExtendedWeylGroup, spec: &ElementSpec, loc: &str) -> CliResult<usize> {
    let factors = g.gamma().invariant_factors().len();
    let coords = spec.component.clone().unwrap_or_else(|| vec![0; factors]);
    let component = g.gamma().index_of(&coords).at(&format!("{loc}.component"))?;
    match (&spec.matrix, &spec.reflection) {
        (Some(m), None) => {
            let m = SignedPerm::from_matrix(m).at(&format!("{loc}.matrix"))?;
            g.find(&m, component).ok_or_else(|| {
                CliError::validation(
                    format!("{loc}.matrix"),
                    CoreError::InconsistentDatum(format!(
                        "matrix {m} with component {coords:?} is not an element of the extended Weyl group"
                    )),
                )
            })
        }
        (None, Some(r)) => {
            if component != 0 {
                return Err(CliError::validation(
                    format!("{loc}.component"),
                    CoreError::Input("a reflection lies in the identity component".into()),
                ));
            }
            g.reflection_index(r).at(&format!("{loc}.reflection"))
        }
        _ => Err(CliError::validation(
            loc,
            CoreError::Input("give exactly one of \"matrix\" and \"reflection\"".into()),
        )),
    }
}

pub fn resolve_subgroup(g: &ExtendedWeylGroup, gens: &[ElementSpec], loc: &str) -> CliResult<Subgroup> {
    let idx = gens
        .iter()
        .enumerate()
        .map(|(i, e)| resolve_element(g, e, &format!("{loc}[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    generate_subgroup(g, &idx).at(loc)
}

pub fn validate_scenario(doc: ScenarioDoc) -> CliResult<Scenario> {
    check_schema(doc.schema)?;
    if doc.name.trim().is_empty() {
        return Err(CliError::validation("name", CoreError::Input("scenario name is empty".into())));
    }
    let ambient = build_ambient(&doc.root_system, doc.component_action.as_ref())?;

    let sigma = match &doc.sigma {
        None => None,
        Some(s) => {
            let w_sigma = resolve_subgroup(&ambient, &s.w_sigma, "sigma.w_sigma")?;
            let inner = s
                .inner
                .as_ref()
                .map(|gens| resolve_subgroup(&ambient, gens, "sigma.inner"))
                .transpose()?;
            let clifford = s
                .clifford
                .as_ref()
                .map(|c| {
                    let w0 = resolve_subgroup(&ambient, &c.w_sigma0, "sigma.clifford.w_sigma0")?;
                    let idx = CliffordIndices {
                        s: c.s,
                        x_mod_xsigma: c.x_mod_xsigma,
                        x1_mod_xsigma: c.x1_mod_xsigma,
                    };
                    Ok::<_, CliError>((idx, w0))
                })
                .transpose()?;
            Some(SigmaInput {
                w_sigma,
                phi1: s.phi1.clone(),
                positive: s.positive_roots.clone(),
                inner,
                clifford,
            })
        }
    };

    let mut scenario = Scenario {
        name: doc.name.clone(),
        ambient,
        sigma,
        cocycle: None,
        central_character: doc.central_character,
        theta: doc.parabolic.as_ref().map(|p| p.theta.clone()),
        outputs: doc
            .outputs
            .as_ref()
            .map(|o| o.iter().copied().collect())
            .unwrap_or_else(|| Output::ALL.into_iter().collect()),
    };

    if let Some(d) = scenario.sigma_datum() {
        let v = validate_sigma_datum(d).at("sigma")?;
        if let Some((_, w0)) = &scenario.sigma.as_ref().expect("datum implies sigma").clifford {
            stabilizer_index_identity(&v, w0).at("sigma.clifford")?;
        }
        if let Some(spec) = &doc.cocycle {
            let r = r_group(&v).at("sigma")?;
            let (table, _) = GroupTable::from_subgroup(&scenario.ambient, &r).at("sigma")?;
            let cocycle = build_cocycle(table, spec, "cocycle")?;
            scenario.cocycle = Some(cocycle);
        }
    } else if doc.cocycle.is_some() {
        return Err(CliError::validation(
            "cocycle",
            CoreError::Input("a cocycle needs a sigma datum to define its R-group".into()),
        ));
    }
    if let Some(theta) = &scenario.theta {
        ParabolicDatum::from_roots(&scenario.ambient, theta).at("parabolic.theta")?;
    }
    Ok(scenario)
}

pub fn build_cocycle(base: GroupTable, spec: &CocycleSpec, loc: &str) -> CliResult<Cocycle> {
    let c = match spec {
        CocycleSpec::Trivial { modulus } => {
            let n = modulus.unwrap_or_else(|| default_modulus(&base));
            Cocycle::trivial(base, n).at(loc)?
        }
        CocycleSpec::Table { modulus, values } => Cocycle::from_table(base, *modulus, values).at(&format!("{loc}.table"))?,
        CocycleSpec::Coboundary { modulus, function } => {
            let n = modulus.unwrap_or_else(|| default_modulus(&base));
            Cocycle::coboundary(base, n, function).at(&format!("{loc}.coboundary"))?
        }
    };
    let check = verify_cocycle(&c);
    if let Some(v) = check.first_violation {
        return Err(CliError::validation(
            loc,
            CoreError::Input(format!("not a normalized 2-cocycle: {v:?}")),
        ));
    }
    Ok(c)
}
