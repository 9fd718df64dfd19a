//! Group and double-coset documents for the `chartable` and `doublecosets`
//! subcommands.

use serde::{Deserialize, Serialize};

use rgroups_core::extension::{build_extension, character_table, format_complex, Cocycle, TableMethod};
use rgroups_core::groupcore::{generate_subgroup, FiniteGroup, GroupTable, Subgroup};
use rgroups_core::parabolic::double_coset_census;
use rgroups_core::rootsys::ExtendedWeylGroup;

use crate::error::{At, CliResult};
use crate::report::{to_sorted_json, Format};
use crate::scenario::{
    build_ambient, check_schema, parse_document, resolve_element, ActionSpec, ElementSpec, RootSystemSpec,
    SCHEMA_VERSION,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub schema: u32,
    pub name: String,
    pub group: GroupSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    Dihedral { order: usize },
    Dicyclic { order: usize },
    Product(Vec<GroupSpec>),
    Table { rows: Vec<Vec<usize>> },
    /// Central extension of `base` by `Z/modulus` along a cocycle table.
    Extension {
        base: Box<GroupSpec>,
        modulus: u64,
        cocycle: Vec<Vec<u64>>,
    },
}

pub fn build_group(spec: &GroupSpec, loc: &str) -> CliResult<GroupTable> {
    match spec {
        GroupSpec::Cyclic { order } => GroupTable::cyclic(*order).at(&format!("{loc}.cyclic")),
        GroupSpec::Dihedral { order } => GroupTable::dihedral(*order).at(&format!("{loc}.dihedral")),
        GroupSpec::Dicyclic { order } => GroupTable::dicyclic(*order).at(&format!("{loc}.dicyclic")),
        GroupSpec::Product(parts) => {
            let mut acc = GroupTable::cyclic(1).at(loc)?;
            for (i, p) in parts.iter().enumerate() {
                let factor = build_group(p, &format!("{loc}.product[{i}]"))?;
                acc = GroupTable::direct_product(&acc, &factor).at(&format!("{loc}.product[{i}]"))?;
            }
            Ok(acc)
        }
        GroupSpec::Table { rows } => GroupTable::from_rows(rows.clone()).at(&format!("{loc}.table")),
        GroupSpec::Extension { base, modulus, cocycle } => {
            let loc = format!("{loc}.extension");
            let base = build_group(base, &format!("{loc}.base"))?;
            let c = Cocycle::from_table(base, *modulus, cocycle).at(&format!("{loc}.cocycle"))?;
            let ext = build_extension(&c).at(&format!("{loc}.cocycle"))?;
            Ok(ext.total().clone())
        }
    }
}

pub fn load_group(text: &str) -> CliResult<(String, GroupTable)> {
    let doc: GroupDoc = parse_document(text)?;
    check_schema(doc.schema)?;
    Ok((doc.name.clone(), build_group(&doc.group, "group")?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharTableReport {
    pub schema: u32,
    pub group: String,
    pub order: usize,
    pub exponent: u64,
    pub method: String,
    pub class_sizes: Vec<usize>,
    pub class_representatives: Vec<String>,
    pub degrees: Vec<u64>,
    /// Values rounded for display, one row per character.
    pub values: Vec<Vec<String>>,
    /// Exact values as `(t, μ)` pairs meaning `Σ μ·ζ_e^t`.
    pub exact: Vec<Vec<Vec<[u32; 2]>>>,
    pub orthogonality_residual: f64,
    pub degree_residual: f64,
}

pub fn chartable_report(name: &str, g: &GroupTable) -> CliResult<(CharTableReport, String)> {
    let ct = character_table(g)?;
    let report = CharTableReport {
        schema: SCHEMA_VERSION,
        group: name.to_string(),
        order: ct.group_order(),
        exponent: ct.exponent(),
        method: match ct.method() {
            TableMethod::AbelianDual => "abelian-dual".into(),
            TableMethod::Dixon { prime } => format!("dixon-mod-{prime}"),
        },
        class_sizes: ct.class_sizes(),
        class_representatives: ct.classes().iter().map(|c| g.element_label(c[0])).collect(),
        degrees: ct.degrees(),
        values: ct
            .complex_values()
            .iter()
            .map(|row| row.iter().map(|&(re, im)| format_complex(re, im)).collect())
            .collect(),
        exact: ct
            .characters()
            .iter()
            .map(|ch| ch.values.iter().map(|v| v.terms().iter().map(|&(t, m)| [t, m]).collect()).collect())
            .collect(),
        orthogonality_residual: ct.orthogonality_residual(),
        degree_residual: ct.degree_residual(),
    };
    Ok((report, format!("{name} (order {})\n{ct}", g.order())))
}

pub fn emit_chartable(name: &str, g: &GroupTable, format: Format) -> CliResult<String> {
    let (report, human) = chartable_report(name, g)?;
    Ok(match format {
        Format::Machine => to_sorted_json(&report),
        Format::Human => human,
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCosetDoc {
    pub schema: u32,
    pub name: String,
    pub root_system: RootSystemSpec,
    #[serde(default)]
    pub component_action: Option<ActionSpec>,
    pub left: SubgroupSpec,
    pub right: SubgroupSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SubgroupSpec {
    Generators(Vec<ElementSpec>),
    /// Subgroup generated by the reflections in the listed roots.
    Parabolic(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCosetReport {
    pub schema: u32,
    pub name: String,
    pub group_order: usize,
    pub left_order: usize,
    pub right_order: usize,
    pub count: usize,
    pub cosets: Vec<DoubleCosetRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCosetRow {
    pub representative: String,
    pub size: usize,
    pub length_proxy: usize,
}

fn build_subgroup(g: &ExtendedWeylGroup, spec: &SubgroupSpec, loc: &str) -> CliResult<Subgroup> {
    let gens = match spec {
        SubgroupSpec::Generators(els) => els
            .iter()
            .enumerate()
            .map(|(i, e)| resolve_element(g, e, &format!("{loc}.generators[{i}]")))
            .collect::<CliResult<Vec<_>>>()?,
        SubgroupSpec::Parabolic(roots) => roots
            .iter()
            .enumerate()
            .map(|(i, r)| g.reflection_index(r).at(&format!("{loc}.parabolic[{i}]")))
            .collect::<CliResult<Vec<_>>>()?,
    };
    generate_subgroup(g, &gens).at(loc)
}

pub fn double_coset_report(text: &str) -> CliResult<DoubleCosetReport> {
    let doc: DoubleCosetDoc = parse_document(text)?;
    check_schema(doc.schema)?;
    let g = build_ambient(&doc.root_system, doc.component_action.as_ref())?;
    let left = build_subgroup(&g, &doc.left, "left")?;
    let right = build_subgroup(&g, &doc.right, "right")?;
    let census = double_coset_census(&g, &left, &right)?;
    Ok(DoubleCosetReport {
        schema: SCHEMA_VERSION,
        name: doc.name,
        group_order: g.order(),
        left_order: left.order(),
        right_order: right.order(),
        count: census.len(),
        cosets: census
            .iter()
            .map(|d| DoubleCosetRow {
                representative: g.element_label(d.representative),
                size: d.size,
                length_proxy: d.length_proxy,
            })
            .collect(),
    })
}

pub fn render_double_cosets(r: &DoubleCosetReport, format: Format) -> String {
    match format {
        Format::Machine => to_sorted_json(r),
        Format::Human => {
            let mut s = format!(
                "{}: {} double coset(s) of ({}, {}) in a group of order {}\n",
                r.name, r.count, r.left_order, r.right_order, r.group_order
            );
            for c in &r.cosets {
                s.push_str(&format!("  {:<24} size {:>5}  length {}\n", c.representative, c.size, c.length_proxy));
            }
            s
        }
    }
}
