//! 2-cocycles on R-groups, the central extensions they define, and the
//! parameterization of induced-representation constituents by characters of
//! the extension with a prescribed central character.

mod chartable;
mod modp;

pub use chartable::{character_table, format_complex, Character, CharacterTable, Cyclotomic, TableMethod};

use crate::clifford::RootOfUnity;
use crate::error::{inconsistent, input_err, violation, Error, Result};
use crate::groupcore::{element_order, is_normal, FiniteGroup, GroupTable, Subgroup, MAX_TABLE_ORDER};
use crate::rgroup::{dim_commuting_algebra, r_group, ValidSigma};

/// Largest nominal search space `n^(|R|-1)` that [`is_coboundary`] accepts.
pub const COBOUNDARY_SEARCH_LIMIT: u64 = 1 << 24;

/// A normalized 2-cocycle `η : R × R → Z/n`, stored as exponents.
#[derive(Debug, Clone)]
pub struct Cocycle {
    base: GroupTable,
    modulus: u64,
    values: Vec<u64>,
}

impl Cocycle {
    /// Wraps an explicit table `rows[a][b] = η(a, b)`; entries are reduced
    /// modulo `modulus`. The cocycle identity is not checked here.
    pub fn from_table(base: GroupTable, modulus: u64, rows: &[Vec<u64>]) -> Result<Self> {
        if modulus == 0 {
            return Err(input_err!("cocycle modulus must be at least 1"));
        }
        let n = base.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(input_err!("cocycle table must be {n}×{n}"));
        }
        let values = rows.iter().flatten().map(|&x| x % modulus).collect();
        Ok(Cocycle { base, modulus, values })
    }

    pub fn trivial(base: GroupTable, modulus: u64) -> Result<Self> {
        let n = base.order();
        Self::from_table(base, modulus, &vec![vec![0; n]; n])
    }

    /// `η(a, b) = c(a) + c(b) - c(ab)`.
    pub fn coboundary(base: GroupTable, modulus: u64, c: &[u64]) -> Result<Self> {
        let n = base.order();
        if c.len() != n {
            return Err(input_err!("coboundary needs {n} values, got {}", c.len()));
        }
        if modulus == 0 {
            return Err(input_err!("cocycle modulus must be at least 1"));
        }
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (c[a] % modulus + c[b] % modulus + modulus - c[base.mul(a, b)] % modulus) % modulus)
                    .collect()
            })
            .collect();
        Self::from_table(base, modulus, &rows)
    }

    /// Pointwise sum, i.e. the product of the underlying `C^×`-valued cocycles.
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if !self.base.same_table(&other.base) || self.modulus != other.modulus {
            return Err(input_err!("cocycles live on different groups or moduli"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Ok(Cocycle {
            base: self.base.clone(),
            modulus: self.modulus,
            values,
        })
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn value(&self, a: usize, b: usize) -> u64 {
        self.values[a * self.base.order() + b]
    }
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.values.chunks(self.base.order()).map(<[u64]>::to_vec).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// Least common multiple of the element orders of `g`.
pub fn default_modulus<G: FiniteGroup + ?Sized>(g: &G) -> u64 {
    (0..g.order()).fold(1, |acc, x| num_integer::lcm(acc, element_order(g, x) as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `η(1, w)` or `η(w, 1)` is nonzero.
    Normalization { element: usize },
    /// `η(ab, c) + η(a, b) ≢ η(a, bc) + η(b, c)`.
    Identity { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleCheck {
    pub holds: bool,
    pub first_violation: Option<CocycleViolation>,
}

/// Exhaustive check of normalization and of the cocycle identity over all
/// triples.
pub fn verify_cocycle(c: &Cocycle) -> CocycleCheck {
    let g = &c.base;
    let n = g.order();
    let e = g.identity();
    let m = c.modulus;
    let fail = |v| CocycleCheck {
        holds: false,
        first_violation: Some(v),
    };
    for w in 0..n {
        if c.value(e, w) != 0 || c.value(w, e) != 0 {
            return fail(CocycleViolation::Normalization { element: w });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            let eab = c.value(a, b);
            for x in 0..n {
                let lhs = (c.value(ab, x) + eab) % m;
                let rhs = (c.value(a, g.mul(b, x)) + c.value(b, x)) % m;
                if lhs != rhs {
                    return fail(CocycleViolation::Identity { a, b, c: x });
                }
            }
        }
    }
    CocycleCheck {
        holds: true,
        first_violation: None,
    }
}

/// The group of pairs `(z, r) ∈ Z/n × R` with
/// `(z₁, r₁)(z₂, r₂) = (z₁ + z₂ + η(r₁, r₂), r₁r₂)`.
///
/// The pair `(z, r)` has index `z + n·r`.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    cocycle: Cocycle,
    total: GroupTable,
    center_subgroup: Subgroup,
}

impl CentralExtension {
    pub fn total(&self) -> &GroupTable {
        &self.total
    }
    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }
    /// The fiber `Z_σ = {(z, 1)}`.
    pub fn center_subgroup(&self) -> &Subgroup {
        &self.center_subgroup
    }
    pub fn modulus(&self) -> u64 {
        self.cocycle.modulus
    }
    pub fn pair_index(&self, z: u64, r: usize) -> usize {
        (z % self.modulus()) as usize + self.modulus() as usize * r
    }
    pub fn unpair(&self, x: usize) -> (u64, usize) {
        let n = self.modulus() as usize;
        ((x % n) as u64, x / n)
    }
    /// Projection onto `R`.
    pub fn project(&self, x: usize) -> usize {
        self.unpair(x).1
    }
    /// The central element `(z, 1)`.
    pub fn fiber_element(&self, z: u64) -> usize {
        self.pair_index(z, self.cocycle.base.identity())
    }
    /// Checks that `r ↦ (0, r)` is a section whose failure to be a
    /// homomorphism is exactly `η`, i.e. that `η` splits over the total group.
    pub fn section_realizes_cocycle(&self) -> bool {
        let base = &self.cocycle.base;
        let n = base.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = self.total.mul(self.pair_index(0, a), self.pair_index(0, b));
                let rhs = self.total.mul(
                    self.fiber_element(self.cocycle.value(a, b)),
                    self.pair_index(0, base.mul(a, b)),
                );
                lhs == rhs
            })
        })
    }
}

pub fn build_extension(c: &Cocycle) -> Result<CentralExtension> {
    let check = verify_cocycle(c);
    if let Some(v) = check.first_violation {
        return Err(input_err!("not a normalized 2-cocycle: {v:?}"));
    }
    let base = &c.base;
    let r = base.order();
    let m = c.modulus as usize;
    let order = m * r;
    if order > MAX_TABLE_ORDER {
        return Err(Error::Resource(format!(
            "extension of order {order} exceeds the table cap {MAX_TABLE_ORDER}"
        )));
    }
    let mut mult = Vec::with_capacity(order * order);
    for x in 0..order {
        let (z1, r1) = (x % m, x / m);
        for y in 0..order {
            let (z2, r2) = (y % m, y / m);
            let z = (z1 + z2 + c.value(r1, r2) as usize) % m;
            mult.push((z + m * base.mul(r1, r2)) as u32);
        }
    }
    let labels = (0..order)
        .map(|x| format!("({}, {})", x % m, base.element_label(x / m)))
        .collect();
    let total = GroupTable::from_flat(order, mult)?.with_labels(labels)?;
    let fiber: Vec<usize> = (0..m).map(|z| z + m * base.identity()).collect();
    let center_subgroup = Subgroup::from_members(&total, &fiber)?;
    let central = fiber
        .iter()
        .all(|&z| (0..order).all(|g| total.mul(z, g) == total.mul(g, z)));
    if !central || !is_normal(&total, &center_subgroup) {
        return Err(violation!("the cocycle fiber is not central in the extension"));
    }
    let ext = CentralExtension {
        cocycle: c.clone(),
        total,
        center_subgroup,
    };
    for a in 0..order {
        for b in 0..order {
            if ext.project(ext.total.mul(a, b)) != base.mul(ext.project(a), ext.project(b)) {
                return Err(violation!("projection to R is not a homomorphism"));
            }
        }
    }
    Ok(ext)
}

/// Indices (into `table.characters()`) of the characters of `ext` whose
/// restriction to the fiber is `deg · χ_k`, where `χ_k(z) = exp(2πi·kz/n)`.
pub fn irreps_with_central_character(ext: &CentralExtension, table: &CharacterTable, k: u64) -> Result<Vec<usize>> {
    let n = ext.modulus();
    let z = table
        .class_of(ext.fiber_element(1 % n))
        .ok_or_else(|| input_err!("character table does not belong to this extension"))?;
    if table.group_order() != ext.total.order() {
        return Err(input_err!("character table does not belong to this extension"));
    }
    let target = RootOfUnity::new(k as i64, n);
    let mut out = Vec::new();
    for (i, chi) in table.characters().iter().enumerate() {
        let (mult, root) = chi.values[z]
            .as_scaled_root(table.exponent())
            .ok_or_else(|| Error::Computation("central element has a non-scalar character value".into()))?;
        if mult == chi.degree && root == target {
            out.push(i);
        }
    }
    Ok(out)
}

/// One irreducible constituent `π_ρ` of the induced representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constituent {
    /// Index of `ρ` in the extension's character table.
    pub character: usize,
    pub degree: u64,
    /// Multiplicity of `π_ρ`, equal to `deg ρ`.
    pub multiplicity: u64,
}

#[derive(Debug, Clone)]
pub struct Parameterization {
    pub extension: CentralExtension,
    pub table: CharacterTable,
    pub central_character: u64,
    pub constituents: Vec<Constituent>,
    pub dimension: u64,
}

/// Central character used when none is supplied: `χ(z) = exp(2πi z / n)`,
/// the one under which the fiber reproduces the cocycle itself.
pub fn default_central_character(c: &Cocycle) -> u64 {
    1 % c.modulus
}

/// Parameterizes the constituents of the induced representation by the
/// characters of the extension with central character `χ_k`.
///
/// The cocycle must be based on the multiplication table of `R_σ` with its
/// members in increasing order.
pub fn parameterize_components(v: &ValidSigma<'_>, c: &Cocycle, k: Option<u64>) -> Result<Parameterization> {
    let r = r_group(v)?;
    let (r_table, _) = GroupTable::from_subgroup(v.ambient(), &r)?;
    if !r_table.same_table(c.base()) {
        return Err(inconsistent!(
            "cocycle is not based on R_σ (order {} vs {})",
            c.base().order(),
            r_table.order()
        ));
    }
    let dimension = dim_commuting_algebra(v)?.value() as u64;
    parameterize_with_dimension(c, k, dimension)
}

/// Same as [`parameterize_components`] for a bare R-group table whose
/// commuting algebra has the given dimension.
pub fn parameterize_with_dimension(c: &Cocycle, k: Option<u64>, dimension: u64) -> Result<Parameterization> {
    let k = k.unwrap_or_else(|| default_central_character(c)) % c.modulus;
    let extension = build_extension(c)?;
    let table = character_table(extension.total())?;
    let block = irreps_with_central_character(&extension, &table, k)?;
    let constituents: Vec<Constituent> = block
        .into_iter()
        .map(|i| {
            let degree = table.characters()[i].degree;
            Constituent {
                character: i,
                degree,
                multiplicity: degree,
            }
        })
        .collect();
    let sum_sq: u64 = constituents.iter().map(|c| c.degree * c.degree).sum();
    if sum_sq != dimension {
        return Err(violation!(
            "Σ deg² = {sum_sq} over the central-character block differs from dim C(σ) = {dimension}"
        ));
    }
    Ok(Parameterization {
        extension,
        table,
        central_character: k,
        constituents,
        dimension,
    })
}

/// Outcome of [`is_coboundary`]: a splitting `c` with `η = δc` when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryResult {
    pub is_coboundary: bool,
    pub splitting: Option<Vec<u64>>,
}

/// Exhaustive search for `c : R → Z/n`, `c(1) = 0`, with
/// `η(a, b) = c(a) + c(b) - c(ab)`. Assignments are propagated through the
/// relation, so only a small part of the space is actually visited.
pub fn is_coboundary(c: &Cocycle) -> Result<CoboundaryResult> {
    let g = &c.base;
    let r = g.order();
    let n = c.modulus;
    let space = (n as f64).powi(r as i32 - 1);
    if space > COBOUNDARY_SEARCH_LIMIT as f64 {
        return Err(Error::Undecided(format!(
            "search space {n}^{} exceeds the limit {COBOUNDARY_SEARCH_LIMIT}",
            r - 1
        )));
    }
    if !verify_cocycle(c).holds {
        return Err(input_err!("not a normalized 2-cocycle"));
    }
    let mut assign: Vec<Option<u64>> = vec![None; r];
    assign[g.identity()] = Some(0);
    let found = search(c, &mut assign);
    Ok(CoboundaryResult {
        is_coboundary: found,
        splitting: found.then(|| assign.iter().map(|x| x.expect("complete assignment")).collect()),
    })
}

/// Extends `assign` by forcing `c(ab) = c(a) + c(b) - η(a, b)`; false on
/// contradiction.
fn propagate(c: &Cocycle, assign: &mut [Option<u64>]) -> bool {
    let g = &c.base;
    let n = c.modulus;
    loop {
        let mut changed = false;
        let known: Vec<usize> = (0..assign.len()).filter(|&x| assign[x].is_some()).collect();
        for &a in &known {
            for &b in &known {
                let ab = g.mul(a, b);
                let want = (assign[a].unwrap() + assign[b].unwrap() + n - c.value(a, b)) % n;
                match assign[ab] {
                    Some(v) if v != want => return false,
                    Some(_) => {}
                    None => {
                        assign[ab] = Some(want);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(c: &Cocycle, assign: &mut Vec<Option<u64>>) -> bool {
    if !propagate(c, assign) {
        return false;
    }
    let Some(x) = assign.iter().position(Option::is_none) else {
        return true;
    };
    for v in 0..c.modulus {
        let saved = assign.clone();
        assign[x] = Some(v);
        if search(c, assign) {
            return true;
        }
        *assign = saved;
    }
    false
}
