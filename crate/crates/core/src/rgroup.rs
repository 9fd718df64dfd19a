//! σ-data, the reflection subgroup `W(Φ₁)`, the R-group, and the dimension
//! of the commuting algebra.
//!
//! The stabilizer `W(σ)` and the root set `Φ₁` are inputs: they encode
//! analytic information (equivalence of twisted representations, vanishing
//! Plancherel measures) that is not modelled here. Everything downstream is
//! computed and cross-checked.

use std::collections::HashSet;

use crate::error::{inconsistent, input_err, violation, Result};
use crate::groupcore::{
    factorizations, generate_subgroup, is_normal_in, semidirect_check_in, FiniteGroup, GroupTable, SemidirectCheck,
    Subgroup,
};
use crate::rootsys::{check_reduced, format_root, ExtendedWeylGroup, Root};

/// `(s, [X : X(σ)], [X₁(σ) : X(σ)])` attached to a σ-datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliffordIndices {
    pub s: u64,
    pub x_mod_xsigma: u64,
    pub x1_mod_xsigma: u64,
}

impl CliffordIndices {
    pub fn factor(&self) -> u64 {
        self.s * self.s * self.x_mod_xsigma * self.x1_mod_xsigma
    }
}

/// Raw σ-datum prior to validation.
#[derive(Debug, Clone)]
pub struct SigmaDatum<'a> {
    pub ambient: &'a ExtendedWeylGroup,
    pub w_sigma: Subgroup,
    pub phi1: Vec<Root>,
    /// Positive system used for the R-group; the ambient one when `None`.
    pub positive: Option<Vec<Root>>,
    pub w_sigma_inner: Option<Subgroup>,
    pub clifford: Option<CliffordIndices>,
}

impl<'a> SigmaDatum<'a> {
    pub fn new(ambient: &'a ExtendedWeylGroup, w_sigma: Subgroup, phi1: Vec<Root>) -> Self {
        SigmaDatum {
            ambient,
            w_sigma,
            phi1,
            positive: None,
            w_sigma_inner: None,
            clifford: None,
        }
    }

    pub fn with_inner(mut self, inner: Subgroup) -> Self {
        self.w_sigma_inner = Some(inner);
        self
    }

    pub fn with_clifford(mut self, c: CliffordIndices) -> Self {
        self.clifford = Some(c);
        self
    }

    pub fn with_positive(mut self, positive: Vec<Root>) -> Self {
        self.positive = Some(positive);
        self
    }
}

/// A σ-datum whose invariants have been checked.
#[derive(Debug, Clone)]
pub struct ValidSigma<'a> {
    datum: SigmaDatum<'a>,
    positive: HashSet<Root>,
    phi1_positive: Vec<Root>,
}

impl<'a> ValidSigma<'a> {
    pub fn ambient(&self) -> &'a ExtendedWeylGroup {
        self.datum.ambient
    }
    pub fn w_sigma(&self) -> &Subgroup {
        &self.datum.w_sigma
    }
    pub fn phi1(&self) -> &[Root] {
        &self.datum.phi1
    }
    /// `Φ₁⁺ = Φ₁ ∩ Φ⁺`, sorted.
    pub fn phi1_positive(&self) -> &[Root] {
        &self.phi1_positive
    }
    pub fn inner(&self) -> Option<&Subgroup> {
        self.datum.w_sigma_inner.as_ref()
    }
    pub fn clifford(&self) -> Option<CliffordIndices> {
        self.datum.clifford
    }
    pub fn is_positive(&self, v: &[i64]) -> bool {
        self.positive.contains(v)
    }
    pub fn datum(&self) -> &SigmaDatum<'a> {
        &self.datum
    }

    /// Whether `w` maps every root of `Φ₁⁺` into `Φ⁺`.
    fn keeps_positive(&self, w: usize) -> bool {
        self.phi1_positive
            .iter()
            .all(|b| self.is_positive(&self.ambient().act(w, b)))
    }
}

pub fn validate_sigma_datum(d: SigmaDatum<'_>) -> Result<ValidSigma<'_>> {
    let g = d.ambient;
    let rs = g.root_system();
    d.w_sigma.check_parent(g)?;
    for r in &d.phi1 {
        if !rs.is_root(r) {
            return Err(input_err!("{} in Φ₁ is not a root", format_root(r)));
        }
    }
    let mut phi1 = d.phi1.clone();
    phi1.sort();
    phi1.dedup();
    let set: HashSet<&Root> = phi1.iter().collect();
    for r in &phi1 {
        let n: Root = r.iter().map(|x| -x).collect();
        if !set.contains(&n) {
            return Err(input_err!("Φ₁ is not closed under negation: missing -({})", format_root(r)));
        }
    }
    check_reduced(&phi1)?;

    let positive: HashSet<Root> = match &d.positive {
        None => rs.positive_roots().iter().cloned().collect(),
        Some(p) => {
            let p: HashSet<Root> = p.iter().cloned().collect();
            let ok = p.len() * 2 == rs.roots().len()
                && p.iter().all(|r| rs.is_root(r) && !p.contains(&r.iter().map(|x| -x).collect::<Root>()));
            if !ok {
                return Err(input_err!("supplied positive roots do not form half of the root set"));
            }
            p
        }
    };

    for &w in d.w_sigma.members() {
        if !g.stabilizes(w, &phi1) {
            return Err(inconsistent!(
                "element {} of W(σ) does not preserve Φ₁",
                g.element_label(w)
            ));
        }
    }
    if let Some(inner) = &d.w_sigma_inner {
        inner.check_parent(g)?;
        if !inner.is_subset_of(&d.w_sigma) {
            return Err(inconsistent!("inner stabilizer is not contained in W(σ)"));
        }
        if !is_normal_in(g, inner, &d.w_sigma) {
            return Err(inconsistent!("inner stabilizer is not normal in W(σ)"));
        }
        let index = d.w_sigma.order() / inner.order();
        if g.gamma().order() % index != 0 {
            return Err(inconsistent!(
                "index {index} of the inner stabilizer does not divide |Γ| = {}",
                g.gamma().order()
            ));
        }
    }
    if let Some(c) = d.clifford {
        if c.s == 0 || c.x_mod_xsigma == 0 || c.x1_mod_xsigma == 0 {
            return Err(input_err!("Clifford indices must be positive"));
        }
    }
    let phi1_positive = phi1.iter().filter(|r| positive.contains(*r)).cloned().collect();
    let datum = SigmaDatum { phi1, ..d };
    Ok(ValidSigma {
        datum,
        positive,
        phi1_positive,
    })
}

/// `W(Φ₁)`, generated by the reflections in `Φ₁⁺`; must be a normal
/// subgroup of `W(σ)`.
pub fn reflection_subgroup(v: &ValidSigma<'_>) -> Result<Subgroup> {
    let g = v.ambient();
    let gens = v
        .phi1_positive()
        .iter()
        .map(|a| g.reflection_index(a))
        .collect::<Result<Vec<_>>>()?;
    let w1 = generate_subgroup(g, &gens)?;
    if !w1.is_subset_of(v.w_sigma()) {
        return Err(inconsistent!("W(Φ₁) is not contained in W(σ)"));
    }
    if !is_normal_in(g, &w1, v.w_sigma()) {
        return Err(inconsistent!("W(Φ₁) is not normal in W(σ)"));
    }
    Ok(w1)
}

/// `R_σ = {w ∈ W(σ) : wβ ∈ Φ⁺ for all β ∈ Φ₁⁺}`.
pub fn r_group(v: &ValidSigma<'_>) -> Result<Subgroup> {
    let members: Vec<usize> = v
        .w_sigma()
        .members()
        .iter()
        .copied()
        .filter(|&w| v.keeps_positive(w))
        .collect();
    Subgroup::from_members(v.ambient(), &members).map_err(|e| violation!("R-group is not a subgroup: {e}"))
}

/// `W(σ) = W(Φ₁) ⋊ R_σ` together with the evidence.
#[derive(Debug, Clone)]
pub struct SemidirectDecomposition {
    pub reflection_subgroup: Subgroup,
    pub r_group: Subgroup,
    pub check: SemidirectCheck,
    /// `(g, n, h)` with `g = n·h`, one per element of `W(σ)`.
    pub factorization: Vec<(usize, usize, usize)>,
}

pub fn semidirect_decompose(v: &ValidSigma<'_>) -> Result<SemidirectDecomposition> {
    let g = v.ambient();
    let w1 = reflection_subgroup(v)?;
    let r = r_group(v)?;
    let check = semidirect_check_in(g, v.w_sigma(), &w1, &r);
    if !check.holds() {
        return Err(violation!(
            "W(σ) is not W(Φ₁) ⋊ R_σ: {}",
            check.failures().join("; ")
        ));
    }
    let mut factorization = Vec::with_capacity(v.w_sigma().order());
    for &x in v.w_sigma().members() {
        let f = factorizations(g, x, &w1, &r);
        if f.len() != 1 {
            return Err(violation!(
                "element {} has {} factorizations",
                g.element_label(x),
                f.len()
            ));
        }
        factorization.push((x, f[0].0, f[0].1));
    }
    Ok(SemidirectDecomposition {
        reflection_subgroup: w1,
        r_group: r,
        check,
        factorization,
    })
}

/// Dimension of the commuting algebra, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionReport {
    /// `|R_σ|`.
    pub via_r_group: usize,
    /// `|W(σ)| / |W(Φ₁)|`.
    pub via_quotient: usize,
    /// `|R⁰_σ| · [W(σ) : W_{G⁰}(σ)]`, when the inner stabilizer is known.
    pub via_inner: Option<usize>,
}

impl DimensionReport {
    pub fn value(&self) -> usize {
        self.via_r_group
    }
}

pub fn dim_commuting_algebra(v: &ValidSigma<'_>) -> Result<DimensionReport> {
    let w1 = reflection_subgroup(v)?;
    let r = r_group(v)?;
    if v.w_sigma().order() % w1.order() != 0 {
        return Err(violation!("|W(Φ₁)| does not divide |W(σ)|"));
    }
    let via_quotient = v.w_sigma().order() / w1.order();
    let via_inner = v.inner().map(|inner| {
        let r0 = inner.members().iter().filter(|&&w| v.keeps_positive(w)).count();
        r0 * (v.w_sigma().order() / inner.order())
    });
    let report = DimensionReport {
        via_r_group: r.order(),
        via_quotient,
        via_inner,
    };
    if report.via_quotient != report.via_r_group || report.via_inner.is_some_and(|x| x != report.via_r_group) {
        return Err(violation!(
            "commuting-algebra dimensions disagree: |R_σ| = {}, |W(σ)|/|W(Φ₁)| = {}, inner route = {:?}",
            report.via_r_group,
            report.via_quotient,
            report.via_inner
        ));
    }
    Ok(report)
}

/// Result of comparing `s²[X : X(σ)][X₁(σ) : X(σ)]` with `[W_G(σ₀) : W_G(σ)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerIndexReport {
    pub factor: u64,
    pub ratio: u64,
    pub dim_sigma: u64,
    pub dim_sigma0: u64,
}

/// Pure arithmetic form: `order_sigma0 / order_sigma` must be an integer
/// equal to `s²·[X : X(σ)]·[X₁(σ) : X(σ)]`.
pub fn check_index_identity(c: CliffordIndices, order_sigma0: u64, order_sigma: u64) -> Result<u64> {
    if c.s == 0 || c.x_mod_xsigma == 0 || c.x1_mod_xsigma == 0 {
        return Err(inconsistent!("Clifford indices must be positive"));
    }
    if order_sigma == 0 || order_sigma0 % order_sigma != 0 {
        return Err(inconsistent!(
            "|W_G(σ₀)| / |W_G(σ)| = {order_sigma0}/{order_sigma} is not an integer"
        ));
    }
    let ratio = order_sigma0 / order_sigma;
    if c.factor() != ratio {
        return Err(inconsistent!(
            "s²·[X : X(σ)]·[X₁(σ) : X(σ)] = {}·{}·{} = {} but |W_G(σ₀)| / |W_G(σ)| = {ratio}",
            c.s * c.s,
            c.x_mod_xsigma,
            c.x1_mod_xsigma,
            c.factor()
        ));
    }
    Ok(ratio)
}

/// Checks the index identity for a datum carrying Clifford indices against
/// the larger stabilizer `W_G(σ₀) ⊇ W_G(σ)`, and scales the dimension.
pub fn stabilizer_index_identity(v: &ValidSigma<'_>, w_sigma0: &Subgroup) -> Result<StabilizerIndexReport> {
    let c = v
        .clifford()
        .ok_or_else(|| input_err!("σ-datum carries no Clifford indices"))?;
    w_sigma0.check_parent(v.ambient())?;
    if !v.w_sigma().is_subset_of(w_sigma0) {
        return Err(inconsistent!("W_G(σ) is not contained in W_G(σ₀)"));
    }
    let ratio = check_index_identity(c, w_sigma0.order() as u64, v.w_sigma().order() as u64)?;
    let dim_sigma = dim_commuting_algebra(v)?.value() as u64;
    Ok(StabilizerIndexReport {
        factor: c.factor(),
        ratio,
        dim_sigma,
        dim_sigma0: dim_sigma * ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProjectionReport {
    pub source_order: usize,
    pub kernel_order: usize,
    pub image_order: usize,
}

/// Verifies that `labeling` (one target index per member of `source`, in
/// member order) is a surjective homomorphism onto `target` with kernel
/// exactly `kernel`.
pub fn projection_check<G: FiniteGroup + ?Sized>(
    group: &G,
    source: &Subgroup,
    kernel: &Subgroup,
    target: &GroupTable,
    labeling: &[usize],
) -> Result<ProjectionReport> {
    source.check_parent(group)?;
    kernel.check_parent(group)?;
    if labeling.len() != source.order() {
        return Err(input_err!("{} labels for {} source elements", labeling.len(), source.order()));
    }
    if let Some(&bad) = labeling.iter().find(|&&t| t >= target.order()) {
        return Err(input_err!("label {bad} out of range for the target"));
    }
    if !is_normal_in(group, kernel, source) {
        return Err(inconsistent!("claimed kernel is not a normal subgroup of the source"));
    }
    let m = source.members();
    for (i, &a) in m.iter().enumerate() {
        for (j, &b) in m.iter().enumerate() {
            let ab = source.position(group.mul(a, b)).expect("source is a subgroup");
            if labeling[ab] != target.mul(labeling[i], labeling[j]) {
                return Err(inconsistent!(
                    "labeling is not a homomorphism at ({}, {})",
                    group.element_label(a),
                    group.element_label(b)
                ));
            }
        }
    }
    let image: HashSet<usize> = labeling.iter().copied().collect();
    if image.len() != target.order() {
        return Err(inconsistent!("labeling is not surjective ({} of {} hit)", image.len(), target.order()));
    }
    let ker: Vec<usize> = m
        .iter()
        .zip(labeling)
        .filter(|(_, &t)| t == target.identity())
        .map(|(&x, _)| x)
        .collect();
    if ker != kernel.members() {
        return Err(inconsistent!(
            "kernel of the labeling has order {} but the claimed kernel has order {}",
            ker.len(),
            kernel.order()
        ));
    }
    Ok(ProjectionReport {
        source_order: source.order(),
        kernel_order: kernel.order(),
        image_order: target.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::FiniteAbelianGroup;
    use crate::error::Error;
    use crate::groupcore::order_census;
    use crate::rootsys::{
        block_swap, build_extended_weyl, build_weyl_group, last_sign_change, parse_root, ComponentAction,
        RootSystem, RootType,
    };
    use std::collections::BTreeMap;

    fn a1a1() -> ExtendedWeylGroup {
        build_weyl_group(&RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)]).unwrap()).unwrap()
    }

    fn a1a1_swap() -> ExtendedWeylGroup {
        let rs = RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)]).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![block_swap(4, 0, 2, 2).unwrap()])
            .unwrap();
        build_extended_weyl(&rs, &act).unwrap()
    }

    fn alpha1() -> Vec<Root> {
        vec![vec![1, -1, 0, 0], vec![-1, 1, 0, 0]]
    }

    #[test]
    fn empty_phi1_gives_whole_stabilizer() {
        let g = a1a1_swap();
        let v = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), vec![])).unwrap();
        assert!(reflection_subgroup(&v).unwrap().is_trivial());
        let r = r_group(&v).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(
            crate::groupcore::order_census_in(&g, &r),
            BTreeMap::from([(1, 1), (2, 5), (4, 2)])
        );
        assert_eq!(dim_commuting_algebra(&v).unwrap().value(), 8);
        let _ = order_census(&g);
    }

    #[test]
    fn a1a1_with_one_root() {
        let g = a1a1();
        let v = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), alpha1())).unwrap();
        assert_eq!(reflection_subgroup(&v).unwrap().order(), 2);
        let r = r_group(&v).unwrap();
        let s2 = g.reflection_index(&[0, 0, 1, -1]).unwrap();
        assert_eq!(r.members(), &[0, s2]);
        let dec = semidirect_decompose(&v).unwrap();
        assert_eq!(dec.factorization.len(), 4);
        assert_eq!(dim_commuting_algebra(&v).unwrap().via_quotient, 2);
    }

    #[test]
    fn swap_breaks_phi1() {
        let g = a1a1_swap();
        let err = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), alpha1())).unwrap_err();
        assert!(matches!(err, Error::InconsistentDatum(_)), "{err}");
    }

    #[test]
    fn rejects_non_reduced_or_open_phi1() {
        let g = a1a1();
        let half = vec![vec![1, -1, 0, 0]];
        assert!(matches!(
            validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), half)),
            Err(Error::Input(_))
        ));
        let rs = RootSystem::classical(RootType::B, 2).unwrap();
        let b2 = build_weyl_group(&rs).unwrap();
        let not_root = vec![vec![2, 0], vec![-2, 0]];
        assert!(validate_sigma_datum(SigmaDatum::new(&b2, Subgroup::whole(&b2), not_root)).is_err());
    }

    #[test]
    fn two_commuting_reflections_in_d4() {
        let rs = RootSystem::classical(RootType::D, 4).unwrap();
        let g = build_weyl_group(&rs).unwrap();
        let phi1: Vec<Root> = ["e1-e2", "-e1+e2", "e3-e4", "-e3+e4"]
            .iter()
            .map(|s| parse_root(s, 4).unwrap())
            .collect();
        let gens: Vec<usize> = ["e1-e2", "e3-e4"]
            .iter()
            .map(|s| g.reflection_index(&parse_root(s, 4).unwrap()).unwrap())
            .collect();
        let ws = generate_subgroup(&g, &gens).unwrap();
        let v = validate_sigma_datum(SigmaDatum::new(&g, ws, phi1)).unwrap();
        assert_eq!(reflection_subgroup(&v).unwrap().order(), 4);
        assert_eq!(dim_commuting_algebra(&v).unwrap().value(), 1);
    }

    #[test]
    fn inner_route_agrees() {
        let g = a1a1_swap();
        let v = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), vec![]).with_inner(g.inner())).unwrap();
        let d = dim_commuting_algebra(&v).unwrap();
        assert_eq!(d.via_inner, Some(8));
    }

    #[test]
    fn inner_must_be_normal_with_small_index() {
        let rs = RootSystem::classical(RootType::D, 4).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![last_sign_change(4)]).unwrap();
        let g = build_extended_weyl(&rs, &act).unwrap();
        let s = g.reflection_index(&parse_root("e1-e2", 4).unwrap()).unwrap();
        let bad_inner = generate_subgroup(&g, &[s]).unwrap();
        let err = validate_sigma_datum(SigmaDatum::new(&g, Subgroup::whole(&g), vec![]).with_inner(bad_inner))
            .unwrap_err();
        assert!(matches!(err, Error::InconsistentDatum(_)));
    }

    #[test]
    fn index_identity_arithmetic() {
        let c = |s, x, x1| CliffordIndices { s, x_mod_xsigma: x, x1_mod_xsigma: x1 };
        assert_eq!(check_index_identity(c(1, 2, 1), 8, 4).unwrap(), 2);
        assert_eq!(check_index_identity(c(1, 1, 1), 4, 4).unwrap(), 1);
        assert!(check_index_identity(c(2, 1, 1), 8, 4).is_err());
        assert!(check_index_identity(c(1, 1, 1), 6, 4).is_err());
    }

    #[test]
    fn stabilizer_index_identity_on_subgroups() {
        let g = a1a1_swap();
        let v = validate_sigma_datum(
            SigmaDatum::new(&g, g.inner(), vec![]).with_clifford(CliffordIndices {
                s: 1,
                x_mod_xsigma: 2,
                x1_mod_xsigma: 1,
            }),
        )
        .unwrap();
        let rep = stabilizer_index_identity(&v, &Subgroup::whole(&g)).unwrap();
        assert_eq!(rep.ratio, 2);
        assert_eq!(rep.dim_sigma0, 8);
    }

    #[test]
    fn projection_checks() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let whole = Subgroup::whole(&z4);
        let k = generate_subgroup(&z4, &[2]).unwrap();
        let rep = projection_check(&z4, &whole, &k, &z2, &[0, 1, 0, 1]).unwrap();
        assert_eq!(rep.kernel_order, 2);

        let id = projection_check(&z4, &whole, &Subgroup::trivial(&z4), &z4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(id.kernel_order, 1);

        let s3 = GroupTable::dihedral(6).unwrap();
        let not_normal = generate_subgroup(&s3, &[3]).unwrap();
        let err = projection_check(&s3, &Subgroup::whole(&s3), &not_normal, &z2, &[0; 6]).unwrap_err();
        assert!(matches!(err, Error::InconsistentDatum(_)));
    }
}
