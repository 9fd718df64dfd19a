//! Standard parabolic data `Θ ⊆ Δ` for a disconnected group, seen through
//! its extended Weyl group.
//!
//! The normalizer-style parabolic over `P⁰_Θ` is `∪_{w ∈ W(Θ)} w·P⁰_Θ`,
//! where `W(Θ)` is the stabilizer of `Θ` inside the stabilizer of `Δ`. The
//! cuspidal parabolic over `P⁰_Θ` meets exactly those components that
//! contain an element fixing `a_Θ` pointwise.

use crate::clifford::FiniteAbelianGroup;
use crate::error::{inconsistent, input_err, Result};
use crate::groupcore::{double_cosets, FiniteGroup, Subgroup};
use crate::linalg::kernel_basis;
use crate::rootsys::{format_root, ExtendedWeylGroup, Root};

/// Largest number of simple roots for which all subsets of `Δ` are enumerated.
pub const MAX_SUBSET_RANK: usize = 12;

/// A subset `Θ` of the simple roots together with `a_Θ`.
#[derive(Debug, Clone)]
pub struct ParabolicDatum<'a> {
    ambient: &'a ExtendedWeylGroup,
    theta: Vec<usize>,
    a_theta: Vec<Root>,
}

impl<'a> ParabolicDatum<'a> {
    /// `theta` lists indices into the simple roots of the ambient system.
    pub fn from_indices(ambient: &'a ExtendedWeylGroup, theta: &[usize]) -> Result<Self> {
        let simple = ambient.root_system().simple_roots();
        let mut t = theta.to_vec();
        t.sort_unstable();
        t.dedup();
        if let Some(&bad) = t.iter().find(|&&i| i >= simple.len()) {
            return Err(input_err!("simple root index {bad} out of range (|Δ| = {})", simple.len()));
        }
        let rows: Vec<Root> = t.iter().map(|&i| simple[i].clone()).collect();
        let a_theta = kernel_basis(&rows, ambient.root_system().dim());
        Ok(ParabolicDatum {
            ambient,
            theta: t,
            a_theta,
        })
    }

    /// `theta` given as roots; each must be simple.
    pub fn from_roots(ambient: &'a ExtendedWeylGroup, theta: &[Root]) -> Result<Self> {
        let rs = ambient.root_system();
        let idx = theta
            .iter()
            .map(|r| {
                rs.simple_index(r)
                    .ok_or_else(|| input_err!("{} is not a simple root", format_root(r)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(ambient, &idx)
    }

    pub fn ambient(&self) -> &ExtendedWeylGroup {
        self.ambient
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn theta_roots(&self) -> Vec<Root> {
        let simple = self.ambient.root_system().simple_roots();
        self.theta.iter().map(|&i| simple[i].clone()).collect()
    }

    /// Integer basis of `{H : α(H) = 0 for all α ∈ Θ}` in coordinate space.
    pub fn a_theta(&self) -> &[Root] {
        &self.a_theta
    }

    /// Whether element `i` of the ambient group is the identity on `a_Θ`.
    pub fn fixes_a_theta(&self, i: usize) -> bool {
        self.a_theta.iter().all(|h| &self.ambient.act(i, h) == h)
    }
}

/// `{w ∈ W ⋊ Γ : wΔ = Δ}`; errors if it meets the inner Weyl group
/// nontrivially.
pub fn base_normalizer(ambient: &ExtendedWeylGroup) -> Result<Subgroup> {
    let simple = ambient.root_system().simple_roots();
    let members: Vec<usize> = (0..ambient.order())
        .filter(|&i| ambient.stabilizes(i, simple))
        .collect();
    if let Some(&w) = members.iter().find(|&&i| i != 0 && ambient.component(i) == 0) {
        return Err(inconsistent!(
            "inner element {} stabilizes Δ; this ambient is not supported",
            ambient.element_label(w)
        ));
    }
    Subgroup::from_members(ambient, &members)
}

/// `W(Θ) = {w ∈ W_G(P₀, A₀) : wΘ = Θ}`.
pub fn theta_stabilizer(datum: &ParabolicDatum<'_>) -> Result<Subgroup> {
    let base = base_normalizer(datum.ambient)?;
    Ok(stabilizer_within(datum.ambient, &base, &datum.theta_roots()))
}

fn stabilizer_within(ambient: &ExtendedWeylGroup, base: &Subgroup, roots: &[Root]) -> Subgroup {
    let members: Vec<usize> = base
        .members()
        .iter()
        .copied()
        .filter(|&i| ambient.stabilizes(i, roots))
        .collect();
    Subgroup::from_members(ambient, &members).expect("setwise stabilizer is a subgroup")
}

fn component_image(ambient: &ExtendedWeylGroup, elements: impl Iterator<Item = usize>) -> Result<Subgroup> {
    let comps: Vec<usize> = elements.map(|i| ambient.component(i)).collect();
    Subgroup::from_members(ambient.gamma(), &comps)
}

/// Components of `Γ` met by the normalizer-style Levi over `Θ`.
pub fn n_levi_component_image(datum: &ParabolicDatum<'_>) -> Result<Subgroup> {
    let w = theta_stabilizer(datum)?;
    component_image(datum.ambient, w.members().iter().copied())
}

/// Components `γ` whose coset contains an element acting trivially on `a_Θ`.
pub fn cuspidal_levi_components(datum: &ParabolicDatum<'_>) -> Result<Subgroup> {
    component_image(
        datum.ambient,
        (0..datum.ambient.order()).filter(|&i| datum.fixes_a_theta(i)),
    )
}

/// Whether the Levi meeting exactly `levi_components` is the cuspidal one
/// (or contained in it).
pub fn is_cuspidal_levi(datum: &ParabolicDatum<'_>, levi_components: &Subgroup) -> Result<bool> {
    let gamma: &FiniteAbelianGroup = datum.ambient.gamma();
    if levi_components.parent() != gamma.group_id() {
        return Err(input_err!("levi components must be a subgroup of the ambient Γ"));
    }
    let cusp = cuspidal_levi_components(datum)?;
    Ok(levi_components.is_subset_of(&cusp))
}

/// All subsets of `0..r` ordered by size, then lexicographically.
pub fn subsets_by_size(r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << r)
        .map(|mask| (0..r).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn all_theta_stabilizers(ambient: &ExtendedWeylGroup) -> Result<(Vec<Vec<usize>>, Vec<Subgroup>)> {
    let simple = ambient.root_system().simple_roots();
    if simple.len() > MAX_SUBSET_RANK {
        return Err(crate::error::Error::Resource(format!(
            "{} simple roots exceed the subset enumeration limit {MAX_SUBSET_RANK}",
            simple.len()
        )));
    }
    let base = base_normalizer(ambient)?;
    let subsets = subsets_by_size(simple.len());
    let stabs = subsets
        .iter()
        .map(|s| {
            let roots: Vec<Root> = s.iter().map(|&i| simple[i].clone()).collect();
            stabilizer_within(ambient, &base, &roots)
        })
        .collect();
    Ok((subsets, stabs))
}

/// A pair `Θ₁ ⊊ Θ₂` whose normalizer-style parabolics are not nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentAnomaly {
    pub smaller: Vec<usize>,
    pub larger: Vec<usize>,
    /// Least element of `W(Θ₁) \ W(Θ₂)`.
    pub witness: usize,
}

pub fn containment_anomalies(ambient: &ExtendedWeylGroup) -> Result<Vec<ContainmentAnomaly>> {
    let (subsets, stabs) = all_theta_stabilizers(ambient)?;
    let mut out = Vec::new();
    for (i, small) in subsets.iter().enumerate() {
        for (j, large) in subsets.iter().enumerate() {
            if small.len() >= large.len() || !small.iter().all(|x| large.contains(x)) {
                continue;
            }
            if let Some(&w) = stabs[i].members().iter().find(|&&w| !stabs[j].contains(w)) {
                out.push(ContainmentAnomaly {
                    smaller: small.clone(),
                    larger: large.clone(),
                    witness: w,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalNParabolic {
    pub exists: bool,
    /// First `Θ` (by size, then lexicographically) with trivial `W(Θ)`,
    /// reported when the base normalizer is nontrivial.
    pub witness: Option<Vec<usize>>,
}

/// A minimal normalizer-style parabolic fails to exist exactly when the
/// minimal one meets several components while some `P_Θ` stays inside the
/// identity component.
pub fn minimal_nparabolic_exists(ambient: &ExtendedWeylGroup) -> Result<MinimalNParabolic> {
    let (subsets, stabs) = all_theta_stabilizers(ambient)?;
    let base_trivial = stabs[0].is_trivial();
    let witness = if base_trivial {
        None
    } else {
        subsets
            .iter()
            .zip(&stabs)
            .find(|(_, s)| s.is_trivial())
            .map(|(t, _)| t.clone())
    };
    Ok(MinimalNParabolic {
        exists: witness.is_none(),
        witness,
    })
}

/// Double coset summary with the maximal Coxeter length of inner parts as a
/// stand-in for orbit dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetSummary {
    pub representative: usize,
    pub size: usize,
    pub length_proxy: usize,
}

pub fn double_coset_census(
    ambient: &ExtendedWeylGroup,
    left: &Subgroup,
    right: &Subgroup,
) -> Result<Vec<DoubleCosetSummary>> {
    Ok(double_cosets(ambient, left, right)?
        .into_iter()
        .map(|d| DoubleCosetSummary {
            representative: d.representative,
            size: d.size(),
            length_proxy: d.members.iter().map(|&i| ambient.inner_length(i)).max().unwrap_or(0),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{
        block_swap, build_extended_weyl, build_weyl_group, last_sign_change, parse_root, ComponentAction, RootSystem,
        RootType, SignedPerm,
    };

    fn orthogonal_even(n: usize) -> ExtendedWeylGroup {
        let rs = RootSystem::classical(RootType::D, n).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![last_sign_change(n)]).unwrap();
        build_extended_weyl(&rs, &act).unwrap()
    }

    fn o2() -> ExtendedWeylGroup {
        let rs = RootSystem::torus(1).unwrap();
        let minus = SignedPerm::from_matrix(&[vec![-1]]).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![minus]).unwrap();
        build_extended_weyl(&rs, &act).unwrap()
    }

    fn roots(n: usize, names: &[&str]) -> Vec<Root> {
        names.iter().map(|s| parse_root(s, n).unwrap()).collect()
    }

    #[test]
    fn base_normalizer_orders() {
        let g = orthogonal_even(4);
        let b = base_normalizer(&g).unwrap();
        assert_eq!(b.order(), 2);
        let c4 = g.find(&last_sign_change(4), 1).unwrap();
        assert!(b.contains(c4));

        let rs = RootSystem::product(&[(RootType::A, 1), (RootType::A, 1)]).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![block_swap(4, 0, 2, 2).unwrap()])
            .unwrap();
        assert_eq!(base_normalizer(&build_extended_weyl(&rs, &act).unwrap()).unwrap().order(), 2);

        let d4 = build_weyl_group(&RootSystem::classical(RootType::D, 4).unwrap()).unwrap();
        assert!(base_normalizer(&d4).unwrap().is_trivial());
    }

    #[test]
    fn theta_stabilizers_in_o8() {
        let g = orthogonal_even(4);
        let moved = ParabolicDatum::from_roots(&g, &roots(4, &["e3-e4"])).unwrap();
        assert!(theta_stabilizer(&moved).unwrap().is_trivial());
        let fixed = ParabolicDatum::from_roots(&g, &roots(4, &["e1-e2"])).unwrap();
        assert_eq!(theta_stabilizer(&fixed).unwrap().order(), 2);
        let empty = ParabolicDatum::from_indices(&g, &[]).unwrap();
        assert_eq!(theta_stabilizer(&empty).unwrap(), base_normalizer(&g).unwrap());
        assert!(ParabolicDatum::from_roots(&g, &roots(4, &["e1-e3"])).is_err());
    }

    #[test]
    fn levi_components_in_o8() {
        let g = orthogonal_even(4);
        let p1 = ParabolicDatum::from_roots(&g, &roots(4, &["e3-e4"])).unwrap();
        let p2 = ParabolicDatum::from_roots(&g, &roots(4, &["e1-e2"])).unwrap();
        assert!(n_levi_component_image(&p1).unwrap().is_trivial());
        let m2 = n_levi_component_image(&p2).unwrap();
        assert_eq!(m2.order(), 2);
        assert!(cuspidal_levi_components(&p1).unwrap().is_trivial());
        assert!(!is_cuspidal_levi(&p2, &m2).unwrap());
        assert!(is_cuspidal_levi(&p2, &Subgroup::trivial(g.gamma())).unwrap());
    }

    #[test]
    fn o2_is_not_cuspidal() {
        let g = o2();
        let d = ParabolicDatum::from_indices(&g, &[]).unwrap();
        assert_eq!(d.a_theta(), &[vec![1]]);
        assert!(cuspidal_levi_components(&d).unwrap().is_trivial());
        assert!(!is_cuspidal_levi(&d, &Subgroup::whole(g.gamma())).unwrap());
    }

    #[test]
    fn trivially_acting_gamma_is_cuspidal_on_delta() {
        let rs = RootSystem::classical(RootType::A, 2).unwrap();
        let act = ComponentAction::new(&rs, FiniteAbelianGroup::cyclic(2).unwrap(), vec![SignedPerm::identity(3)])
            .unwrap();
        let g = build_extended_weyl(&rs, &act).unwrap();
        let d = ParabolicDatum::from_indices(&g, &[0, 1]).unwrap();
        assert_eq!(cuspidal_levi_components(&d).unwrap().order(), 2);
    }

    #[test]
    fn anomalies_in_o8() {
        let g = orthogonal_even(4);
        let anomalies = containment_anomalies(&g).unwrap();
        let c4 = g.find(&last_sign_change(4), 1).unwrap();
        assert!(anomalies
            .iter()
            .any(|a| a.smaller.is_empty() && a.larger == vec![2] && a.witness == c4));
        assert!(!anomalies.iter().any(|a| a.smaller.is_empty() && a.larger == vec![2, 3]));
        let d4 = build_weyl_group(&RootSystem::classical(RootType::D, 4).unwrap()).unwrap();
        assert!(containment_anomalies(&d4).unwrap().is_empty());
    }

    #[test]
    fn minimal_nparabolic() {
        for n in 2..=4 {
            let m = minimal_nparabolic_exists(&orthogonal_even(n)).unwrap();
            assert!(!m.exists);
            assert_eq!(m.witness, Some(vec![n - 2]), "n = {n}");
        }
        let d4 = build_weyl_group(&RootSystem::classical(RootType::D, 4).unwrap()).unwrap();
        assert!(minimal_nparabolic_exists(&d4).unwrap().exists);
    }

    #[test]
    fn a_theta_dimension() {
        let g = orthogonal_even(4);
        for t in subsets_by_size(4) {
            let d = ParabolicDatum::from_indices(&g, &t).unwrap();
            assert_eq!(d.a_theta().len(), 4 - t.len());
        }
    }

    #[test]
    fn length_proxy_of_whole_group() {
        let g = build_weyl_group(&RootSystem::classical(RootType::A, 2).unwrap()).unwrap();
        let whole = Subgroup::whole(&g);
        let census = double_coset_census(&g, &whole, &whole).unwrap();
        assert_eq!(census.len(), 1);
        assert_eq!(census[0].length_proxy, 3);
    }
}
