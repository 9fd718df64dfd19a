//! Finite abelian component groups, their character groups, and the
//! restriction/induction arithmetic between a group and a finite-index
//! normal subgroup with abelian quotient.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{inconsistent, input_err, Error, Result};
use crate::groupcore::{fresh_id, FiniteGroup, GroupId};

/// `exp(2πi · num/den)`, kept reduced with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RootOfUnity::new(num as i64, den)
    }

    pub fn conj(self) -> RootOfUnity {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn to_complex(self) -> (f64, f64) {
        let t = std::f64::consts::TAU * self.num as f64 / self.den as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (n, d) => write!(f, "e(2πi·{n}/{d})"),
        }
    }
}

/// `Z/d₁ × … × Z/d_k` with `d₁ | d₂ | … | d_k`, each `dᵢ >= 2`.
///
/// Elements are indexed in mixed radix with the last factor varying fastest.
#[derive(Debug, Clone)]
pub struct FiniteAbelianGroup {
    id: GroupId,
    factors: Vec<u64>,
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}
impl Eq for FiniteAbelianGroup {}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: &[u64]) -> Result<Self> {
        if let Some(&d) = invariant_factors.iter().find(|&&d| d < 2) {
            return Err(input_err!("invariant factor {d} must be at least 2"));
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(input_err!(
                    "invariant factors must form a divisibility chain; {} does not divide {}",
                    w[0],
                    w[1]
                ));
            }
        }
        let order: u128 = invariant_factors.iter().map(|&d| d as u128).product();
        if order > crate::groupcore::MAX_ORDER as u128 {
            return Err(Error::Resource(format!("abelian group of order {order} exceeds the cap")));
        }
        Ok(FiniteAbelianGroup {
            id: fresh_id(),
            factors: invariant_factors.to_vec(),
        })
    }

    pub fn trivial() -> Self {
        Self::new(&[]).expect("empty factor list is valid")
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(&[n])
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    /// Exponent (the largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        let mut rest = index as u64;
        let mut out = vec![0; self.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = rest % d;
            rest /= d;
        }
        out
    }

    pub fn index_of(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(input_err!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            ));
        }
        let mut idx = 0u64;
        for (&c, &d) in coords.iter().zip(&self.factors) {
            if c >= d {
                return Err(input_err!("coordinate {c} out of range for factor {d}"));
            }
            idx = idx * d + c;
        }
        Ok(idx as usize)
    }

    /// Index of the `i`-th standard generator.
    pub fn generator(&self, i: usize) -> usize {
        let mut c = vec![0; self.factors.len()];
        c[i] = 1;
        self.index_of(&c).expect("generator coordinates are in range")
    }
}

impl FiniteGroup for FiniteAbelianGroup {
    fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let sum: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        self.index_of(&sum).expect("sum is reduced")
    }
    fn inv(&self, a: usize) -> usize {
        let neg: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(p, d)| (d - p) % d)
            .collect();
        self.index_of(&neg).expect("negation is reduced")
    }
    fn group_id(&self) -> GroupId {
        self.id
    }
    fn element_label(&self, a: usize) -> String {
        format!("{:?}", self.coords(a))
    }
}

/// Character group of a finite abelian group together with its pairing.
#[derive(Debug, Clone)]
pub struct DualGroup {
    pub group: FiniteAbelianGroup,
    pub dual: FiniteAbelianGroup,
}

impl DualGroup {
    /// `⟨χ, g⟩ = exp(2πi Σ χᵢ gᵢ / dᵢ)`.
    pub fn pairing(&self, chi: usize, g: usize) -> RootOfUnity {
        let (c, x) = (self.dual.coords(chi), self.group.coords(g));
        let den = self.group.exponent();
        let num: u64 = c
            .iter()
            .zip(&x)
            .zip(self.group.invariant_factors())
            .map(|((a, b), d)| (a * b % d) * (den / d))
            .sum();
        RootOfUnity::new(num as i64, den)
    }
}

pub fn dual_group(g: &FiniteAbelianGroup) -> DualGroup {
    DualGroup {
        group: g.clone(),
        dual: FiniteAbelianGroup::new(g.invariant_factors()).expect("same factors are valid"),
    }
}

/// All `(r, [X : X(Π)])` with `r² · [X : X(Π)] = stabilizer_index`.
pub fn solve_multiplicity(gamma: &FiniteAbelianGroup, stabilizer_index: u64) -> Result<Vec<(u64, u64)>> {
    let order = gamma.order() as u64;
    if stabilizer_index == 0 || order % stabilizer_index != 0 {
        return Err(input_err!(
            "stabilizer index {stabilizer_index} does not divide |Γ| = {order}"
        ));
    }
    let mut out = Vec::new();
    let mut r = 1u64;
    while r * r <= stabilizer_index {
        if stabilizer_index % (r * r) == 0 {
            let x = stabilizer_index / (r * r);
            if order % x == 0 {
                out.push((r, x));
            }
        }
        r += 1;
    }
    Ok(out)
}

/// Group data attached to one irreducible representation of the
/// disconnected group: `r² [X : X(Π)] = [G_π : G⁰]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordInstance {
    gamma: FiniteAbelianGroup,
    stabilizer_index: u64,
    multiplicity: u64,
    x_mod_xpi: u64,
}

impl CliffordInstance {
    pub fn new(gamma: FiniteAbelianGroup, stabilizer_index: u64, multiplicity: u64, x_mod_xpi: u64) -> Result<Self> {
        let order = gamma.order() as u64;
        if stabilizer_index == 0 || order % stabilizer_index != 0 {
            return Err(inconsistent!(
                "stabilizer index {stabilizer_index} does not divide |Γ| = {order}"
            ));
        }
        if multiplicity == 0 || x_mod_xpi == 0 {
            return Err(inconsistent!("multiplicity and [X : X(Π)] must be positive"));
        }
        if multiplicity * multiplicity * x_mod_xpi != stabilizer_index {
            return Err(inconsistent!(
                "r²·[X : X(Π)] = {}·{} ≠ {stabilizer_index}",
                multiplicity * multiplicity,
                x_mod_xpi
            ));
        }
        Ok(CliffordInstance {
            gamma,
            stabilizer_index,
            multiplicity,
            x_mod_xpi,
        })
    }

    pub fn gamma(&self) -> &FiniteAbelianGroup {
        &self.gamma
    }
    pub fn stabilizer_index(&self) -> u64 {
        self.stabilizer_index
    }
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }
    pub fn x_mod_xpi(&self) -> u64 {
        self.x_mod_xpi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionCensus {
    /// Irreducible constituents (with multiplicity) of the restriction to G⁰.
    pub restriction_length: u64,
    /// Irreducible constituents (with multiplicity) of Ind from G⁰ of one
    /// constituent of the restriction.
    pub induction_length: u64,
    pub orbit_size: u64,
    pub multiplicity: u64,
}

pub fn restriction_census(instance: &CliffordInstance, orbit_size: u64) -> Result<RestrictionCensus> {
    let order = instance.gamma.order() as u64;
    if orbit_size * instance.stabilizer_index != order {
        return Err(inconsistent!(
            "orbit size {orbit_size} times stabilizer index {} is not |Γ| = {order}",
            instance.stabilizer_index
        ));
    }
    Ok(RestrictionCensus {
        restriction_length: instance.multiplicity * orbit_size,
        induction_length: instance.multiplicity * instance.x_mod_xpi,
        orbit_size,
        multiplicity: instance.multiplicity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCheck {
    pub holds: bool,
    pub diagnostic: String,
}

/// `[G_π : G⁰] = [N_{G_π}(σ) : N_{G⁰}(σ)]`.
pub fn stabilizer_transfer_check(g_pi_index: u64, n_gpi_index: u64) -> TransferCheck {
    let holds = g_pi_index == n_gpi_index && g_pi_index > 0;
    let diagnostic = if holds {
        format!("both indices equal {g_pi_index}")
    } else {
        format!("[G_π : G⁰] = {g_pi_index} but [N_G_π(σ) : N_G⁰(σ)] = {n_gpi_index}")
    };
    TransferCheck { holds, diagnostic }
}

/// One orbit of Γ on constituent labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistOrbit {
    pub labels: Vec<usize>,
    pub multiplicity: u64,
}

/// Orbits of Γ acting on constituent labels, checking that multiplicities
/// are constant along each orbit.
///
/// `action[g]` is the permutation of label indices for the element of index
/// `g` in `gamma`.
pub fn twist_orbit_partition(
    gamma: &FiniteAbelianGroup,
    labels: &[String],
    action: &[Vec<usize>],
    multiplicities: &[u64],
) -> Result<Vec<TwistOrbit>> {
    let n = labels.len();
    if multiplicities.len() != n {
        return Err(input_err!("{} multiplicities for {n} labels", multiplicities.len()));
    }
    if action.len() != gamma.order() {
        return Err(input_err!("action lists {} permutations for |Γ| = {}", action.len(), gamma.order()));
    }
    for (g, perm) in action.iter().enumerate() {
        let distinct: BTreeSet<_> = perm.iter().copied().collect();
        if perm.len() != n || distinct.len() != n || perm.iter().any(|&x| x >= n) {
            return Err(input_err!("action of Γ element {g} is not a permutation of the labels"));
        }
    }
    if action[gamma.identity()].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(inconsistent!("identity of Γ does not act trivially"));
    }
    for g in 0..gamma.order() {
        for h in 0..gamma.order() {
            let gh = gamma.mul(g, h);
            if (0..n).any(|i| action[gh][i] != action[g][action[h][i]]) {
                return Err(inconsistent!("label action is not a homomorphism at ({g}, {h})"));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let orbit: BTreeSet<usize> = action.iter().map(|p| p[start]).collect();
        let m = multiplicities[start];
        for &i in &orbit {
            seen[i] = true;
            if multiplicities[i] != m {
                return Err(inconsistent!(
                    "labels {} and {} lie in one twist orbit but have multiplicities {m} and {}",
                    labels[start],
                    labels[i],
                    multiplicities[i]
                ));
            }
        }
        orbits.push(TwistOrbit {
            labels: orbit.into_iter().collect(),
            multiplicity: m,
        });
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_reduce() {
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::new(1, 2));
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity::new(3, 4));
        assert_eq!(RootOfUnity::new(1, 4).mul(RootOfUnity::new(1, 4)).to_string(), "-1");
        assert_eq!(RootOfUnity::new(1, 3).mul(RootOfUnity::new(2, 3)), RootOfUnity::ONE);
    }

    #[test]
    fn invariant_factor_chain_enforced() {
        assert!(FiniteAbelianGroup::new(&[2, 4]).is_ok());
        assert!(FiniteAbelianGroup::new(&[2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
        assert_eq!(FiniteAbelianGroup::trivial().order(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = FiniteAbelianGroup::new(&[2, 6]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.coords(i)).unwrap(), i);
        }
        assert_eq!(g.mul(g.generator(0), g.generator(0)), 0);
    }

    #[test]
    fn small_pairings() {
        let z2 = dual_group(&FiniteAbelianGroup::cyclic(2).unwrap());
        assert_eq!(z2.pairing(1, 1).to_string(), "-1");
        let z4 = dual_group(&FiniteAbelianGroup::cyclic(4).unwrap());
        assert_eq!(z4.pairing(1, 1), RootOfUnity::new(1, 4));
        let k = dual_group(&FiniteAbelianGroup::new(&[2, 2]).unwrap());
        // Sign table: ⟨χ, g⟩ = (-1)^{χ·g}.
        for c in 0..4 {
            for g in 0..4 {
                let dot = (c >> 1 & g >> 1) + (c & 1 & g);
                assert_eq!(k.pairing(c, g), RootOfUnity::new(dot as i64, 2));
            }
        }
    }

    #[test]
    fn multiplicity_solutions() {
        let g4 = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert_eq!(solve_multiplicity(&g4, 4).unwrap(), vec![(1, 4), (2, 1)]);
        assert_eq!(solve_multiplicity(&g4, 2).unwrap(), vec![(1, 2)]);
        assert_eq!(solve_multiplicity(&g4, 1).unwrap(), vec![(1, 1)]);
        assert!(solve_multiplicity(&g4, 3).is_err());
    }

    #[test]
    fn census_for_order_two_component_group() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let fixed = CliffordInstance::new(z2.clone(), 2, 1, 2).unwrap();
        let c = restriction_census(&fixed, 1).unwrap();
        assert_eq!((c.restriction_length, c.induction_length), (1, 2));
        let moved = CliffordInstance::new(z2.clone(), 1, 1, 1).unwrap();
        let c = restriction_census(&moved, 2).unwrap();
        assert_eq!((c.restriction_length, c.induction_length), (2, 1));
        assert!(restriction_census(&moved, 1).is_err());
        assert!(CliffordInstance::new(z2, 2, 1, 1).is_err());
    }

    #[test]
    fn census_trivial_gamma() {
        let t = CliffordInstance::new(FiniteAbelianGroup::trivial(), 1, 1, 1).unwrap();
        let c = restriction_census(&t, 1).unwrap();
        assert_eq!((c.restriction_length, c.induction_length), (1, 1));
    }

    #[test]
    fn transfer() {
        assert!(stabilizer_transfer_check(2, 2).holds);
        assert!(!stabilizer_transfer_check(4, 2).holds);
    }

    #[test]
    fn swap_orbits() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let labels: Vec<String> = ["11", "1s", "s1", "ss"].iter().map(|s| s.to_string()).collect();
        let action = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        let orbits = twist_orbit_partition(&z2, &labels, &action, &[1, 1, 1, 1]).unwrap();
        let parts: Vec<_> = orbits.iter().map(|o| o.labels.clone()).collect();
        assert_eq!(parts, vec![vec![0], vec![1, 2], vec![3]]);

        let trivial = vec![vec![0, 1, 2, 3]; 2];
        assert_eq!(twist_orbit_partition(&z2, &labels, &trivial, &[1, 1, 1, 1]).unwrap().len(), 4);

        let err = twist_orbit_partition(&z2, &labels, &action, &[1, 1, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::InconsistentDatum(_)));
    }
}
