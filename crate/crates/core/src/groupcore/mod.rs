//! Enumerated finite groups.
//!
//! Every group here is fully enumerated: elements are dense indices
//! `0..order`, assigned in enumeration order. Small groups carry an explicit
//! multiplication table ([`GroupTable`]); larger concrete groups (extended
//! Weyl groups) implement [`FiniteGroup`] by multiplying representatives on
//! demand. All set-valued outputs are sorted by index.

mod table;

use std::collections::BTreeMap;

use crate::error::{input_err, Result};

pub use table::{GroupTable, MAX_ORDER, MAX_TABLE_ORDER};
pub(crate) use table::fresh_id;

/// Identity of a concrete group object, used to catch subgroups handed to
/// the wrong parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(pub(crate) u64);

/// Read-only access to an enumerated group.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn group_id(&self) -> GroupId;
    fn element_label(&self, a: usize) -> String {
        a.to_string()
    }
}

/// A subgroup, stored as the sorted list of member indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: GroupId,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn trivial<G: FiniteGroup + ?Sized>(group: &G) -> Self {
        Subgroup {
            parent: group.group_id(),
            members: vec![group.identity()],
        }
    }

    pub fn whole<G: FiniteGroup + ?Sized>(group: &G) -> Self {
        Subgroup {
            parent: group.group_id(),
            members: (0..group.order()).collect(),
        }
    }

    /// Wraps an explicit member list after checking it is a subgroup.
    pub fn from_members<G: FiniteGroup + ?Sized>(group: &G, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if let Some(&bad) = m.iter().find(|&&x| x >= group.order()) {
            return Err(input_err!("element index {bad} out of range for order {}", group.order()));
        }
        let sub = Subgroup {
            parent: group.group_id(),
            members: m,
        };
        if !sub.contains(group.identity()) {
            return Err(input_err!("member set does not contain the identity"));
        }
        for &a in &sub.members {
            if !sub.contains(group.inv(a)) {
                return Err(input_err!("member set is not closed under inverses ({a})"));
            }
            for &b in &sub.members {
                if !sub.contains(group.mul(a, b)) {
                    return Err(input_err!("member set is not closed under products ({a}*{b})"));
                }
            }
        }
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(parent: GroupId, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> GroupId {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of `x` within the sorted member list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup {
            parent: self.parent,
            members,
        }
    }

    pub(crate) fn check_parent<G: FiniteGroup + ?Sized>(&self, group: &G) -> Result<()> {
        if self.parent != group.group_id() {
            return Err(input_err!("subgroup belongs to a different group"));
        }
        Ok(())
    }
}

/// Smallest subgroup containing `generators`.
pub fn generate_subgroup<G: FiniteGroup + ?Sized>(group: &G, generators: &[usize]) -> Result<Subgroup> {
    let n = group.order();
    if let Some(&bad) = generators.iter().find(|&&g| g >= n) {
        return Err(input_err!("generator index {bad} out of range for order {n}"));
    }
    let mut seen = vec![false; n];
    let e = group.identity();
    seen[e] = true;
    let mut stack = vec![e];
    // In a finite group, closure under right multiplication by the
    // generators already yields inverses.
    while let Some(x) = stack.pop() {
        for &g in generators {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let members = (0..n).filter(|&i| seen[i]).collect();
    Ok(Subgroup::from_sorted_unchecked(group.group_id(), members))
}

/// Whether `n` is normal in `within` (both subgroups of `group`).
pub fn is_normal_in<G: FiniteGroup + ?Sized>(group: &G, n: &Subgroup, within: &Subgroup) -> bool {
    n.is_subset_of(within)
        && within.members().iter().all(|&g| {
            let gi = group.inv(g);
            n.members().iter().all(|&x| n.contains(group.mul(group.mul(g, x), gi)))
        })
}

pub fn is_normal<G: FiniteGroup + ?Sized>(group: &G, n: &Subgroup) -> bool {
    is_normal_in(group, n, &Subgroup::whole(group))
}

/// One part of a double-coset partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Minimal index in the double coset.
    pub representative: usize,
    /// Sorted members.
    pub members: Vec<usize>,
}

impl DoubleCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of `group` into double cosets `left * g * right`, ordered by
/// representative.
pub fn double_cosets<G: FiniteGroup + ?Sized>(
    group: &G,
    left: &Subgroup,
    right: &Subgroup,
) -> Result<Vec<DoubleCoset>> {
    left.check_parent(group)?;
    right.check_parent(group)?;
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for g in 0..n {
        if assigned[g] {
            continue;
        }
        let mut members = Vec::new();
        for &h in left.members() {
            let hg = group.mul(h, g);
            for &k in right.members() {
                let x = group.mul(hg, k);
                if !assigned[x] {
                    assigned[x] = true;
                    members.push(x);
                }
            }
        }
        members.sort_unstable();
        out.push(DoubleCoset {
            representative: g,
            members,
        });
    }
    Ok(out)
}

/// Outcome of a semidirect-product test, with the failing conditions named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectCheck {
    pub normal: bool,
    pub trivial_intersection: bool,
    pub order_product: bool,
    pub covers: bool,
}

impl SemidirectCheck {
    pub fn holds(&self) -> bool {
        self.normal && self.trivial_intersection && self.order_product && self.covers
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if !self.normal {
            f.push("normal part is not normal");
        }
        if !self.trivial_intersection {
            f.push("intersection with complement is nontrivial");
        }
        if !self.order_product {
            f.push("order of normal part times order of complement differs from group order");
        }
        if !self.covers {
            f.push("products do not cover the group");
        }
        f
    }
}

/// Tests whether `within = normal_part ⋊ complement`.
pub fn semidirect_check_in<G: FiniteGroup + ?Sized>(
    group: &G,
    within: &Subgroup,
    normal_part: &Subgroup,
    complement: &Subgroup,
) -> SemidirectCheck {
    let normal = is_normal_in(group, normal_part, within);
    let trivial_intersection = normal_part.intersection(complement).is_trivial();
    let order_product = normal_part.order() * complement.order() == within.order();
    let mut hit = vec![false; group.order()];
    for &x in normal_part.members() {
        for &h in complement.members() {
            hit[group.mul(x, h)] = true;
        }
    }
    let covers = within.members().iter().all(|&g| hit[g])
        && complement.is_subset_of(within)
        && normal_part.is_subset_of(within);
    SemidirectCheck {
        normal,
        trivial_intersection,
        order_product,
        covers,
    }
}

pub fn semidirect_check<G: FiniteGroup + ?Sized>(
    group: &G,
    normal_part: &Subgroup,
    complement: &Subgroup,
) -> SemidirectCheck {
    semidirect_check_in(group, &Subgroup::whole(group), normal_part, complement)
}

/// Every factorization `g = n * h` with `n ∈ normal_part`, `h ∈ complement`.
pub fn factorizations<G: FiniteGroup + ?Sized>(
    group: &G,
    g: usize,
    normal_part: &Subgroup,
    complement: &Subgroup,
) -> Vec<(usize, usize)> {
    complement
        .members()
        .iter()
        .filter_map(|&h| {
            let n = group.mul(g, group.inv(h));
            normal_part.contains(n).then_some((n, h))
        })
        .collect()
}

pub fn element_order<G: FiniteGroup + ?Sized>(group: &G, a: usize) -> usize {
    let e = group.identity();
    let mut x = a;
    let mut k = 1;
    while x != e {
        x = group.mul(x, a);
        k += 1;
    }
    k
}

/// Map from element order to the number of elements of that order.
pub fn order_census<G: FiniteGroup + ?Sized>(group: &G) -> BTreeMap<usize, usize> {
    order_census_in(group, &Subgroup::whole(group))
}

pub fn order_census_in<G: FiniteGroup + ?Sized>(group: &G, within: &Subgroup) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for &a in within.members() {
        *census.entry(element_order(group, a)).or_insert(0) += 1;
    }
    census
}

/// Conjugacy classes as sorted index sets, ordered by their least element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(group: &G) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let mut class = Vec::new();
        for g in 0..n {
            let c = group.mul(group.mul(g, a), group.inv(g));
            if !assigned[c] {
                assigned[c] = true;
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

pub fn center<G: FiniteGroup + ?Sized>(group: &G) -> Subgroup {
    let n = group.order();
    let members = (0..n)
        .filter(|&z| (0..n).all(|g| group.mul(z, g) == group.mul(g, z)))
        .collect();
    Subgroup::from_sorted_unchecked(group.group_id(), members)
}

pub fn is_abelian<G: FiniteGroup + ?Sized>(group: &G) -> bool {
    let n = group.order();
    (0..n).all(|a| (a + 1..n).all(|b| group.mul(a, b) == group.mul(b, a)))
}

/// Cheap isomorphism-invariant summary used in place of isomorphism tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub census: BTreeMap<usize, usize>,
    pub abelian: bool,
    pub center_order: usize,
}

pub fn fingerprint<G: FiniteGroup + ?Sized>(group: &G) -> Fingerprint {
    Fingerprint {
        order: group.order(),
        census: order_census(group),
        abelian: is_abelian(group),
        center_order: center(group).order(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> GroupTable {
        GroupTable::direct_product(&GroupTable::cyclic(2).unwrap(), &GroupTable::cyclic(2).unwrap())
            .unwrap()
    }

    #[test]
    fn generate_from_nothing_is_trivial() {
        let g = GroupTable::dihedral(8).unwrap();
        let s = generate_subgroup(&g, &[]).unwrap();
        assert_eq!(s.members(), &[0]);
    }

    #[test]
    fn generate_cyclic_closure() {
        let g = klein();
        assert_eq!(generate_subgroup(&g, &[1]).unwrap().order(), 2);
        assert!(generate_subgroup(&g, &[7]).is_err());
    }

    #[test]
    fn double_cosets_extremes() {
        let g = GroupTable::dihedral(8).unwrap();
        let whole = Subgroup::whole(&g);
        let triv = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &whole, &whole).unwrap().len(), 1);
        let singletons = double_cosets(&g, &triv, &triv).unwrap();
        assert_eq!(singletons.len(), 8);
        assert!(singletons.iter().all(|d| d.size() == 1));
    }

    #[test]
    fn double_cosets_reject_foreign_subgroups() {
        let g = GroupTable::cyclic(4).unwrap();
        let h = GroupTable::cyclic(4).unwrap();
        let foreign = Subgroup::whole(&h);
        assert!(double_cosets(&g, &foreign, &Subgroup::whole(&g)).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let k = klein();
        // (a, b) ↦ index a*2 + b
        let a = generate_subgroup(&k, &[2]).unwrap();
        let b = generate_subgroup(&k, &[1]).unwrap();
        assert!(semidirect_check(&k, &a, &b).holds());

        let z4 = GroupTable::cyclic(4).unwrap();
        let sq = generate_subgroup(&z4, &[2]).unwrap();
        let chk = semidirect_check(&z4, &sq, &sq);
        assert!(!chk.holds());
        assert!(!chk.trivial_intersection);
        assert!(chk.failures().contains(&"intersection with complement is nontrivial"));
    }

    #[test]
    fn censuses() {
        let c = order_census(&klein());
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 3)]));
        let c = order_census(&GroupTable::cyclic(4).unwrap());
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
        let c = order_census(&GroupTable::dihedral(8).unwrap());
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        let c = order_census(&GroupTable::dicyclic(8).unwrap());
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
    }

    #[test]
    fn classes_of_small_groups() {
        let d8 = GroupTable::dihedral(8).unwrap();
        let mut sizes: Vec<_> = conjugacy_classes(&d8).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(conjugacy_classes(&klein()).iter().all(|c| c.len() == 1));
        assert_eq!(conjugacy_classes(&GroupTable::cyclic(1).unwrap()).len(), 1);
    }

    #[test]
    fn fingerprints_separate_d8_and_q8() {
        let d = fingerprint(&GroupTable::dihedral(8).unwrap());
        let q = fingerprint(&GroupTable::dicyclic(8).unwrap());
        assert_ne!(d, q);
        assert_eq!(d.center_order, 2);
        assert_eq!(q.center_order, 2);
    }

    #[test]
    fn from_members_validates_closure() {
        let g = GroupTable::cyclic(4).unwrap();
        assert!(Subgroup::from_members(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&g, &[2, 0]).is_ok());
        assert!(Subgroup::from_members(&g, &[1, 3]).is_err());
    }
}
