use std::sync::atomic::{AtomicU64, Ordering};

use super::{FiniteGroup, GroupId, Subgroup};
use crate::error::{input_err, Error, Result};

/// Hard cap on the order of any enumerated group.
pub const MAX_ORDER: usize = 65_536;

/// Largest order for which an explicit multiplication table is materialized.
///
/// Bigger groups (extended Weyl groups of rank 6) multiply on demand instead.
pub const MAX_TABLE_ORDER: usize = 4096;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> GroupId {
    GroupId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    id: GroupId,
    order: usize,
    mult: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds and validates a table given row by row (`rows[a][b] = a*b`).
    ///
    /// Checks the Latin-square property, the identity and inverse laws, and
    /// associativity (Light's test over a greedily chosen generating set,
    /// which is equivalent to the exhaustive triple check).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(input_err!("group table must be non-empty"));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::Resource(format!(
                "table of order {n} exceeds the table cap {MAX_TABLE_ORDER}"
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(input_err!("row {a} has length {} (expected {n})", row.len()));
            }
            for &x in row {
                if x >= n {
                    return Err(input_err!("entry {x} in row {a} is out of range"));
                }
                mult.push(x as u32);
            }
        }
        Self::from_flat(n, mult)
    }

    pub(crate) fn from_flat(n: usize, mult: Vec<u32>) -> Result<Self> {
        debug_assert_eq!(mult.len(), n * n);
        check_latin(n, &mult)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] as usize == x && mult[x * n + e] as usize == x))
            .ok_or_else(|| input_err!("table has no two-sided identity"))?;
        let mut inverse = vec![0u32; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee exactly one right inverse.
            let b = (0..n)
                .find(|&b| mult[a * n + b] as usize == identity)
                .expect("latin row contains the identity");
            if mult[b * n + a] as usize != identity {
                return Err(input_err!("element {a} has no two-sided inverse"));
            }
            *inv = b as u32;
        }
        let table = GroupTable {
            id: fresh_id(),
            order: n,
            mult,
            identity,
            inverse,
            labels: None,
        };
        if let Some((x, y, z)) = table.associativity_failure() {
            return Err(input_err!("associativity fails for ({x}, {y}, {z})"));
        }
        Ok(table)
    }

    /// Attaches display labels, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(input_err!(
                "{} labels supplied for a group of order {}",
                labels.len(),
                self.order
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// True when both tables multiply identically under the identity relabeling.
    pub fn same_table(&self, other: &GroupTable) -> bool {
        self.order == other.order && self.mult == other.mult
    }

    /// Extracts the multiplication table of `sub`, re-indexed in the sorted
    /// order of its members. Returns the table and the map from new indices
    /// to indices in `group`.
    pub fn from_subgroup<G: FiniteGroup + ?Sized>(
        group: &G,
        sub: &Subgroup,
    ) -> Result<(GroupTable, Vec<usize>)> {
        sub.check_parent(group)?;
        let members = sub.members().to_vec();
        let n = members.len();
        if n > MAX_TABLE_ORDER {
            return Err(Error::Resource(format!(
                "subgroup of order {n} exceeds the table cap {MAX_TABLE_ORDER}"
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                let c = group.mul(a, b);
                let pos = sub
                    .position(c)
                    .ok_or_else(|| input_err!("subgroup is not closed under multiplication"))?;
                mult.push(pos as u32);
            }
        }
        let labels = members.iter().map(|&m| group.element_label(m)).collect();
        let table = GroupTable::from_flat(n, mult)?.with_labels(labels)?;
        Ok((table, members))
    }

    /// Light's associativity test.
    ///
    /// The set of elements `g` with `(xg)y = x(gy)` for all `x, y` is closed
    /// under products, so it suffices to test a generating set.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let mut count = 1;
        while count < n {
            let g = reached.iter().position(|r| !r).expect("count < n");
            gens.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !reached[y] {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        for &g in &gens {
            for x in 0..n {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Some((x, g, y));
                    }
                }
            }
        }
        None
    }

    /// Cyclic group `Z/n`, element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(input_err!("cyclic group of order 0"));
        }
        let mult = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        Self::from_flat(n, mult)
    }

    /// Direct product; element `(a, b)` has index `a * |right| + b`.
    pub fn direct_product(left: &GroupTable, right: &GroupTable) -> Result<Self> {
        let (m, k) = (left.order, right.order);
        let n = m * k;
        if n > MAX_TABLE_ORDER {
            return Err(Error::Resource(format!("direct product of order {n} exceeds the table cap")));
        }
        let mut mult = Vec::with_capacity(n * n);
        for a1 in 0..m {
            for b1 in 0..k {
                for a2 in 0..m {
                    for b2 in 0..k {
                        mult.push((left.mul(a1, a2) * k + right.mul(b1, b2)) as u32);
                    }
                }
            }
        }
        Self::from_flat(n, mult)
    }

    /// Dihedral group of the given (even) order: `r^i s^j` has index `j * m + i`.
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || order % 2 != 0 {
            return Err(input_err!("dihedral order must be even and positive, got {order}"));
        }
        let m = order / 2;
        // r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)
        let idx = |i: usize, j: usize| j * m + i;
        let mut mult = Vec::with_capacity(order * order);
        for b in 0..2 {
            for a in 0..m {
                for d in 0..2 {
                    for c in 0..m {
                        let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                        mult.push(idx(rot, (b + d) % 2) as u32);
                    }
                }
            }
        }
        Self::from_flat(order, mult)
    }

    /// Dicyclic group of order `4m` (`m = 2` gives the quaternion group):
    /// `<a, x | a^{2m} = 1, x^2 = a^m, x a x^{-1} = a^{-1}>`, with `a^i x^j`
    /// at index `j * 2m + i`.
    pub fn dicyclic(order: usize) -> Result<Self> {
        if order < 8 || order % 4 != 0 {
            return Err(input_err!("dicyclic order must be a multiple of 4, at least 8; got {order}"));
        }
        let n2 = order / 2;
        let m = order / 4;
        let idx = |i: usize, j: usize| j * n2 + i;
        let mut mult = Vec::with_capacity(order * order);
        for j1 in 0..2 {
            for i1 in 0..n2 {
                for j2 in 0..2 {
                    for i2 in 0..n2 {
                        let (i, j) = match (j1, j2) {
                            (0, _) => ((i1 + i2) % n2, j2),
                            (1, 0) => ((i1 + n2 - i2) % n2, 1),
                            // a^i1 x a^i2 x = a^(i1 - i2) x^2 = a^(i1 - i2 + m)
                            _ => ((i1 + n2 - i2 + m) % n2, 0),
                        };
                        mult.push(idx(i, j) as u32);
                    }
                }
            }
        }
        Self::from_flat(order, mult)
    }
}

fn check_latin(n: usize, mult: &[u32]) -> Result<()> {
    let mut seen = vec![0usize; n];
    for a in 0..n {
        let stamp = a + 1;
        for b in 0..n {
            let x = mult[a * n + b] as usize;
            if seen[x] == stamp {
                return Err(input_err!("row {a} repeats element {x}; not a Latin square"));
            }
            seen[x] = stamp;
        }
    }
    seen.iter_mut().for_each(|s| *s = 0);
    for b in 0..n {
        let stamp = b + 1;
        for a in 0..n {
            let x = mult[a * n + b] as usize;
            if seen[x] == stamp {
                return Err(input_err!("column {b} repeats element {x}; not a Latin square"));
            }
            seen[x] = stamp;
        }
    }
    Ok(())
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn group_id(&self) -> GroupId {
        self.id
    }
    fn element_label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }
}
