//! Exact character tables of small finite groups.
//!
//! Non-abelian groups go through Dixon's method: the class-multiplication
//! matrices are diagonalized simultaneously over a prime field `F_p` with
//! `p ≡ 1 (mod exponent)`, and each character value is lifted back to an
//! exact sum of roots of unity through its eigenvalue multiplicities.
//! Abelian groups are handled by extending characters along a chain of
//! cyclic subgroups.

use std::cmp::Ordering;
use std::fmt;

use super::modp::{nullspace, prime_above, rref, roots, char_poly, Field, Mat};
use crate::clifford::RootOfUnity;
use crate::error::{Error, Result};
use crate::groupcore::{conjugacy_classes, element_order, is_abelian, FiniteGroup, MAX_TABLE_ORDER};

/// `Σ μ_t · exp(2πi t / e)` for a fixed exponent `e`, stored sparsely as
/// `(t, μ_t)` pairs with `μ_t > 0`, sorted by `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    terms: Vec<(u32, u32)>,
}

impl Cyclotomic {
    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    fn from_root(r: RootOfUnity, e: u64) -> Self {
        let t = r.numerator() * (e / r.denominator());
        Cyclotomic {
            terms: vec![(t as u32, 1)],
        }
    }

    /// Value in `C` as `(re, im)`.
    pub fn to_complex(&self, e: u64) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), &(t, mu)| {
            let (c, s) = RootOfUnity::new(t as i64, e).to_complex();
            (re + mu as f64 * c, im + mu as f64 * s)
        })
    }

    /// Sum of the multiplicities; equals the degree for a character value.
    pub fn weight(&self) -> u64 {
        self.terms.iter().map(|&(_, m)| m as u64).sum()
    }

    /// The value multiplied by `exp(2πi·shift/e)`.
    pub fn times_root(&self, shift: u64, e: u64) -> Self {
        let mut terms: Vec<(u32, u32)> = self
            .terms
            .iter()
            .map(|&(t, m)| (((t as u64 + shift) % e) as u32, m))
            .collect();
        terms.sort_unstable();
        Cyclotomic { terms }
    }

    /// The single root of unity `ζ` when the value is `m·ζ`.
    pub fn as_scaled_root(&self, e: u64) -> Option<(u64, RootOfUnity)> {
        match self.terms.as_slice() {
            [(t, m)] => Some((*m as u64, RootOfUnity::new(*t as i64, e))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMethod {
    AbelianDual,
    Dixon { prime: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub degree: u64,
    /// One value per conjugacy class, in class order.
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_order: usize,
    exponent: u64,
    classes: Vec<Vec<usize>>,
    characters: Vec<Character>,
    method: TableMethod,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.group_order
    }
    /// Exponent `e` of the group; values are sums of `e`-th roots of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    /// Conjugacy classes, identity class first, then by least element.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
    pub fn class_of(&self, g: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&g).is_ok())
    }
    /// Characters sorted by degree, then by values; the trivial one first.
    pub fn characters(&self) -> &[Character] {
        &self.characters
    }
    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree).collect()
    }
    pub fn method(&self) -> TableMethod {
        self.method
    }

    /// Character values as complex numbers, `[character][class]`.
    pub fn complex_values(&self) -> Vec<Vec<(f64, f64)>> {
        self.characters
            .iter()
            .map(|c| c.values.iter().map(|v| v.to_complex(self.exponent)).collect())
            .collect()
    }

    /// Largest deviation of `⟨χ, ψ⟩` from `δ_{χψ}` over all pairs.
    pub fn orthogonality_residual(&self) -> f64 {
        let vals = self.complex_values();
        let sizes = self.class_sizes();
        let n = self.group_order as f64;
        let mut worst: f64 = 0.0;
        for (i, a) in vals.iter().enumerate() {
            for (j, b) in vals.iter().enumerate() {
                let (mut re, mut im) = (0.0, 0.0);
                for ((x, y), &s) in a.iter().zip(b).zip(&sizes) {
                    // x · conj(y)
                    re += s as f64 * (x.0 * y.0 + x.1 * y.1);
                    im += s as f64 * (x.1 * y.0 - x.0 * y.1);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((re / n - target).abs()).max((im / n).abs());
            }
        }
        worst
    }

    /// Largest distance from a degree, read off the complex table, to the
    /// nearest integer.
    pub fn degree_residual(&self) -> f64 {
        self.complex_values()
            .iter()
            .map(|row| {
                let (re, im) = row[0];
                (re - re.round()).abs().max(im.abs())
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "classes: {:?}", self.class_sizes())?;
        for (i, c) in self.characters.iter().enumerate() {
            let row: Vec<String> = c
                .values
                .iter()
                .map(|v| {
                    let (re, im) = v.to_complex(self.exponent);
                    format_complex(re, im)
                })
                .collect();
            writeln!(f, "χ{i}: {}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn format_complex(re: f64, im: f64) -> String {
    let clean = |x: f64| if x.abs() < 5e-10 { 0.0 } else { x };
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

pub fn character_table<G: FiniteGroup + ?Sized>(group: &G) -> Result<CharacterTable> {
    let n = group.order();
    if n > MAX_TABLE_ORDER {
        return Err(Error::Resource(format!(
            "character tables are limited to order {MAX_TABLE_ORDER}; got {n}"
        )));
    }
    let mut classes = conjugacy_classes(group);
    let e = group.identity();
    let id_pos = classes.iter().position(|c| c == &[e]).expect("identity forms a class");
    let id_class = classes.remove(id_pos);
    classes.insert(0, id_class);

    let exponent = (0..n).fold(1u64, |acc, g| num_integer::lcm(acc, element_order(group, g) as u64));
    let (mut characters, method) = if is_abelian(group) {
        (abelian_characters(group, &classes, exponent), TableMethod::AbelianDual)
    } else {
        dixon(group, &classes, exponent)?
    };
    characters.sort_by(compare_characters);
    let table = CharacterTable {
        group_order: n,
        exponent,
        classes,
        characters,
        method,
    };
    let total: u64 = table.degrees().iter().map(|d| d * d).sum();
    if total != n as u64 || table.characters.len() != table.classes.len() {
        return Err(Error::Computation(format!(
            "character table is incomplete: {} characters for {} classes, Σdeg² = {total}",
            table.characters.len(),
            table.classes.len()
        )));
    }
    Ok(table)
}

fn compare_characters(a: &Character, b: &Character) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| a.values.cmp(&b.values))
}

fn abelian_characters<G: FiniteGroup + ?Sized>(group: &G, classes: &[Vec<usize>], e: u64) -> Vec<Character> {
    let n = group.order();
    let id = group.identity();
    // `chars[k][g]` is defined on the current subgroup H only.
    let mut in_h = vec![false; n];
    in_h[id] = true;
    let mut h_elems = vec![id];
    let mut chars: Vec<Vec<RootOfUnity>> = vec![vec![RootOfUnity::ONE; n]];
    for g in 0..n {
        if in_h[g] {
            continue;
        }
        let mut m = 1;
        let mut gm = g;
        while !in_h[gm] {
            gm = group.mul(gm, g);
            m += 1;
        }
        let mut powers = vec![id];
        for _ in 1..m {
            powers.push(group.mul(*powers.last().unwrap(), g));
        }
        let mut next_chars = Vec::with_capacity(chars.len() * m);
        for chi in &chars {
            let base = chi[gm];
            for s in 0..m as u64 {
                let omega = RootOfUnity::new(
                    (base.numerator() + s * base.denominator()) as i64,
                    base.denominator() * m as u64,
                );
                let mut ext = chi.clone();
                for (j, &pj) in powers.iter().enumerate().skip(1) {
                    let w = pow_root(omega, j as u64);
                    for &h in &h_elems {
                        ext[group.mul(h, pj)] = chi[h].mul(w);
                    }
                }
                next_chars.push(ext);
            }
        }
        let mut next_h = h_elems.clone();
        for &pj in powers.iter().skip(1) {
            for &h in &h_elems {
                let x = group.mul(h, pj);
                in_h[x] = true;
                next_h.push(x);
            }
        }
        h_elems = next_h;
        chars = next_chars;
    }
    chars
        .into_iter()
        .map(|chi| Character {
            degree: 1,
            values: classes.iter().map(|c| Cyclotomic::from_root(chi[c[0]], e)).collect(),
        })
        .collect()
}

fn pow_root(r: RootOfUnity, k: u64) -> RootOfUnity {
    RootOfUnity::new((r.numerator() * k) as i64, r.denominator())
}

fn dixon<G: FiniteGroup + ?Sized>(
    group: &G,
    classes: &[Vec<usize>],
    e: u64,
) -> Result<(Vec<Character>, TableMethod)> {
    let n = group.order();
    let r = classes.len();
    let mut class_of = vec![0usize; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let p = prime_above(2 * n as u64, e);
    let f = Field { p };

    // coeff[i] is the matrix (j, k) ↦ #{x ∈ C_i : x⁻¹ g_k ∈ C_j}.
    let coeff: Vec<Mat> = classes
        .iter()
        .map(|ci| {
            let mut m = vec![vec![0u64; r]; r];
            for (k, ck) in classes.iter().enumerate() {
                let gk = ck[0];
                for &x in ci {
                    m[class_of[group.mul(group.inv(x), gk)]][k] += 1;
                }
            }
            m
        })
        .collect();

    let mut spaces: Vec<Mat> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for m in &coeff {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(f, &space, m)?);
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Computation(
            "class-multiplication matrices did not separate all characters".into(),
        ));
    }

    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[group.inv(c[0])]).collect();
    // power_class[i][l] is the class of g_i^l.
    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut out = Vec::with_capacity(e as usize);
            let mut x = group.identity();
            for _ in 0..e {
                out.push(class_of[x]);
                x = group.mul(x, c[0]);
            }
            out
        })
        .collect();
    let zeta = f.root_of_unity(e);
    let zeta_inv = f.inv(zeta);
    let e_inv = f.inv(f.from_int(e));

    let mut characters = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        // Right eigenvectors of every coeff matrix are proportional to the
        // central characters ω_i = |C_i| χ(g_i) / χ(1); normalize ω_0 = 1.
        if v[0] == 0 {
            return Err(Error::Computation("eigenvector vanishes on the identity class".into()));
        }
        let scale = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0;
        for i in 0..r {
            s = f.add(s, f.mul(f.mul(omega[i], omega[inv_class[i]]), f.inv(f.from_int(sizes[i]))));
        }
        if s == 0 {
            return Err(Error::Computation("degenerate central character".into()));
        }
        let d2 = f.mul(f.from_int(n as u64), f.inv(s));
        let degree = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Computation("no integral degree matches the central character".into()))?;
        let values_p: Vec<u64> = (0..r)
            .map(|i| f.mul(f.mul(f.from_int(degree), omega[i]), f.inv(f.from_int(sizes[i]))))
            .collect();
        let mut values = Vec::with_capacity(r);
        for pc in &power_class {
            let mut terms = Vec::new();
            for t in 0..e {
                let step = f.pow(zeta_inv, t);
                let mut acc = 0;
                let mut z = 1;
                for &cl in pc {
                    acc = f.add(acc, f.mul(values_p[cl], z));
                    z = f.mul(z, step);
                }
                let mu = f.mul(acc, e_inv);
                if mu > degree {
                    return Err(Error::Computation(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {degree}"
                    )));
                }
                if mu > 0 {
                    terms.push((t as u32, mu as u32));
                }
            }
            let value = Cyclotomic { terms };
            if value.weight() != degree {
                return Err(Error::Computation("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(value);
        }
        characters.push(Character { degree, values });
    }
    Ok((characters, TableMethod::Dixon { prime: p }))
}

/// Splits an invariant subspace (rows of `basis`, in reduced echelon form)
/// into eigenspaces of `m` acting on column vectors.
fn split(f: Field, basis: &Mat, m: &Mat) -> Result<Vec<Mat>> {
    let mut basis = basis.clone();
    let pivots = rref(f, &mut basis);
    let k = basis.len();
    let r = m.len();
    // Column j of the restricted matrix is m·b_j read off on the pivots.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|row| m[row].iter().zip(b).fold(0, |acc, (&a, &x)| f.add(acc, f.mul(f.from_int(a), x))))
                .collect()
        })
        .collect();
    let restricted: Mat = (0..k)
        .map(|i| (0..k).map(|j| images[j][pivots[i]]).collect())
        .collect();
    let poly = char_poly(f, &restricted);
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in roots(f, &poly) {
        let shifted: Mat = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let null = nullspace(f, &shifted, k);
        total += null.len();
        let mut space: Mat = null
            .iter()
            .map(|y| {
                (0..r)
                    .map(|c| y.iter().zip(&basis).fold(0, |acc, (&yi, b)| f.add(acc, f.mul(yi, b[c]))))
                    .collect()
            })
            .collect();
        rref(f, &mut space);
        pieces.push(space);
    }
    if total != k {
        return Err(Error::Computation(
            "class-multiplication matrix is not diagonalizable modulo the chosen prime".into(),
        ));
    }
    Ok(pieces)
}
