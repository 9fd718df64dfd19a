//! Root systems of classical type in standard coordinates, and extended
//! Weyl groups `W ⋊ Γ` realized by integer orthogonal matrices.
//!
//! An integer orthogonal matrix is exactly a signed permutation matrix, so
//! every matrix here is stored as a [`SignedPerm`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::clifford::FiniteAbelianGroup;
use crate::error::{input_err, Error, Result};
use crate::groupcore::{fresh_id, FiniteGroup, GroupId, GroupTable, Subgroup, MAX_ORDER, MAX_TABLE_ORDER};

/// Integer vector in standard coordinates.
pub type Root = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl RootType {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(RootType::A),
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            "D" | "d" => Ok(RootType::D),
            other => Err(input_err!("unsupported root system type {other:?} (expected A, B, C or D)")),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
        };
        f.write_str(c)
    }
}

/// Signed permutation matrix: column `i` has the single nonzero entry
/// `sign(images[i])` in row `|images[i]| - 1`, i.e. `e_i ↦ ±e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm(Box<[i16]>);

impl SignedPerm {
    pub fn identity(dim: usize) -> Self {
        SignedPerm((1..=dim as i16).collect())
    }

    /// Validates a row-major integer matrix.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(input_err!("matrix is not square"));
        }
        let mut images = vec![0i16; n];
        let mut row_used = vec![false; n];
        for col in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&r| rows[r][col] != 0).collect();
            if nz.len() != 1 || rows[nz[0]][col].abs() != 1 {
                return Err(input_err!(
                    "column {col} is not a signed unit vector; integer orthogonal matrices are signed permutations"
                ));
            }
            let r = nz[0];
            if row_used[r] {
                return Err(input_err!("row {r} has two nonzero entries"));
            }
            row_used[r] = true;
            images[col] = (r as i16 + 1) * rows[r][col].signum() as i16;
        }
        Ok(SignedPerm(images.into()))
    }

    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0i64; n]; n];
        for (col, &img) in self.0.iter().enumerate() {
            m[img.unsigned_abs() as usize - 1][col] = img.signum() as i64;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i as i16 + 1)
    }

    pub fn apply(&self, v: &[i64]) -> Root {
        let mut out = vec![0i64; v.len()];
        for (i, &img) in self.0.iter().enumerate() {
            out[img.unsigned_abs() as usize - 1] += img.signum() as i64 * v[i];
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let images = other
            .0
            .iter()
            .map(|&b| {
                let a = self.0[b.unsigned_abs() as usize - 1];
                a * b.signum()
            })
            .collect();
        SignedPerm(images)
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0i16; self.dim()];
        for (i, &img) in self.0.iter().enumerate() {
            images[img.unsigned_abs() as usize - 1] = (i as i16 + 1) * img.signum();
        }
        SignedPerm(images.into())
    }

    /// Number of coordinates sent to their own negatives or elsewhere with
    /// sign −1.
    pub fn sign_changes(&self) -> usize {
        self.0.iter().filter(|&&x| x < 0).count()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x:+}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Formats a root as `e1-e2`, `2e3`, `-e1-e4`.
pub fn format_root(r: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in r.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = c.abs();
        if mag == 1 {
            s.push_str(&format!("{sign}e{}", i + 1));
        } else {
            s.push_str(&format!("{sign}{mag}e{}", i + 1));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parses `e1-e2`, `e3+e4`, `2e1`, `-e2` into a vector of length `dim`.
pub fn parse_root(s: &str, dim: usize) -> Result<Root> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(input_err!("empty root expression"));
    }
    let mut v = vec![0i64; dim];
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: i64 = if i == start {
            1
        } else {
            compact[start..i].parse().map_err(|_| input_err!("bad coefficient in {s:?}"))?
        };
        if i >= bytes.len() || bytes[i] != b'e' {
            return Err(input_err!("expected 'e<k>' in root expression {s:?}"));
        }
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let k: usize = compact[start..i]
            .parse()
            .map_err(|_| input_err!("missing coordinate index in {s:?}"))?;
        if k == 0 || k > dim {
            return Err(input_err!("coordinate e{k} out of range 1..={dim} in {s:?}"));
        }
        v[k - 1] += sign * coef;
    }
    Ok(v)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}

fn unit(dim: usize, i: usize, c: i64) -> Root {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn pair(dim: usize, i: usize, a: i64, j: usize, b: i64) -> Root {
    let mut v = vec![0; dim];
    v[i] = a;
    v[j] = b;
    v
}

/// Reflection in `alpha`, when it is an integer orthogonal matrix.
pub fn reflection(alpha: &[i64]) -> Result<SignedPerm> {
    let nn = dot(alpha, alpha);
    if nn == 0 {
        return Err(input_err!("cannot reflect in the zero vector"));
    }
    let dim = alpha.len();
    let mut rows = vec![vec![0i64; dim]; dim];
    for col in 0..dim {
        let e = unit(dim, col, 1);
        let c2 = 2 * dot(alpha, &e);
        if c2 % nn != 0 {
            return Err(input_err!("reflection in {} is not integral", format_root(alpha)));
        }
        for (row, r) in rows.iter_mut().enumerate() {
            r[col] = e[row] - (c2 / nn) * alpha[row];
        }
    }
    SignedPerm::from_matrix(&rows)
        .map_err(|_| input_err!("reflection in {} is not a signed permutation", format_root(alpha)))
}

/// A reduced root system with a chosen positive system, in standard
/// coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    rank: usize,
    dim: usize,
    roots: Vec<Root>,
    positive: Vec<Root>,
    simple: Vec<Root>,
    positive_set: HashSet<Root>,
    root_set: HashSet<Root>,
}

impl RootSystem {
    /// `A_n` in `n+1` coordinates, `B_n`, `C_n`, `D_n` in `n` coordinates.
    pub fn classical(kind: RootType, rank: usize) -> Result<Self> {
        Self::product(&[(kind, rank)])
    }

    /// Orthogonal product of classical systems on disjoint coordinate blocks.
    pub fn product(parts: &[(RootType, usize)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(input_err!("empty product of root systems"));
        }
        let mut dim = 0;
        let mut positive = Vec::new();
        let mut simple = Vec::new();
        let mut labels = Vec::new();
        let mut rank = 0;
        for &(kind, n) in parts {
            let min = if kind == RootType::D { 2 } else { 1 };
            if n < min {
                return Err(input_err!("{kind}{n} is not supported (rank must be at least {min})"));
            }
            let width = if kind == RootType::A { n + 1 } else { n };
            let (pos, simp) = classical_block(kind, n);
            let shift = |r: Root| {
                let mut v = vec![0i64; dim];
                v.extend(r);
                v
            };
            positive.extend(pos.into_iter().map(shift));
            simple.extend(simp.into_iter().map(shift));
            dim += width;
            rank += n;
            labels.push(format!("{kind}{n}"));
        }
        for r in positive.iter_mut().chain(simple.iter_mut()) {
            r.resize(dim, 0);
        }
        Self::assemble(labels.join("x"), rank, dim, positive, Some(simple))
    }

    /// A torus of the given dimension: no roots.
    pub fn torus(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(input_err!("torus dimension must be positive"));
        }
        Self::assemble(format!("T{dim}"), 0, dim, Vec::new(), Some(Vec::new()))
    }

    /// User-supplied reduced system given by its positive roots. Simple roots
    /// are the positive roots that are not a sum of two positive roots.
    pub fn from_positive_roots(label: &str, dim: usize, positive: Vec<Root>) -> Result<Self> {
        if dim == 0 {
            return Err(input_err!("dimension must be positive"));
        }
        if let Some(r) = positive.iter().find(|r| r.len() != dim) {
            return Err(input_err!("root {:?} does not have {dim} coordinates", r));
        }
        let set: HashSet<&Root> = positive.iter().collect();
        let simple: Vec<Root> = positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    let b: Root = r.iter().zip(a).map(|(x, y)| x - y).collect();
                    set.contains(&b)
                })
            })
            .cloned()
            .collect();
        let rank = simple.len();
        Self::assemble(label.to_string(), rank, dim, positive, Some(simple))
    }

    fn assemble(label: String, rank: usize, dim: usize, mut positive: Vec<Root>, simple: Option<Vec<Root>>) -> Result<Self> {
        if positive.iter().any(|r| r.iter().all(|&x| x == 0)) {
            return Err(input_err!("zero vector is not a root"));
        }
        positive.sort();
        positive.dedup();
        let positive_set: HashSet<Root> = positive.iter().cloned().collect();
        if positive.iter().any(|r| positive_set.contains(&neg(r))) {
            return Err(input_err!("positive roots must not contain a root and its negative"));
        }
        let mut roots: Vec<Root> = positive.iter().cloned().chain(positive.iter().map(|r| neg(r))).collect();
        roots.sort();
        check_reduced(&roots)?;
        let root_set: HashSet<Root> = roots.iter().cloned().collect();
        for a in &positive {
            let s = reflection(a)?;
            if let Some(b) = roots.iter().find(|b| !root_set.contains(&s.apply(b))) {
                return Err(input_err!(
                    "root set is not closed under the reflection in {} (image of {})",
                    format_root(a),
                    format_root(b)
                ));
            }
        }
        Ok(RootSystem {
            label,
            rank,
            dim,
            roots,
            positive,
            simple: simple.unwrap_or_default(),
            positive_set,
            root_set,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }
    pub fn is_root(&self, v: &[i64]) -> bool {
        self.root_set.contains(v)
    }
    pub fn is_positive(&self, v: &[i64]) -> bool {
        self.positive_set.contains(v)
    }

    /// Whether `m` permutes the root set.
    pub fn preserves(&self, m: &SignedPerm) -> bool {
        m.dim() == self.dim && self.roots.iter().all(|r| self.root_set.contains(&m.apply(r)))
    }

    pub fn simple_index(&self, v: &[i64]) -> Option<usize> {
        self.simple.iter().position(|s| s.as_slice() == v)
    }
}

fn classical_block(kind: RootType, n: usize) -> (Vec<Root>, Vec<Root>) {
    let mut pos = Vec::new();
    let mut simple = Vec::new();
    match kind {
        RootType::A => {
            let d = n + 1;
            for i in 0..d {
                for j in i + 1..d {
                    pos.push(pair(d, i, 1, j, -1));
                }
            }
            for i in 0..n {
                simple.push(pair(d, i, 1, i + 1, -1));
            }
        }
        RootType::B | RootType::C | RootType::D => {
            for i in 0..n {
                for j in i + 1..n {
                    pos.push(pair(n, i, 1, j, -1));
                    pos.push(pair(n, i, 1, j, 1));
                }
            }
            for i in 0..n.saturating_sub(1) {
                simple.push(pair(n, i, 1, i + 1, -1));
            }
            match kind {
                RootType::B => {
                    pos.extend((0..n).map(|i| unit(n, i, 1)));
                    simple.push(unit(n, n - 1, 1));
                }
                RootType::C => {
                    pos.extend((0..n).map(|i| unit(n, i, 2)));
                    simple.push(unit(n, n - 1, 2));
                }
                _ => simple.push(pair(n, n - 2, 1, n - 1, 1)),
            }
        }
    }
    (pos, simple)
}

/// Rejects sets containing two roots that are positive multiples of each other.
pub fn check_reduced(roots: &[Root]) -> Result<()> {
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let ab = dot(a, b);
            if ab > 0 && ab * ab == dot(a, a) * dot(b, b) {
                return Err(input_err!(
                    "{} and {} are positive multiples of each other; only reduced roots are allowed",
                    format_root(a),
                    format_root(b)
                ));
            }
        }
    }
    Ok(())
}

/// Action of a finite abelian component group by root-preserving integer
/// orthogonal matrices.
#[derive(Debug, Clone)]
pub struct ComponentAction {
    gamma: FiniteAbelianGroup,
    generators: Vec<SignedPerm>,
    images: Vec<SignedPerm>,
}

impl ComponentAction {
    /// `generators[i]` is the image of the `i`-th invariant-factor generator.
    pub fn new(rs: &RootSystem, gamma: FiniteAbelianGroup, generators: Vec<SignedPerm>) -> Result<Self> {
        let factors = gamma.invariant_factors().to_vec();
        if generators.len() != factors.len() {
            return Err(input_err!(
                "{} generator matrices supplied for {} invariant factors",
                generators.len(),
                factors.len()
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != rs.dim() {
                return Err(input_err!("action matrix {i} has size {} (expected {})", g.dim(), rs.dim()));
            }
            if !rs.preserves(g) {
                return Err(input_err!("action matrix {i} does not permute the root set"));
            }
            let mut p = SignedPerm::identity(rs.dim());
            for _ in 0..factors[i] {
                p = p.compose(g);
            }
            if !p.is_identity() {
                return Err(input_err!(
                    "action matrix {i} does not have order dividing {}",
                    factors[i]
                ));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if g.compose(h) != h.compose(g) {
                    return Err(input_err!("action matrices {i} and {j} do not commute"));
                }
            }
        }
        let images = (0..gamma.order())
            .map(|idx| {
                let coords = gamma.coords(idx);
                let mut p = SignedPerm::identity(rs.dim());
                for (g, &c) in generators.iter().zip(&coords) {
                    for _ in 0..c {
                        p = p.compose(g);
                    }
                }
                p
            })
            .collect();
        Ok(ComponentAction {
            gamma,
            generators,
            images,
        })
    }

    pub fn trivial(rs: &RootSystem) -> Self {
        ComponentAction::new(rs, FiniteAbelianGroup::trivial(), Vec::new()).expect("trivial action is valid")
    }

    pub fn gamma(&self) -> &FiniteAbelianGroup {
        &self.gamma
    }
    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }
    pub fn image(&self, component: usize) -> &SignedPerm {
        &self.images[component]
    }
}

/// Element of `W ⋊ Γ`: the matrix `w·A(γ)` together with the label `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedWeylElement {
    pub matrix: SignedPerm,
    pub component: usize,
}

/// The enumerated group `W ⋊ Γ`.
///
/// Indices `0..|W|` are the inner Weyl group in breadth-first order from
/// the identity; index `γ·|W| + k` is `(w_k·A(γ), γ)`.
#[derive(Debug, Clone)]
pub struct ExtendedWeylGroup {
    id: GroupId,
    rs: RootSystem,
    action: ComponentAction,
    weyl: Vec<SignedPerm>,
    weyl_index: HashMap<SignedPerm, usize>,
    image_inverses: Vec<SignedPerm>,
    elements: Vec<ExtendedWeylElement>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

/// The Weyl group of `rs` (trivial component group).
pub fn build_weyl_group(rs: &RootSystem) -> Result<ExtendedWeylGroup> {
    build_extended_weyl(rs, &ComponentAction::trivial(rs))
}

/// Enumerates `W ⋊ Γ`.
pub fn build_extended_weyl(rs: &RootSystem, action: &ComponentAction) -> Result<ExtendedWeylGroup> {
    let gens: Vec<SignedPerm> = rs.simple_roots().iter().map(|a| reflection(a)).collect::<Result<_>>()?;
    let id = SignedPerm::identity(rs.dim());
    let mut weyl = vec![id.clone()];
    let mut weyl_index = HashMap::from([(id, 0usize)]);
    // `weyl[k] = weyl[parent.0] · gens[parent.1]` for k > 0.
    let mut parent = vec![(0usize, 0usize)];
    let gamma_order = action.gamma().order();
    let cap = MAX_ORDER / gamma_order.max(1);
    let mut head = 0;
    while head < weyl.len() {
        let x = weyl[head].clone();
        for (si, g) in gens.iter().enumerate() {
            let y = x.compose(g);
            if !weyl_index.contains_key(&y) {
                if weyl.len() >= cap {
                    return Err(Error::Resource(format!(
                        "W({}) ⋊ Γ exceeds the group order cap {MAX_ORDER}",
                        rs.label()
                    )));
                }
                weyl_index.insert(y.clone(), weyl.len());
                weyl.push(y);
                parent.push((head, si));
            }
        }
        head += 1;
    }
    for w in &weyl {
        if !rs.preserves(w) {
            return Err(Error::Computation(format!("Weyl element {w} does not permute the roots")));
        }
    }
    for (c, img) in (0..gamma_order).map(|c| (c, action.image(c))) {
        if !rs.preserves(img) {
            return Err(input_err!("action of component {c} is not root-preserving"));
        }
        for s in &gens {
            let conj = img.compose(s).compose(&img.inverse());
            if !weyl_index.contains_key(&conj) {
                return Err(input_err!("action of component {c} does not normalize W"));
            }
        }
    }
    let wn = weyl.len();
    let mut elements = Vec::with_capacity(wn * gamma_order);
    for c in 0..gamma_order {
        for w in &weyl {
            elements.push(ExtendedWeylElement {
                matrix: w.compose(action.image(c)),
                component: c,
            });
        }
    }
    let image_inverses = (0..gamma_order).map(|c| action.image(c).inverse()).collect();
    let mut group = ExtendedWeylGroup {
        id: fresh_id(),
        rs: rs.clone(),
        action: action.clone(),
        weyl,
        weyl_index,
        image_inverses,
        elements,
        inverse: Vec::new(),
        table: None,
    };
    let n = group.elements.len();
    group.inverse = (0..n)
        .map(|i| {
            let el = &group.elements[i];
            let c = group.action.gamma().inv(el.component);
            group.locate(&el.matrix.inverse(), c).expect("inverse lies in the group") as u32
        })
        .collect();
    if n <= MAX_TABLE_ORDER {
        // Right multiplication by the simple reflections and by the
        // component representatives; every product is a word in these.
        let by_gen: Vec<Vec<u32>> = (0..gens.len())
            .map(|si| (0..n).map(|a| group.mul_slow(a, group.weyl_index[&gens[si]]) as u32).collect())
            .collect();
        let by_comp: Vec<Vec<u32>> = (0..gamma_order)
            .map(|c| (0..n).map(|a| group.mul_slow(a, c * wn) as u32).collect())
            .collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for k in 1..wn {
                let (p, si) = parent[k];
                row[k] = by_gen[si][row[p] as usize];
            }
            for c in 1..gamma_order {
                for k in 0..wn {
                    row[c * wn + k] = by_comp[c][row[k] as usize];
                }
            }
        }
        group.table = Some(table);
    }
    Ok(group)
}

impl ExtendedWeylGroup {
    fn locate(&self, matrix: &SignedPerm, component: usize) -> Option<usize> {
        let inner = matrix.compose(&self.image_inverses[component]);
        self.weyl_index
            .get(&inner)
            .map(|&k| component * self.weyl.len() + k)
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.elements[a], &self.elements[b]);
        let c = self.action.gamma().mul(x.component, y.component);
        self.locate(&x.matrix.compose(&y.matrix), c)
            .expect("W ⋊ Γ is closed under multiplication")
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }
    pub fn action(&self) -> &ComponentAction {
        &self.action
    }
    pub fn gamma(&self) -> &FiniteAbelianGroup {
        self.action.gamma()
    }
    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }
    pub fn element(&self, i: usize) -> &ExtendedWeylElement {
        &self.elements[i]
    }
    pub fn elements(&self) -> &[ExtendedWeylElement] {
        &self.elements
    }
    pub fn component(&self, i: usize) -> usize {
        self.elements[i].component
    }

    /// Index of the element with the given matrix and component label.
    pub fn find(&self, matrix: &SignedPerm, component: usize) -> Option<usize> {
        if component >= self.gamma().order() || matrix.dim() != self.rs.dim() {
            return None;
        }
        self.locate(matrix, component)
    }

    /// The inner Weyl group `W`, i.e. the kernel of the component map.
    pub fn inner(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.id, (0..self.weyl.len()).collect())
    }

    /// Index of the reflection `s_α` (an inner element).
    pub fn reflection_index(&self, alpha: &[i64]) -> Result<usize> {
        let s = reflection(alpha)?;
        self.find(&s, 0)
            .ok_or_else(|| input_err!("reflection in {} is not in W", format_root(alpha)))
    }

    /// Matrix of the inner part `w = M·A(γ)⁻¹`.
    pub fn inner_part(&self, i: usize) -> SignedPerm {
        let el = &self.elements[i];
        el.matrix.compose(&self.image_inverses[el.component])
    }

    /// Coxeter length of the inner part: positive roots sent to negative ones.
    pub fn inner_length(&self, i: usize) -> usize {
        let w = self.inner_part(i);
        self.rs
            .positive_roots()
            .iter()
            .filter(|a| !self.rs.is_positive(&w.apply(a)))
            .count()
    }

    pub fn act(&self, i: usize, v: &[i64]) -> Root {
        self.elements[i].matrix.apply(v)
    }

    /// Whether element `i` maps `set` onto itself.
    pub fn stabilizes(&self, i: usize, set: &[Root]) -> bool {
        let s: HashSet<&[i64]> = set.iter().map(|r| r.as_slice()).collect();
        set.iter().all(|r| s.contains(self.act(i, r).as_slice()))
    }

    /// Explicit table, when the order is within [`MAX_TABLE_ORDER`].
    pub fn to_table(&self) -> Result<GroupTable> {
        let (t, _) = GroupTable::from_subgroup(self, &Subgroup::whole(self))?;
        Ok(t)
    }
}

/// `w·root`, checking that the input is a root.
pub fn act_on_root(group: &ExtendedWeylGroup, element: usize, root: &[i64]) -> Result<Root> {
    if element >= group.order() {
        return Err(input_err!("element index {element} out of range"));
    }
    if !group.root_system().is_root(root) {
        return Err(input_err!("{} is not a root of {}", format_root(root), group.root_system().label()));
    }
    Ok(group.act(element, root))
}

impl FiniteGroup for ExtendedWeylGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn group_id(&self) -> GroupId {
        self.id
    }
    fn element_label(&self, a: usize) -> String {
        let el = &self.elements[a];
        if self.gamma().order() == 1 {
            el.matrix.to_string()
        } else {
            format!("{}·γ{:?}", el.matrix, self.gamma().coords(el.component))
        }
    }
}

/// Sign change on the last coordinate (the outer automorphism of `D_n`
/// coming from `O(2n)`).
pub fn last_sign_change(dim: usize) -> SignedPerm {
    let mut rows: Vec<Vec<i64>> = (0..dim).map(|i| unit(dim, i, 1)).collect();
    rows[dim - 1][dim - 1] = -1;
    SignedPerm::from_matrix(&rows).expect("diagonal sign matrix")
}

/// Permutation matrix exchanging two coordinate blocks of equal width
/// starting at `a` and `b`.
pub fn block_swap(dim: usize, a: usize, b: usize, width: usize) -> Result<SignedPerm> {
    if a + width > dim || b + width > dim || (a < b + width && b < a + width) {
        return Err(input_err!("blocks [{a}, {}) and [{b}, {}) are invalid", a + width, b + width));
    }
    let mut images: Vec<i16> = (1..=dim as i16).collect();
    for k in 0..width {
        images[a + k] = (b + k) as i16 + 1;
        images[b + k] = (a + k) as i16 + 1;
    }
    Ok(SignedPerm(images.into()))
}
