//! Arithmetic and dense linear algebra over a prime field `F_p`, `p < 2³¹`.

#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
    pub fn from_int(self, a: u64) -> u64 {
        a % self.p
    }

    /// An element of exact multiplicative order `e`; requires `e | p - 1`.
    pub fn root_of_unity(self, e: u64) -> u64 {
        debug_assert_eq!((self.p - 1) % e, 0);
        let g = self.primitive_root();
        self.pow(g, (self.p - 1) / e)
    }

    fn primitive_root(self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("every prime field has a primitive root")
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p > lower` with `p ≡ 1 (mod e)`.
pub(crate) fn prime_above(lower: u64, e: u64) -> u64 {
    let mut p = (lower / e) * e + 1;
    while p <= lower || !is_prime(p) {
        p += e;
    }
    p
}

pub(crate) type Mat = Vec<Vec<u64>>;

/// Row-reduces `m` in place to reduced echelon form; returns pivot columns.
pub(crate) fn rref(f: Field, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis (as rows) of `{x : m·x = 0}` for a square or rectangular `m`.
pub(crate) fn nullspace(f: Field, m: &Mat, n: usize) -> Mat {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, a[row][free]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - a)`, coefficients from the constant
/// term upwards, via reduction to upper Hessenberg form.
pub(crate) fn char_poly(f: Field, a: &Mat) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for i in j + 2..n {
            let u = f.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[i][c] = f.sub(h[i][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    // polys[k] is the characteristic polynomial of the leading k×k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut next = vec![0; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k - 1][k - 1], c));
        }
        let mut prod = 1;
        for i in (1..k).rev() {
            prod = f.mul(prod, h[i][i - 1]);
            let coef = f.mul(prod, h[i - 1][k - 1]);
            if coef != 0 {
                for (d, &c) in polys[i - 1].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

pub(crate) fn eval(f: Field, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// All roots in `F_p` of `poly`, each listed once.
pub(crate) fn roots(f: Field, poly: &[u64]) -> Vec<u64> {
    (0..f.p).filter(|&x| eval(f, poly, x) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Field = Field { p: 101 };

    #[test]
    fn primes_and_roots_of_unity() {
        assert_eq!(prime_above(10, 4), 13);
        assert_eq!(prime_above(16, 8), 17);
        let z = F.root_of_unity(4);
        assert_eq!(F.pow(z, 4), 1);
        assert_ne!(F.pow(z, 2), 1);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        // [[2,1],[1,2]] has x² - 4x + 3.
        let a = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(char_poly(F, &a), vec![3, F.sub(0, 4), 1]);
        let mut r = roots(F, &char_poly(F, &a));
        r.sort();
        assert_eq!(r, vec![1, 3]);
    }

    #[test]
    fn char_poly_of_companion_needs_pivoting() {
        // Companion matrix of (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6.
        let a = vec![vec![0, 0, 6], vec![1, 0, F.sub(0, 11)], vec![0, 1, 6]];
        let poly = char_poly(F, &a);
        assert_eq!(poly, vec![F.sub(0, 6), 11, F.sub(0, 6), 1]);
        let b = vec![vec![5, 0, 0], vec![0, 0, 1], vec![0, 1, 0]];
        assert_eq!(roots(F, &char_poly(F, &b)), vec![1, 5, 100]);
    }

    #[test]
    fn nullspace_dimension() {
        let m = vec![vec![1, 1, 0], vec![0, 0, 1]];
        let k = nullspace(F, &m, 3);
        assert_eq!(k, vec![vec![100, 1, 0]]);
    }
}
