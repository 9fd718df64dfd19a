//! Exact linear algebra over the rationals for small integer matrices.

use num_integer::Integer;
use num_rational::Rational64;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != Rational64::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && m[i][c] != Rational64::from_integer(0) {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_rational(rows);
    rref(&mut m).len()
}

/// Integer basis of `{x ∈ Qⁿ : row·x = 0 for every row}`, each vector
/// scaled to coprime integer entries.
pub fn kernel_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let mut m = to_rational(rows);
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational64::from_integer(0); n];
            v[f] = Rational64::from_integer(1);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f];
            }
            clear_denominators(&v)
        })
        .collect()
}

fn clear_denominators(v: &[Rational64]) -> Vec<i64> {
    let l = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| x.numer() * (l / x.denom())).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        ints.iter().map(|x| x / g).collect()
    } else {
        ints
    }
}

/// Solves `Σ cᵢ basis[i] = target` exactly, if the target lies in the span.
pub fn coordinates(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational64>> {
    let n = target.len();
    let k = basis.len();
    // Augmented system: columns are basis vectors, last column is the target.
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|row| {
            basis
                .iter()
                .map(|b| Rational64::from_integer(b[row]))
                .chain(std::iter::once(Rational64::from_integer(target[row])))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rational64::from_integer(0); k];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = m[row][k];
    }
    Some(c)
}
