//! Independent oracles: they share no code path with the library routines they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn vp(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

fn p_integral(q: &BigRational, p: u64) -> bool {
    vp(q.denom(), p) == 0
}

/// Coefficients of `a * b` in `Z[C_N]`.
pub fn cyclic_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    let mut out = vec![0i64; n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % n] += x * y;
        }
    }
    out
}

/// Row Hermite normal form of an integer matrix; zero rows are dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // gcd-combine every row below r into row r at column c
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let e = a[r][c].extended_gcd(&a[i][c]);
            let (x, y) = (e.x, e.y);
            let (u, v) = (&a[r][c] / &e.gcd, &a[i][c] / &e.gcd);
            for k in 0..cols {
                let top = &x * &a[r][k] + &y * &a[i][k];
                let bottom = &u * &a[i][k] - &v * &a[r][k];
                a[r][k] = top;
                a[i][k] = bottom;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for k in 0..cols {
                a[r][k] = -&a[r][k];
            }
        }
        for i in 0..r {
            let f = a[i][c].div_floor(&a[r][c]);
            for k in 0..cols {
                let d = &f * &a[r][k];
                a[i][k] -= d;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Solves `x = sum_i c_i rows_i` for rows in echelon form; `None` if `x` is not in the Q-span.
fn echelon_coordinates(rows: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut rest: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut coords = Vec::with_capacity(rows.len());
    for row in rows {
        let pivot = row.iter().position(|v| !v.is_zero())?;
        let c = &rest[pivot] / BigRational::from_integer(row[pivot].clone());
        for (k, v) in row.iter().enumerate() {
            rest[k] -= &c * BigRational::from_integer(v.clone());
        }
        coords.push(c);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// `x in I^h Z_p[G]` for `G` cyclic of order `N`, via the HNF basis of the Z-lattice
/// spanned by `(sigma - 1)^h sigma^k`: membership over `Z_p` means the unique
/// coordinates in that basis are p-integral.
pub fn hnf_membership(x: &[i64], h: u32, p: u64) -> bool {
    let n = x.len();
    let mut gen = vec![0i64; n];
    gen[0] = 1;
    for _ in 0..h {
        let mut s = vec![0i64; n];
        s[0] = -1;
        s[1 % n] += 1;
        gen = cyclic_mul(&gen, &s);
    }
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|k| (0..n).map(|i| BigInt::from(gen[(i + n - k) % n])).collect())
        .collect();
    let basis = hnf(&rows);
    let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    match echelon_coordinates(&basis, &x) {
        Some(c) => c.iter().all(|v| p_integral(v, p)),
        None => false,
    }
}

/// Solves `M y = b` over Q by Gaussian elimination; `None` when `M` is singular.
pub fn solve_rational(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        b.swap(c, piv);
        let inv = m[c][c].recip();
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let d = &f * &m[c][k];
                m[r][k] -= d;
            }
            let d = &f * &b[c];
            b[r] -= d;
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// `x` is a unit of `Z_p[G]` iff it is p-integral and `x y = 1` has a p-integral solution.
pub fn brute_force_unit(x: &[BigRational], p: u64) -> bool {
    if !x.iter().all(|c| p_integral(c, p)) {
        return false;
    }
    let n = x.len();
    // column k of the multiplication matrix is x * sigma^k
    let m: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|k| x[(i + n - k) % n].clone()).collect()).collect();
    let mut e = vec![BigRational::zero(); n];
    e[0] = BigRational::one();
    match solve_rational(m, e) {
        Some(y) => y.iter().all(|c| p_integral(c, p)),
        None => false,
    }
}
