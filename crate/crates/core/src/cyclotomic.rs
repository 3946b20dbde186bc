//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! Elements are stored on the power basis `1, zeta, ..., zeta^(phi(m)-1)`
//! reduced modulo the m-th cyclotomic polynomial. Every constructor and
//! operation returns the canonical reduced representative, so structural
//! equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, euler_phi, vp_rational};
use crate::error::{Error, Result};
use crate::numeric::{BigComplex, Real, MIN_PRECISION};

/// Precomputed data for one modulus: the cyclotomic polynomial and the
/// reduction of every power `x^e`, `0 <= e < m`.
#[derive(Debug)]
struct CycData {
    degree: usize,
    phi_poly: Vec<i64>,
    powers: Vec<Vec<(usize, i64)>>,
}

fn cyc_data(m: u64) -> Arc<CycData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cyclotomic cache poisoned").get(&m) {
        return d.clone();
    }
    let data = Arc::new(build_cyc_data(m));
    cache.lock().expect("cyclotomic cache poisoned").insert(m, data.clone());
    data
}

fn poly_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic integer polynomial; panics if it does not divide.
fn poly_div_exact_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

/// Coefficients (constant term first) of the m-th cyclotomic polynomial,
/// computed as `prod_{d | m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in arith::divisors(m) {
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match arith::mobius(m / d) {
            1 => num = poly_mul_int(&num, &f),
            -1 => dens.push(f),
            _ => {}
        }
    }
    for d in dens {
        num = poly_div_exact_int(&num, &d);
    }
    num
}

fn build_cyc_data(m: u64) -> CycData {
    let phi_poly = cyclotomic_polynomial(m);
    let degree = phi_poly.len() - 1;
    debug_assert_eq!(degree as u64, euler_phi(m));
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect());
        // multiply by x and reduce the overflow coefficient
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        next[1..degree].copy_from_slice(&cur[..degree - 1]);
        if top != 0 {
            for i in 0..degree {
                next[i] -= top * phi_poly[i];
            }
        }
        if degree == 1 {
            next[0] = -top * phi_poly[0];
        }
        cur = next;
    }
    CycData { degree, phi_poly, powers }
}

/// Reduces the real polynomial `sum_i coeffs[i] x^i` modulo the m-th
/// cyclotomic polynomial, returning power-basis coordinates.
pub fn reduce_real_poly(m: u64, coeffs: &[Real], prec: usize) -> Vec<Real> {
    let data = cyc_data(m);
    let mut out = vec![Real::zero(prec); data.degree];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &(i, v) in &data.powers[k % m as usize] {
            out[i] = &out[i] + &(c * &Real::from_i64(v, prec));
        }
    }
    out
}

/// An exact element of `Q(zeta_m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    modulus: u64,
    coeffs: Vec<BigRational>,
}

/// Normalised valuation: finite or `+infinity` (for zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl CycNum {
    /// Builds `sum_k coeffs[k] * zeta_m^k` for an arbitrary-length coefficient list.
    pub fn from_poly(modulus: u64, coeffs: &[BigRational]) -> Self {
        assert!(modulus > 0, "cyclotomic modulus must be positive");
        let data = cyc_data(modulus);
        let mut out = vec![BigRational::zero(); data.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, v) in &data.powers[k % modulus as usize] {
                out[i] += c * BigRational::from_integer(BigInt::from(v));
            }
        }
        CycNum { modulus, coeffs: out }
    }

    /// Builds an element from `(exponent, coefficient)` pairs; exponents are taken mod m.
    pub fn from_terms(modulus: u64, terms: &[(i64, BigRational)]) -> Self {
        let mut poly = vec![BigRational::zero(); modulus as usize];
        for (e, c) in terms {
            poly[e.rem_euclid(modulus as i64) as usize] += c;
        }
        CycNum::from_poly(modulus, &poly)
    }

    /// Integer-coefficient shorthand for [`CycNum::from_terms`].
    pub fn from_int_terms(modulus: u64, terms: &[(i64, i64)]) -> Self {
        let terms: Vec<_> = terms.iter().map(|&(e, c)| (e, arith::int(c))).collect();
        CycNum::from_terms(modulus, &terms)
    }

    pub fn zero(modulus: u64) -> Self {
        CycNum::from_poly(modulus, &[])
    }

    pub fn one(modulus: u64) -> Self {
        CycNum::from_rational(modulus, BigRational::one())
    }

    pub fn from_rational(modulus: u64, q: BigRational) -> Self {
        CycNum::from_poly(modulus, &[q])
    }

    /// `zeta_m^k`.
    pub fn zeta_pow(modulus: u64, k: i64) -> Self {
        CycNum::from_terms(modulus, &[(k, BigRational::one())])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &CycNum) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNum { modulus: self.modulus, coeffs })
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same(other)?;
        let m = self.modulus as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[(i + j) % m] += a * b;
                }
            }
        }
        Ok(CycNum::from_poly(self.modulus, &poly))
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        CycNum { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = CycNum::one(self.modulus);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// cyclotomic polynomial over Q.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let data = cyc_data(self.modulus);
        let modp: Vec<BigRational> =
            data.phi_poly.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let s = poly_inverse_mod(&self.coeffs, &modp);
        Ok(CycNum::from_poly(self.modulus, &s))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_mul(&other.inv()?)
    }

    /// Image under the automorphism `zeta -> zeta^s`.
    pub fn galois_apply(&self, s: i64) -> Result<CycNum> {
        let m = self.modulus;
        if arith::gcd(s.rem_euclid(m as i64), m as i64) != 1 {
            return Err(Error::NotCoprime { s, m });
        }
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| ((k as i64) * s, c.clone()))
            .collect();
        Ok(CycNum::from_terms(m, &terms))
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> CycNum {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// The same element viewed inside `Q(zeta_big)`; `big` must be a multiple of the modulus.
    pub fn lift(&self, big: u64) -> Result<CycNum> {
        if big % self.modulus != 0 {
            return Err(Error::ModulusMismatch(self.modulus, big));
        }
        let step = (big / self.modulus) as i64;
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 * step, c.clone()))
            .collect();
        Ok(CycNum::from_terms(big, &terms))
    }

    /// Expresses the element inside the subfield `Q(zeta_small)`, if it lies there.
    pub fn descend(&self, small: u64) -> Option<CycNum> {
        if self.modulus % small != 0 {
            return None;
        }
        if small == self.modulus {
            return Some(self.clone());
        }
        let d_small = euler_phi(small) as usize;
        // columns: images of the small power basis inside the big field
        let cols: Vec<CycNum> = (0..d_small)
            .map(|k| CycNum::zeta_pow(small, k as i64).lift(self.modulus).expect("divisible"))
            .collect();
        let rows = self.coeffs.len();
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_exact(&mut aug, d_small)?;
        Some(CycNum { modulus: small, coeffs: sol })
    }

    /// Smallest `m'` dividing the modulus such that the element lies in `Q(zeta_m')`,
    /// searched over divisors (moduli with equal fields, m odd vs 2m, are not merged).
    pub fn minimal_modulus(&self) -> u64 {
        arith::divisors(self.modulus)
            .into_iter()
            .find(|&d| self.descend(d).is_some())
            .unwrap_or(self.modulus)
    }

    /// Field norm `N_{Q(zeta_m)/Q}` as the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let m = self.modulus;
        let mut acc = CycNum::one(m);
        for s in 1..m.max(2) {
            if arith::gcd(s as i64, m as i64) == 1 {
                acc = &acc * &self.galois_apply(s as i64).expect("unit");
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Field trace `Tr_{Q(zeta_m)/Q}`.
    pub fn trace(&self) -> BigRational {
        let m = self.modulus;
        let mut acc = CycNum::zero(m);
        for s in 1..m.max(2) {
            if arith::gcd(s as i64, m as i64) == 1 {
                acc = &acc + &self.galois_apply(s as i64).expect("unit");
            }
        }
        acc.as_rational().expect("trace is rational")
    }

    /// Normalised valuation at the unique prime above `p`, for `m` a power of `p`
    /// (or `m <= 2`, where this is the p-adic valuation of a rational).
    pub fn valuation_above_p(&self, p: u64) -> Result<Valuation> {
        if self.modulus > 2 && arith::log_exact(self.modulus, p).is_none() {
            return Err(Error::NotPrimePower { m: self.modulus, p });
        }
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        if self.modulus <= 2 {
            return Ok(Valuation::Finite(vp_rational(&self.coeffs[0], p).expect("nonzero")));
        }
        // On the basis pi^i (i < e) of Z_p[zeta] with pi = 1 - zeta, the terms have
        // valuations e v_p(c_i) + i, pairwise distinct mod e, so the minimum wins.
        let e = self.coeffs.len() as i64;
        let denom = self.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
        let shift = e * arith::vp_int(&denom, p).unwrap_or(0);
        // modulo p^K any coefficient with v_p < K is seen exactly, and a single one
        // already fixes the minimum, so the exact expansion is only a fallback
        let mut modulus = 1u128;
        while modulus * (p as u128) < (1u128 << 62) {
            modulus *= p as u128;
        }
        let reduced: Vec<u128> = ints
            .iter()
            .map(|a| {
                let r = a % BigInt::from(modulus);
                let r = if r.is_negative() { r + BigInt::from(modulus) } else { r };
                u128::try_from(r).expect("reduced residue")
            })
            .collect();
        let pi_mod = pi_expansion(&reduced, |a, b| (a + b) % modulus, |a, b| (a + modulus - b) % modulus, |a, b| a * b % modulus, 0, 1);
        let v = if pi_mod.iter().any(|&c| c != 0) {
            pi_mod
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| {
                    let mut c = c;
                    let mut v = 0i64;
                    while c % p as u128 == 0 {
                        c /= p as u128;
                        v += 1;
                    }
                    e * v + i as i64
                })
                .min()
                .expect("nonzero")
        } else {
            let exact = pi_expansion(&ints, |a, b| a + b, |a, b| a - b, |a, b| a * b, BigInt::zero(), BigInt::one());
            exact
                .iter()
                .enumerate()
                .filter_map(|(i, c)| arith::vp_int(c, p).map(|v| e * v + i as i64))
                .min()
                .expect("nonzero element")
        } - shift;
        Ok(Valuation::Finite(v))
    }

    /// Value at `zeta_m = exp(2 pi i root_index / m)`.
    pub fn embed(&self, root_index: i64, precision: usize) -> Result<BigComplex> {
        let m = self.modulus;
        if arith::gcd(root_index.rem_euclid(m as i64), m as i64) != 1 {
            return Err(Error::NotCoprime { s: root_index, m });
        }
        let prec = precision.max(MIN_PRECISION);
        let work = prec + 32 + (64 - (self.coeffs.len() as u64).leading_zeros() as usize);
        let mut acc = BigComplex::zero(work);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = BigComplex::root_of_unity(root_index * k as i64, m, work);
            acc = &acc + &z.scale(&Real::from_rational(c, work));
        }
        Ok(acc.with_precision(prec))
    }

    /// Largest denominator among the coefficients.
    pub fn max_denominator(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.denom().clone()).max().unwrap_or_else(BigInt::one)
    }

    /// True when every power-basis coefficient is p-integral.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| arith::is_p_integral(c, p))
    }
}

/// Solves `A x = b` exactly for an overdetermined consistent system given as an
/// augmented matrix with `n` unknowns; `None` when inconsistent or underdetermined.
fn solve_exact(aug: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    let rows = aug.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            return None;
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].recip();
        for v in aug[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !aug[r2][col].is_zero() {
                let f = aug[r2][col].clone();
                for k in 0..=n {
                    let sub = &f * &aug[pivot_row][k];
                    aug[r2][k] -= sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let sub = &c * bj;
                rem[i + j] -= sub;
            }
        }
        q[i] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (q, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// `s` with `s * a = 1 mod modp`, assuming `gcd(a, modp) = 1`.
fn poly_inverse_mod(a: &[BigRational], modp: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = modp.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the (constant) gcd
    assert_eq!(r0.len(), 1, "element shares a factor with the cyclotomic polynomial");
    let c = r0[0].recip();
    s0.iter().map(|x| x * &c).collect()
}

/// Coefficients of `f(1 - pi)` in powers of `pi`, for `f` given by `coeffs` in powers of `zeta`.
fn pi_expansion<T: Clone>(
    coeffs: &[T],
    add: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    zero: T,
    one: T,
) -> Vec<T> {
    let mut out = vec![zero.clone(); coeffs.len()];
    // binom holds C(k, i) for the current k
    let mut binom = vec![one.clone()];
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            let mut next = vec![one.clone(); k + 1];
            for i in 1..k {
                next[i] = add(&binom[i - 1], &binom[i]);
            }
            binom = next;
        }
        for (i, c) in binom.iter().enumerate() {
            let term = mul(a, c);
            out[i] = if i % 2 == 0 { add(&out[i], &term) } else { sub(&out[i], &term) };
        }
    }
    out
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({}; {})", self.modulus, self)
    }
}

impl fmt::Display for CycNum {
    /// Renders e.g. `zeta7^3 + zeta7^2 + zeta7` or `-9/116`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => format!("zeta{}", self.modulus),
                _ => format!("zeta{}^{}", self.modulus, k),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    /// Panics on modulus mismatch; use [`CycNum::checked_add`] for a fallible version.
    fn add(self, rhs: &CycNum) -> CycNum {
        self.checked_add(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.checked_sub(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.checked_mul(rhs).expect("cyclotomic modulus mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn z(m: u64, k: i64) -> CycNum {
        CycNum::zeta_pow(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta3_squared() {
        let a = &z(3, 1) * &z(3, 1);
        assert_eq!(a, CycNum::from_int_terms(3, &[(0, -1), (1, -1)]));
    }

    #[test]
    fn multiplicative_identity() {
        let a = CycNum::from_int_terms(7, &[(0, 3), (2, -5), (5, 1)]);
        assert_eq!(&a * &CycNum::one(7), a);
    }

    #[test]
    fn phi_relation_vanishes() {
        let one_minus = &CycNum::one(7) - &z(7, 1);
        let geom = CycNum::from_int_terms(7, &(0..7).map(|i| (i, 1)).collect::<Vec<_>>());
        assert!(geom.is_zero());
        assert!((&one_minus * &geom).is_zero());
    }

    #[test]
    fn mismatched_moduli() {
        assert!(matches!(z(3, 1).checked_mul(&z(9, 1)), Err(Error::ModulusMismatch(3, 9))));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNum::from_rational(5, int(2)).inv().unwrap(), CycNum::from_rational(5, rat(1, 2)));
        for m in [3u64, 7, 9, 12, 29] {
            assert_eq!(z(m, 1).inv().unwrap(), z(m, m as i64 - 1));
        }
        // (1 - zeta3)^-1 = (2 + zeta3)/3
        let a = &CycNum::one(3) - &z(3, 1);
        let expected = CycNum::from_terms(3, &[(0, rat(2, 3)), (1, rat(1, 3))]);
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(&a * &expected, CycNum::one(3));
        assert!(matches!(CycNum::zero(7).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn galois_action() {
        assert_eq!(z(7, 1).galois_apply(2).unwrap(), z(7, 2));
        let q = CycNum::from_rational(9, rat(-4, 5));
        assert_eq!(q.galois_apply(4).unwrap(), q);
        let a = CycNum::from_int_terms(9, &[(0, 1), (1, 2), (4, -3)]);
        let lhs = a.galois_apply(2).unwrap().galois_apply(5).unwrap();
        assert_eq!(lhs, a.galois_apply(10 % 9).unwrap());
        assert!(matches!(a.galois_apply(3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn valuations_above_p() {
        let one = CycNum::one(7);
        assert_eq!((&one - &z(7, 1)).valuation_above_p(7).unwrap(), Valuation::Finite(1));
        assert_eq!(CycNum::from_rational(7, int(7)).valuation_above_p(7).unwrap(), Valuation::Finite(6));
        let x = &z(9, 3) - &CycNum::one(9);
        assert_eq!(x.valuation_above_p(3).unwrap(), Valuation::Finite(3));
        assert_eq!(CycNum::zero(9).valuation_above_p(3).unwrap(), Valuation::Infinite);
        assert!(matches!(z(12, 1).valuation_above_p(3), Err(Error::NotPrimePower { .. })));
        assert_eq!(CycNum::from_rational(1, rat(-9, 116)).valuation_above_p(7).unwrap(), Valuation::Finite(0));
    }

    #[test]
    fn valuation_agrees_with_norm() {
        for (m, p) in [(9u64, 3u64), (25, 5), (27, 3)] {
            for seed in 0..40i64 {
                let terms: Vec<(i64, i64)> = (0..6).map(|k| ((seed * 7 + k * k * 3) % m as i64, (seed * (k + 3)) % 7 - 3)).collect();
                let x = &CycNum::from_int_terms(m, &terms) * &(&CycNum::one(m) - &z(m, 1)).pow((seed % 4) as u32);
                let expected = if x.is_zero() {
                    Valuation::Infinite
                } else {
                    Valuation::Finite(vp_rational(&x.norm(), p).unwrap())
                };
                assert_eq!(x.valuation_above_p(p).unwrap(), expected, "{x}");
            }
        }
    }

    #[test]
    fn embeddings() {
        let one = CycNum::one(7).embed(1, 128).unwrap();
        assert!((one.re.to_f64() - 1.0).abs() < 1e-30 && one.im.is_zero());
        let a = CycNum::from_int_terms(7, &[(3, 1), (2, 1), (1, 1)]);
        let e = a.embed(1, 128).unwrap();
        let re = Real::parse_decimal("-0.5", 128).unwrap();
        let im = Real::parse_decimal("2.1906431337674115362", 128).unwrap();
        assert!((&e.re - &re).abs().to_f64() < 1e-35);
        assert!((&e.im - &im).abs().to_f64() < 1e-19);
        let r = CycNum::from_rational(1, rat(-9, 116)).embed(1, 128).unwrap();
        assert!((r.re.to_f64() + 0.077586206896551724152).abs() < 1e-17);
        assert!(a.embed(7, 64).is_err());
    }

    #[test]
    fn lift_and_descend() {
        let a = CycNum::from_int_terms(3, &[(0, 3), (1, 3)]);
        let big = a.lift(9).unwrap();
        assert_eq!(big, CycNum::from_int_terms(9, &[(0, 3), (3, 3)]));
        assert_eq!(big.descend(3).unwrap(), a);
        assert!(z(9, 1).descend(3).is_none());
        assert_eq!(CycNum::from_rational(9, int(4)).minimal_modulus(), 1);
        // lift into a composite modulus and back
        let b = z(7, 3).lift(203).unwrap();
        assert_eq!(b.descend(7).unwrap(), z(7, 3));
    }

    #[test]
    fn norms_and_traces() {
        assert_eq!((&CycNum::one(7) - &z(7, 1)).norm(), int(7));
        assert_eq!(z(9, 1).trace(), int(0));
        assert_eq!(z(9, 3).trace(), int(-3));
        assert_eq!(CycNum::from_rational(5, int(2)).norm(), int(16));
    }

    #[test]
    fn display() {
        let a = CycNum::from_int_terms(7, &[(3, 1), (2, 1), (1, 1)]);
        assert_eq!(a.to_string(), "zeta7^3 + zeta7^2 + zeta7");
        let b = CycNum::from_terms(3, &[(1, int(-3))]);
        assert_eq!(b.to_string(), "-3*zeta3");
        assert_eq!(CycNum::from_rational(7, rat(-9, 116)).to_string(), "-9/116");
        assert_eq!(CycNum::zero(7).to_string(), "0");
    }
}
