//! The rational group ring of a cyclic p-group, its characters and the
//! integral tests that live in `Z_p[G]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, is_p_integral, vp_rational};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::numeric::{BigComplex, Real};

/// Cyclic group `G = <sigma>` of order `p^n`, `p` an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    p: u64,
    n: u32,
    order: u64,
}

impl CyclicGroup {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p == 2 || !arith::is_prime(p) {
            return Err(Error::InvalidGroup(format!("p = {p} must be an odd prime")));
        }
        let order = p
            .checked_pow(n)
            .filter(|&o| o <= 1 << 16)
            .ok_or_else(|| Error::InvalidGroup(format!("order {p}^{n} is too large")))?;
        Ok(CyclicGroup { p, n, order })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `|H_t| = p^(n-t)`.
    pub fn subgroup_order(&self, t: u32) -> u64 {
        self.p.pow(self.n - t)
    }

    /// `|G/H_t| = p^t`.
    pub fn quotient_order(&self, t: u32) -> u64 {
        self.p.pow(t)
    }

    /// Character `psi_j` with `psi_j(sigma) = zeta_{p^n}^j`.
    pub fn character(&self, j: u64) -> Character {
        Character { group: *self, j: j % self.order }
    }

    /// All characters, in increasing order of `j`.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(move |j| self.character(j))
    }

    fn check(&self, other: &CyclicGroup) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.order, other.order))
        }
    }
}

/// A character `psi_j` of a cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    group: CyclicGroup,
    j: u64,
}

impl PartialOrd for CyclicGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p, self.n).cmp(&(other.p, other.n))
    }
}

impl Character {
    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn index(&self) -> u64 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// The level `t` with `ker(psi) = H_t`.
    pub fn level(&self) -> u32 {
        if self.j == 0 {
            0
        } else {
            self.group.n - arith::split_power(self.j, self.group.p).0
        }
    }

    /// Order of the character, `p^level`.
    pub fn order(&self) -> u64 {
        self.group.p.pow(self.level())
    }

    /// True when the character is trivial on `H_t`.
    pub fn trivial_on(&self, t: u32) -> bool {
        t >= self.level()
    }

    pub fn contragredient(&self) -> Character {
        self.group.character(self.group.order - self.j)
    }

    /// The Galois conjugate `psi^s`, i.e. `psi_{j s}`.
    pub fn galois_conjugate(&self, s: u64) -> Character {
        self.group.character((self.j as u128 * s as u128 % self.group.order as u128) as u64)
    }

    /// Exponent `j'` with `psi(sigma) = zeta_{p^level}^{j'}`.
    pub fn reduced_index(&self) -> u64 {
        self.j / self.group.subgroup_order(self.level())
    }

    /// Exact value `psi(sigma^k)` in `Q(zeta_{order})`.
    pub fn value(&self, k: i64) -> CycNum {
        let m = self.order();
        CycNum::zeta_pow(m, (self.reduced_index() as i128 * k as i128).rem_euclid(m as i128) as i64)
    }

    /// Numerical value of `psi(sigma^k)`.
    pub fn value_numeric(&self, k: i64, prec: usize) -> BigComplex {
        let m = self.group.order as i128;
        let e = (self.j as i128 * k as i128).rem_euclid(m) as i64;
        BigComplex::root_of_unity(e, self.group.order, prec)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi_{}", self.j)
    }
}

/// An element of `Q[G]`; coefficient `i` multiplies `sigma^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElt {
    group: CyclicGroup,
    coeffs: Vec<BigRational>,
}

impl GroupRingElt {
    pub fn new(group: CyclicGroup, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() as u64 != group.order {
            return Err(Error::GroupMismatch(group.order, coeffs.len() as u64));
        }
        Ok(GroupRingElt { group, coeffs })
    }

    pub fn from_ints(group: CyclicGroup, coeffs: &[i64]) -> Result<Self> {
        GroupRingElt::new(group, coeffs.iter().map(|&c| arith::int(c)).collect())
    }

    /// Builds an element from `(exponent, coefficient)` pairs, exponents taken mod `|G|`.
    pub fn from_terms(group: CyclicGroup, terms: &[(i64, i64)]) -> Self {
        let mut x = GroupRingElt::zero(group);
        for &(e, c) in terms {
            x.coeffs[e.rem_euclid(group.order as i64) as usize] += arith::int(c);
        }
        x
    }

    pub fn zero(group: CyclicGroup) -> Self {
        GroupRingElt { group, coeffs: vec![BigRational::zero(); group.order as usize] }
    }

    pub fn one(group: CyclicGroup) -> Self {
        GroupRingElt::sigma_pow(group, 0)
    }

    pub fn from_rational(group: CyclicGroup, q: BigRational) -> Self {
        let mut x = GroupRingElt::zero(group);
        x.coeffs[0] = q;
        x
    }

    /// `sigma^k`.
    pub fn sigma_pow(group: CyclicGroup, k: i64) -> Self {
        GroupRingElt::from_terms(group, &[(k, 1)])
    }

    /// `Tr_{H_t}`, the sum of the elements of `H_t`.
    pub fn trace_elt(group: CyclicGroup, t: u32) -> Self {
        let step = group.quotient_order(t) as i64;
        let terms: Vec<_> = (0..group.subgroup_order(t) as i64).map(|i| (i * step, 1)).collect();
        GroupRingElt::from_terms(group, &terms)
    }

    /// The idempotent `e_{H_t} = Tr_{H_t} / |H_t|`.
    pub fn subgroup_idempotent(group: CyclicGroup, t: u32) -> Self {
        GroupRingElt::trace_elt(group, t).scale(&arith::rat(1, group.subgroup_order(t) as i64))
    }

    /// `sigma^{p^t} - 1`.
    pub fn sigma_power_minus_one(group: CyclicGroup, t: u32) -> Self {
        GroupRingElt::from_terms(group, &[(group.quotient_order(t) as i64, 1), (0, -1)])
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn augmentation(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| is_p_integral(c, p))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GroupRingElt { group: self.group, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.group.check(&other.group)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingElt { group: self.group, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.group.check(&other.group)?;
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        Ok(GroupRingElt { group: self.group, coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(GroupRingElt::one(self.group), |acc, _| &acc * self)
    }

    /// Image under the automorphism `sigma -> sigma^a` of `G`.
    pub fn substitute_generator(&self, a: u64) -> Result<Self> {
        let order = self.group.order;
        if arith::gcd((a % order) as i64, order as i64) != 1 {
            return Err(Error::NotCoprime { s: a as i64, m: order });
        }
        let mut out = GroupRingElt::zero(self.group);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(i as u128 * a as u128 % order as u128) as usize] += c;
        }
        Ok(out)
    }

    /// Image under the involution `g -> g^{-1}`.
    pub fn involution(&self) -> Self {
        self.substitute_generator(self.group.order - 1).expect("-1 is a unit")
    }
}

/// `psi(x)`, reduced into `Q(zeta_{p^t})` with `t` the level of `psi`.
pub fn char_eval(x: &GroupRingElt, psi: &Character) -> Result<CycNum> {
    x.group.check(&psi.group)?;
    let m = psi.order();
    let jr = psi.reduced_index() as usize;
    let mut poly = vec![BigRational::zero(); m as usize];
    for (i, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            poly[i * jr % m as usize] += c;
        }
    }
    Ok(CycNum::from_poly(m, &poly))
}

/// Numerical `psi(x)` evaluated at the standard embedding.
pub fn char_eval_numeric(x: &GroupRingElt, psi: &Character, prec: usize) -> BigComplex {
    let mut acc = BigComplex::zero(prec);
    for (i, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &psi.value_numeric(i as i64, prec).scale(&Real::from_rational(c, prec));
        }
    }
    acc
}

/// Result of a numerical inverse Fourier transform followed by rational recognition.
#[derive(Clone, Debug)]
pub struct DftRecognition {
    pub element: GroupRingElt,
    /// `max_psi |psi(element) - values(psi)|`.
    pub residual: Real,
    /// True when every coefficient met the denominator bound.
    pub within_bound: bool,
}

/// Recovers `x` in `Q[G]` from numerical character values `values[j] ~ psi_j(x)`.
///
/// Coefficients are `(1/|G|) sum_j values[j] zeta^{-ij}`, rounded to the simplest
/// rational within `window` of the computed value; when that rational exceeds
/// `denom_bound` the best convergent below the bound is used instead.
pub fn inverse_dft(
    group: CyclicGroup,
    values: &[BigComplex],
    denom_bound: &BigInt,
    window: &Real,
    prec: usize,
) -> Result<DftRecognition> {
    if values.len() as u64 != group.order {
        return Err(Error::GroupMismatch(group.order, values.len() as u64));
    }
    let order = group.order as i64;
    let inv_order = Real::from_rational(&arith::rat(1, order), prec);
    let mut coeffs = Vec::with_capacity(order as usize);
    let mut within_bound = true;
    for i in 0..order {
        let mut acc = BigComplex::zero(prec);
        for (j, v) in values.iter().enumerate() {
            let z = BigComplex::root_of_unity(-(i * j as i64).rem_euclid(order), group.order, prec);
            acc = &acc + &(v * &z);
        }
        let c = &acc.re * &inv_order;
        let (q, ok) = recognize_rational(&c, window, denom_bound);
        within_bound &= ok;
        coeffs.push(q);
    }
    let element = GroupRingElt::new(group, coeffs)?;
    let mut residual = Real::zero(prec);
    for psi in group.characters() {
        let d = (&char_eval_numeric(&element, &psi, prec) - &values[psi.index() as usize]).abs();
        if residual.lt(&d) {
            residual = d;
        }
    }
    Ok(DftRecognition { element, residual, within_bound })
}

/// Simplest rational within `window` of `x`, subject to `denom_bound`.
/// The flag is false when the bound forced a fallback to a convergent.
pub fn recognize_rational(x: &Real, window: &Real, denom_bound: &BigInt) -> (BigRational, bool) {
    let xr = x.to_rational();
    let w = window.to_rational().abs();
    let q = arith::simplest_rational_between(&(&xr - &w), &(&xr + &w));
    if q.denom() <= denom_bound {
        return (q, true);
    }
    let best = arith::convergents(&xr)
        .into_iter()
        .take_while(|c| c.denom() <= denom_bound)
        .last()
        .unwrap_or_else(|| BigRational::from_integer(xr.round().to_integer()));
    (best, false)
}

/// Exact inverse Fourier transform of Galois-compatible exact character values.
/// `values[j]` may live in any cyclotomic field whose modulus divides `|G|`.
pub fn exact_inverse_dft(group: CyclicGroup, values: &[CycNum]) -> Result<GroupRingElt> {
    if values.len() as u64 != group.order {
        return Err(Error::GroupMismatch(group.order, values.len() as u64));
    }
    let order = group.order;
    let lifted: Vec<CycNum> = values.iter().map(|v| v.lift(order)).collect::<Result<_>>()?;
    let inv_order = arith::rat(1, order as i64);
    let mut coeffs = Vec::with_capacity(order as usize);
    for i in 0..order as i64 {
        let mut acc = CycNum::zero(order);
        for (j, v) in lifted.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let z = CycNum::zeta_pow(order, -(i * j as i64));
            acc = &acc + &(v * &z);
        }
        let c = acc.as_rational().ok_or_else(|| {
            Error::GaloisIncompatible(format!("coefficient of sigma^{i} is not rational"))
        })?;
        coeffs.push(c * &inv_order);
    }
    GroupRingElt::new(group, coeffs)
}

/// Witness attached to a unit test in `Z_p[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitWitness {
    Unit,
    NonIntegralCoefficient { index: usize, valuation: i64 },
    AugmentationDivisible { valuation: Option<i64> },
}

impl UnitWitness {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitWitness::Unit)
    }
}

impl fmt::Display for UnitWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitWitness::Unit => write!(f, "unit"),
            UnitWitness::NonIntegralCoefficient { index, valuation } => {
                write!(f, "coefficient of sigma^{index} has valuation {valuation}")
            }
            UnitWitness::AugmentationDivisible { valuation: Some(v) } => {
                write!(f, "augmentation has valuation {v}")
            }
            UnitWitness::AugmentationDivisible { valuation: None } => write!(f, "augmentation is zero"),
        }
    }
}

/// Unit test in `Z_p[G]`: integral coefficients and augmentation prime to `p`
/// (`Z_p[G]` is local because `G` is a p-group).
pub fn is_zp_unit(x: &GroupRingElt, p: u64) -> UnitWitness {
    for (index, c) in x.coeffs.iter().enumerate() {
        if !is_p_integral(c, p) {
            let valuation = vp_rational(c, p).expect("nonzero");
            return UnitWitness::NonIntegralCoefficient { index, valuation };
        }
    }
    match vp_rational(&x.augmentation(), p) {
        Some(0) => UnitWitness::Unit,
        valuation => UnitWitness::AugmentationDivisible { valuation },
    }
}

/// Decides `x in (sigma - 1)^h Z_p[G]`.
///
/// Divides by `sigma - 1` exactly `h` times over Q, pinning the free constant
/// at each intermediate step so that the next dividend has augmentation zero.
/// The remaining freedom is `Q * Tr_G`, so membership holds iff all coefficient
/// differences of the final quotient are p-integral.
pub fn ideal_power_membership(x: &GroupRingElt, h: u32, p: u64) -> Result<bool> {
    if !x.is_p_integral(p) {
        return Err(Error::NonIntegral { p, detail: format!("{x}") });
    }
    if h == 0 {
        return Ok(true);
    }
    let order = x.coeffs.len();
    let n_rat = arith::int(order as i64);
    let mut cur = x.coeffs.clone();
    for step in 0..h {
        if !cur.iter().fold(BigRational::zero(), |a, c| a + c).is_zero() {
            return Ok(false);
        }
        // (sigma - 1) z = cur  <=>  z_i = z_{i-1} - cur_i
        let mut z = Vec::with_capacity(order);
        z.push(BigRational::zero());
        for i in 1..order {
            let next = &z[i - 1] - &cur[i];
            z.push(next);
        }
        if step + 1 < h {
            let shift = z.iter().fold(BigRational::zero(), |a, c| a + c) / &n_rat;
            for c in z.iter_mut() {
                *c -= &shift;
            }
        }
        cur = z;
    }
    let base = cur[0].clone();
    Ok(cur.iter().all(|c| is_p_integral(&(c - &base), p)))
}

/// Largest `h <= limit` with `x in I^h`.
pub fn augmentation_order(x: &GroupRingElt, p: u64, limit: u32) -> Result<u32> {
    let mut h = 0;
    while h < limit && ideal_power_membership(x, h + 1, p)? {
        h += 1;
    }
    Ok(h)
}

impl fmt::Display for GroupRingElt {
    /// Renders e.g. `-σ + 2σ^2 - σ^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
                1 => "σ".to_string(),
                _ => format!("σ^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElt(C_{}; {})", self.group.order, self)
    }
}

impl Add<&GroupRingElt> for &GroupRingElt {
    type Output = GroupRingElt;
    fn add(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.checked_add(rhs).expect("group mismatch")
    }
}

impl Sub<&GroupRingElt> for &GroupRingElt {
    type Output = GroupRingElt;
    fn sub(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.checked_add(&-rhs).expect("group mismatch")
    }
}

impl Mul<&GroupRingElt> for &GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.checked_mul(rhs).expect("group mismatch")
    }
}

impl Neg for &GroupRingElt {
    type Output = GroupRingElt;
    fn neg(self) -> GroupRingElt {
        GroupRingElt { group: self.group, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
