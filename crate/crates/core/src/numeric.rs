//! Arbitrary-precision real and complex numbers.
//!
//! Thin wrappers over [`astro_float::BigFloat`] that carry their working
//! precision and never round a result below the larger precision of the
//! operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 192;

/// Smallest precision any value is allowed to carry.
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("allocate float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Number of bits needed to represent `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize
}

fn biguint_to_float(n: &BigUint, sign: Sign) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, MIN_PRECISION);
    }
    let words = n.to_u64_digits();
    let e = (words.len() * WORD_BITS) as i32;
    BigFloat::from_words(&words, sign, e)
}

/// A real number with an explicit working precision.
#[derive(Clone, Debug)]
pub struct Real {
    value: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(value: BigFloat, prec: usize) -> Self {
        debug_assert!(!value.is_nan(), "NaN produced in Real arithmetic");
        Real { value, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Real::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let sign = if v < 0 { Sign::Neg } else { Sign::Pos };
        let mut x = biguint_to_float(&BigUint::from(v.unsigned_abs()), sign);
        x.set_precision(prec, RM).expect("set precision");
        Real::wrap(x, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let sign = if v.sign() == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut x = biguint_to_float(v.magnitude(), sign);
        // exact integer first, then round to the working precision
        x.set_precision(prec.max(x.mantissa_max_bit_len().unwrap_or(prec)), RM)
            .expect("set precision");
        let mut r = Real::wrap(x, prec);
        r.value.set_precision(prec, RM).expect("set precision");
        r
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let work = prec + 32;
        let n = Real::from_bigint(q.numer(), work);
        let d = Real::from_bigint(q.denom(), work);
        (&n / &d).with_precision(prec)
    }

    /// Parses a decimal string such as `-0.0775862068965517241` or `1.5e-3`.
    pub fn parse_decimal(s: &str, prec: usize) -> Result<Self> {
        let prec = prec.max(MIN_PRECISION);
        let t = s.trim();
        let valid = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !valid {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec, RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        Ok(Real::wrap(v, prec))
    }

    pub fn pi(prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Real::wrap(with_consts(|cc| cc.pi(prec, RM)), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn with_precision(mut self, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        self.value.set_precision(prec, RM).expect("set precision");
        self.prec = prec;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative() && !self.value.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.value.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Real {
        Real::wrap(self.value.sqrt(self.prec, RM), self.prec)
    }

    pub fn cos(&self) -> Real {
        Real::wrap(with_consts(|cc| self.value.cos(self.prec, RM, cc)), self.prec)
    }

    pub fn sin(&self) -> Real {
        Real::wrap(with_consts(|cc| self.value.sin(self.prec, RM, cc)), self.prec)
    }

    /// `10^-k` at the given precision.
    pub fn pow10_neg(k: u32, prec: usize) -> Real {
        let ten = BigInt::from(10u32).pow(k);
        Real::from_rational(&BigRational::new(BigInt::one(), ten), prec)
    }

    /// Exact value of the binary float as a rational number.
    pub fn to_rational(&self) -> BigRational {
        let Some((words, _, sign, exp, _)) = self.value.as_raw_parts() else {
            return BigRational::zero();
        };
        if self.value.is_zero() {
            return BigRational::zero();
        }
        let mantissa = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let shift = exp as i64 - (words.len() * WORD_BITS) as i64;
        let mut q = BigRational::from_integer(BigInt::from(mantissa));
        let two = BigInt::from(2u32);
        if shift >= 0 {
            q *= BigRational::from_integer(two.pow(shift as u32));
        } else {
            q /= BigRational::from_integer(two.pow((-shift) as u32));
        }
        if sign == Sign::Neg {
            -q
        } else {
            q
        }
    }

    /// Nearest `f64` (for display and coarse comparisons only).
    pub fn to_f64(&self) -> f64 {
        let q = self.to_rational();
        let (n, d) = (q.numer(), q.denom());
        // scale both to at most ~1000 bits before the float division
        let nb = n.bits() as i64;
        let db = d.bits() as i64;
        let shift_n = (nb - 900).max(0);
        let shift_d = (db - 900).max(0);
        let nf = f64_of(&(n.abs() >> shift_n as usize)) * sign_of(n);
        let df = f64_of(&(d >> shift_d as usize));
        nf / df * 2f64.powi((shift_n - shift_d) as i32)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let bits = bits_for_digits(digits as u32).max(MIN_PRECISION);
        let mut v = self.value.clone();
        v.set_precision(bits, RM).expect("set precision");
        let raw = with_consts(|cc| v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string());
        tidy_scientific(&raw, digits.max(1)).unwrap_or(raw)
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match self.value.cmp(&other.value) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn lt(&self, other: &Real) -> bool {
        self.cmp_value(other) == Ordering::Less
    }
}

/// Rounds `d.ddd...e[+-]x` to `digits` significant digits, drops trailing zeros and
/// switches to positional notation for moderate exponents.
fn tidy_scientific(raw: &str, digits: usize) -> Option<String> {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw),
    };
    let (mantissa, exp) = body.split_once(['e', 'E'])?;
    let mut exp: i64 = exp.parse().ok()?;
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut ds: Vec<u8> = int_part.bytes().chain(frac.bytes()).map(|b| b.wrapping_sub(b'0')).collect();
    if ds.iter().any(|&d| d > 9) {
        return None;
    }
    exp += int_part.len() as i64 - 1;
    let lead = ds.iter().position(|&d| d != 0)?;
    ds.drain(..lead);
    exp -= lead as i64;
    if ds.len() > digits {
        let round_up = ds[digits] >= 5;
        ds.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(digits);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let text: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let sign = if neg { "-" } else { "" };
    let out = if (-7..21).contains(&exp) {
        if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), text)
        } else if (exp as usize) + 1 >= text.len() {
            format!("{}{}", text, "0".repeat(exp as usize + 1 - text.len()))
        } else {
            let (a, b) = text.split_at(exp as usize + 1);
            format!("{a}.{b}")
        }
    } else {
        let (a, b) = text.split_at(1);
        if b.is_empty() {
            format!("{a}e{exp}")
        } else {
            format!("{a}.{b}e{exp}")
        }
    };
    Some(format!("{sign}{out}"))
}

fn f64_of(n: &BigInt) -> f64 {
    n.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

fn sign_of(n: &BigInt) -> f64 {
    if n.is_negative() {
        -1.0
    } else {
        1.0
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_decimal(digits))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(self.value.$op(&rhs.value, prec, RM), prec)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.value.clone().neg(), self.prec)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// A complex number with arbitrary-precision parts.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: Real,
    pub im: Real,
}

impl BigComplex {
    pub fn new(re: Real, im: Real) -> Self {
        let prec = re.prec.max(im.prec);
        BigComplex { re: re.with_precision(prec), im: im.with_precision(prec) }
    }

    pub fn zero(prec: usize) -> Self {
        BigComplex::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        BigComplex::new(Real::one(prec), Real::zero(prec))
    }

    pub fn i(prec: usize) -> Self {
        BigComplex::new(Real::zero(prec), Real::one(prec))
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec;
        BigComplex::new(re, Real::zero(prec))
    }

    pub fn from_rational(q: &BigRational, prec: usize) -> Self {
        BigComplex::from_real(Real::from_rational(q, prec))
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        BigComplex::from_real(Real::from_i64(v, prec))
    }

    pub fn parse_decimal(re: &str, im: &str, prec: usize) -> Result<Self> {
        Ok(BigComplex::new(Real::parse_decimal(re, prec)?, Real::parse_decimal(im, prec)?))
    }

    /// `exp(2 pi i k / m)`.
    pub fn root_of_unity(k: i64, m: u64, prec: usize) -> Self {
        assert!(m > 0, "root of unity of order 0");
        let k = k.rem_euclid(m as i64);
        let work = prec.max(MIN_PRECISION) + 16;
        if k == 0 {
            return BigComplex::one(prec);
        }
        let angle = &(&Real::pi(work) * &Real::from_i64(2 * k, work)) / &Real::from_i64(m as i64, work);
        BigComplex::new(angle.cos().with_precision(prec), angle.sin().with_precision(prec))
    }

    pub fn precision(&self) -> usize {
        self.re.prec.max(self.im.prec)
    }

    pub fn with_precision(self, prec: usize) -> Self {
        BigComplex { re: self.re.with_precision(prec), im: self.im.with_precision(prec) }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: &Real) -> Self {
        BigComplex { re: &self.re * s, im: &self.im * s }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BigComplex::one(self.precision());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders as `a + bi` with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = self.re.to_decimal(digits);
        if self.im.is_zero() {
            return re;
        }
        let im = self.im.abs().to_decimal(digits);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{re} {sign} {im}i")
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        BigComplex { re: &num.re / &den, im: &num.im / &den }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

macro_rules! owned_complex_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_complex_ops!(Add add, Sub sub, Mul mul, Div div);

/// Determinant of a square complex matrix by Gaussian elimination with partial pivoting.
pub fn complex_det(mut a: Vec<Vec<BigComplex>>, prec: usize) -> BigComplex {
    let n = a.len();
    let mut det = BigComplex::one(prec);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| a[r1][col].norm_sqr().cmp_value(&a[r2][col].norm_sqr()))
            .expect("non-empty range");
        if a[pivot][col].is_zero() {
            return BigComplex::zero(prec);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        for row in col + 1..n {
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let sub = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &sub;
            }
        }
    }
    det
}
