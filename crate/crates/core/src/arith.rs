//! Elementary integer and rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp_rational(q: &BigRational, p: u64) -> Option<i64> {
    let num = vp_int(q.numer(), p)?;
    let den = vp_int(q.denom(), p).expect("denominator is nonzero");
    Some(num - den)
}

/// True when the denominator of `q` is prime to `p`.
pub fn is_p_integral(q: &BigRational, p: u64) -> bool {
    q.is_zero() || vp_int(q.denom(), p) == Some(0)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_prime(n: u64) -> bool {
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

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Returns `(e, m)` with `n = p^e * m` and `p` not dividing `m`.
pub fn split_power(mut n: u64, p: u64) -> (u32, u64) {
    let mut e = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        e += 1;
    }
    (e, n)
}

/// Exponent `k` with `m = p^k`, if `m` is a power of `p`.
pub fn log_exact(m: u64, p: u64) -> Option<u32> {
    let (e, rest) = split_power(m, p);
    (rest == 1).then_some(e)
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i64;
    let e = a.rem_euclid(m_i).extended_gcd(&m_i);
    (e.gcd == 1).then(|| e.x.rem_euclid(m_i) as u64)
}

/// True when `g` generates `(Z/q)^x` for a prime `q`.
pub fn is_primitive_root(g: u64, q: u64) -> bool {
    if g % q == 0 {
        return false;
    }
    let order = q - 1;
    factorize(order).iter().all(|&(r, _)| mod_pow(g, order / r, q) != 1)
}

pub fn smallest_primitive_root(q: u64) -> Option<u64> {
    (2..q).find(|&g| is_primitive_root(g, q)).or((q == 2).then_some(1))
}

/// Simplest rational (smallest denominator, then smallest numerator) in the closed interval `[lo, hi]`.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    // Stern-Brocot descent expressed through continued fractions.
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + BigRational::one();
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    let inner = simplest_positive(&frac_hi.recip(), &frac_lo.recip());
    fl + inner.recip()
}

/// Continued-fraction convergents of a rational number.
pub fn convergents(x: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..512 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        out.push(BigRational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp_rational(&rat(-9, 116), 7), Some(0));
        assert_eq!(vp_rational(&rat(49, 3), 7), Some(2));
        assert_eq!(vp_rational(&rat(5, 27), 3), Some(-3));
        assert_eq!(vp_rational(&int(0), 3), None);
        assert!(is_p_integral(&rat(1, 2), 3));
        assert!(!is_p_integral(&rat(1, 6), 3));
    }

    #[test]
    fn number_theory_basics() {
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(387), 252);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(smallest_primitive_root(29), Some(2));
        assert_eq!(smallest_primitive_root(19), Some(2));
        assert_eq!(smallest_primitive_root(7), Some(3));
        assert_eq!(mod_inverse(2, 9), Some(5));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(log_exact(27, 3), Some(3));
        assert_eq!(log_exact(18, 3), None);
        assert_eq!(log_exact(1, 5), Some(0));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_rational_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_rational_between(&rat(-1, 2), &rat(1, 2)), int(0));
        assert_eq!(
            simplest_rational_between(&rat(-1243244, 1000000), &rat(-1243242, 1000000)),
            rat(-46, 37)
        );
        assert_eq!(simplest_rational_between(&rat(7, 2), &rat(7, 2)), rat(7, 2));
    }

    #[test]
    fn convergents_end_at_value() {
        let c = convergents(&rat(-9, 116));
        assert_eq!(c.last().unwrap(), &rat(-9, 116));
    }
}
