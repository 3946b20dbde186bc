//! Characters of `G` realised as Dirichlet characters modulo a prime `q`,
//! Gauss sums, the non-ramified characteristic and archimedean constants.

use num_traits::One;

use crate::arith;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groupring::{Character, CyclicGroup};
use crate::numeric::{BigComplex, Real};

/// A place of the base field ramified in `F`, described by its inertia level
/// (`I_v = H_s`) and a Frobenius representative `sigma^f` in `G / I_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedPlace {
    pub label: String,
    pub norm: u64,
    pub inertia_level: u32,
    pub frobenius: i64,
}

/// The field-theoretic data attached to `F/k`.
#[derive(Clone, Debug)]
pub struct AbelianFieldSetup {
    pub group: CyclicGroup,
    /// Conductor `q` when `F` is the degree-`p^n` subfield of `Q(zeta_q)`.
    pub conductor: Option<u64>,
    /// Primitive root `g mod q` mapped to `sigma`.
    pub primitive_root: Option<u64>,
    pub ramified: Vec<RamifiedPlace>,
    pub real_places: u32,
    pub complex_places: u32,
    pub discriminant: i64,
    pub dimension: u32,
}

/// A Gauss sum with its exact and numerical values.
#[derive(Clone, Debug)]
pub struct GaussSumValue {
    pub exact: CycNum,
    pub numeric: BigComplex,
}

impl AbelianFieldSetup {
    /// The standard setup for `k = Q` and `F` inside `Q(zeta_q)`.
    pub fn rational(group: CyclicGroup, q: u64, primitive_root: Option<u64>, dimension: u32) -> Result<Self> {
        if !arith::is_prime(q) || (q - 1) % group.order() != 0 {
            return Err(Error::Inconsistent(format!("q = {q} must be a prime with q = 1 mod {}", group.order())));
        }
        let g = match primitive_root {
            Some(g) if arith::is_primitive_root(g, q) => g,
            Some(g) => return Err(Error::Inconsistent(format!("{g} is not a primitive root mod {q}"))),
            None => arith::smallest_primitive_root(q).expect("prime modulus"),
        };
        Ok(AbelianFieldSetup {
            group,
            conductor: Some(q),
            primitive_root: Some(g),
            ramified: vec![RamifiedPlace { label: q.to_string(), norm: q, inertia_level: 0, frobenius: 0 }],
            real_places: 1,
            complex_places: 0,
            discriminant: 1,
            dimension,
        })
    }

    pub fn is_rational_base(&self) -> bool {
        self.real_places == 1 && self.complex_places == 0 && self.discriminant == 1
    }

    /// Image of `a in (Z/q)^x` in `G`, as the exponent `i` of `sigma^i`.
    pub fn artin_exponent(&self, a: u64) -> Result<u64> {
        let (q, g) = self.dirichlet_data()?;
        let a = a % q;
        if a == 0 {
            return Err(Error::NotCoprime { s: a as i64, m: q });
        }
        let mut x = 1;
        for e in 0..q - 1 {
            if x == a {
                return Ok(e % self.group.order());
            }
            x = x * g % q;
        }
        unreachable!("primitive root generates the unit group")
    }

    fn dirichlet_data(&self) -> Result<(u64, u64)> {
        match (self.conductor, self.primitive_root) {
            (Some(q), Some(g)) if self.is_rational_base() => Ok((q, g)),
            _ => Err(Error::MissingData("Gauss sums are only computed for k = Q with a prime conductor".into())),
        }
    }
}

/// `tau(chi) = sum_{a mod q} chi(a) zeta_q^a` with `chi(g^a) = psi(sigma^a)`,
/// exact in `Q(zeta_{q p^t})`; the trivial character gives 1.
pub fn gauss_sum(psi: &Character, setup: &AbelianFieldSetup, prec: usize) -> Result<GaussSumValue> {
    let (q, g) = setup.dirichlet_data()?;
    if psi.is_trivial() {
        return Ok(GaussSumValue { exact: CycNum::one(1), numeric: BigComplex::one(prec) });
    }
    let pt = psi.order();
    let modulus = q * pt;
    let jr = psi.reduced_index();
    let mut terms = Vec::with_capacity(q as usize - 1);
    let mut ga = 1u64;
    for a in 0..q - 1 {
        // zeta_{p^t}^{j' a} zeta_q^{g^a} = zeta_M^{q j' a + p^t g^a}
        let e = (q as u128 * ((jr * a) % pt) as u128 + pt as u128 * ga as u128) % modulus as u128;
        terms.push((e as i64, num_rational::BigRational::one()));
        ga = ga * g % q;
    }
    let exact = CycNum::from_terms(modulus, &terms);
    let numeric = exact.embed(1, prec)?;
    Ok(GaussSumValue { exact, numeric })
}

/// Direct numerical summation of the Gauss sum, independent of the exact path.
pub fn gauss_sum_numeric(psi: &Character, setup: &AbelianFieldSetup, prec: usize) -> Result<BigComplex> {
    let (q, g) = setup.dirichlet_data()?;
    if psi.is_trivial() {
        return Ok(BigComplex::one(prec));
    }
    let mut acc = BigComplex::zero(prec);
    let mut ga = 1u64;
    for a in 0..q - 1 {
        let chi = psi.value_numeric(a as i64, prec);
        let z = BigComplex::root_of_unity(ga as i64, q, prec);
        acc = &acc + &(&chi * &z);
        ga = ga * g % q;
    }
    Ok(acc)
}

/// `u(psi) = prod_v u_v(psi)`, with `u_v(psi) = -psi(Fr_v^{-1})` when `psi` is
/// trivial on the inertia group at `v` and 1 otherwise.
pub fn nonramified_characteristic(psi: &Character, setup: &AbelianFieldSetup) -> CycNum {
    let m = psi.order();
    let mut u = CycNum::one(m);
    for v in &setup.ramified {
        if psi.trivial_on(v.inertia_level) {
            u = &u * &(-psi.value(-v.frobenius));
        }
    }
    u
}

/// `tau*(psi) = u(psi) tau(psi)`.
pub fn tau_star(psi: &Character, setup: &AbelianFieldSetup, prec: usize) -> Result<GaussSumValue> {
    let tau = gauss_sum(psi, setup, prec)?;
    let u = nonramified_characteristic(psi, setup);
    let big = num_integer::lcm(tau.exact.modulus(), u.modulus());
    let exact = &tau.exact.lift(big)? * &u.lift(big)?;
    let numeric = exact.embed(1, prec)?;
    Ok(GaussSumValue { exact, numeric })
}

/// `w_infinity(k) = i^{|S_C|}`.
pub fn archimedean_constant(setup: &AbelianFieldSetup, prec: usize) -> BigComplex {
    BigComplex::i(prec).pow(setup.complex_places % 4)
}

/// The value `(-1)^{|S_r|} sqrt|d_k|` that `tau*(1) / w_infinity` must equal.
pub fn expected_trivial_ratio(setup: &AbelianFieldSetup, prec: usize) -> BigComplex {
    let root = Real::from_i64(setup.discriminant.abs(), prec).sqrt();
    let sign = if setup.ramified.len() % 2 == 0 { root } else { -root };
    BigComplex::from_real(sign)
}
