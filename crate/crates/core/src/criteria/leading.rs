use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gauss::{archimedean_constant, gauss_sum, tau_star, AbelianFieldSetup};
use crate::groupring::Character;
use crate::numeric::{BigComplex, Real};

/// Analytic input per character `psi_j`.
#[derive(Clone, Debug)]
pub struct LeadingTermData {
    /// `values[j]` is the leading term at `s = 1` of `L(A, psi_j^vee, s)`.
    pub values: Vec<BigComplex>,
    /// Whether `values[j]` already omits the Euler factors at ramified places.
    pub truncated: Vec<bool>,
    pub orders: Vec<u64>,
    pub omega: Real,
    pub dimension: u32,
    /// Supplied `tau*(psi_j)`; computed from the field setup when absent.
    pub tau_star: Option<Vec<BigComplex>>,
    /// `a_v = Nv + 1 - |A(kappa_v)|` per ramified place label, needed for truncation.
    pub frobenius_traces: BTreeMap<String, i64>,
}

/// `1 - a x / Nv + x^2 / Nv`, the reciprocal local factor of an elliptic curve
/// with good reduction at `v`, at `s = 1` and twisted by the character value `x`.
pub fn euler_factor(a_v: i64, norm: u64, x: &BigComplex, prec: usize) -> BigComplex {
    let nv = Real::from_i64(norm as i64, prec);
    let one = BigComplex::one(prec);
    let lin = x.scale(&(&Real::from_i64(a_v, prec) / &nv));
    let quad = (x * x).scale(&(&Real::one(prec) / &nv));
    &(&one - &lin) + &quad
}

/// Product of the Euler factors of `L(A, psi^vee, s)` at the ramified places
/// where `psi` is unramified.
fn truncation_factor(psi: &Character, data: &LeadingTermData, setup: &AbelianFieldSetup, prec: usize) -> Result<BigComplex> {
    let mut acc = BigComplex::one(prec);
    for v in &setup.ramified {
        if !psi.trivial_on(v.inertia_level) {
            continue;
        }
        if data.dimension != 1 {
            return Err(Error::MissingData("Euler-factor truncation is only implemented for elliptic curves".into()));
        }
        let a_v = *data.frobenius_traces.get(&v.label).ok_or_else(|| {
            Error::MissingData(format!("residue point count at {} needed to truncate the L-value", v.label))
        })?;
        // psi^vee(Fr_v) = psi(sigma^{-f})
        let x = psi.value_numeric(-v.frobenius, prec);
        acc = &acc * &euler_factor(a_v, v.norm, &x, prec);
    }
    Ok(acc)
}

fn truncated_value(psi: &Character, data: &LeadingTermData, setup: &AbelianFieldSetup, prec: usize) -> Result<BigComplex> {
    let j = psi.index() as usize;
    let value = &data.values[j];
    if value.abs().is_zero() {
        return Err(Error::Inconsistent(format!("leading term at {psi} is zero")));
    }
    if data.truncated[j] {
        Ok(value.clone())
    } else {
        Ok(value * &truncation_factor(psi, data, setup, prec)?)
    }
}

/// `L*_{S_r}(A, psi^vee, 1) tau*(psi)^d / (Omega w^d)` for every character.
pub fn normalized_leading_terms(data: &LeadingTermData, setup: &AbelianFieldSetup, prec: usize) -> Result<Vec<BigComplex>> {
    check_lengths(data, setup)?;
    let w = archimedean_constant(setup, prec).pow(data.dimension);
    let mut out = Vec::with_capacity(data.values.len());
    for psi in setup.group.characters() {
        let l = truncated_value(&psi, data, setup, prec)?;
        let ts = match &data.tau_star {
            Some(v) => v[psi.index() as usize].clone(),
            None => tau_star(&psi, setup, prec)?.numeric,
        };
        let num = &l * &ts.pow(data.dimension);
        let den = w.scale(&data.omega);
        out.push(&num / &den);
    }
    Ok(out)
}

/// The variant `L*(A, psi^vee, 1) tau(psi)^d / Omega` with untruncated L-values
/// and plain Gauss sums, which has the same rationality behaviour.
pub fn modified_leading_terms(data: &LeadingTermData, setup: &AbelianFieldSetup, prec: usize) -> Result<Vec<BigComplex>> {
    check_lengths(data, setup)?;
    let mut out = Vec::with_capacity(data.values.len());
    for psi in setup.group.characters() {
        let j = psi.index() as usize;
        let l = if data.truncated[j] {
            &data.values[j] / &truncation_factor(&psi, data, setup, prec)?
        } else {
            data.values[j].clone()
        };
        let tau = gauss_sum(&psi, setup, prec)?.numeric;
        let num = &l * &tau.pow(data.dimension);
        out.push(num.scale(&(&Real::one(prec) / &data.omega)));
    }
    Ok(out)
}

fn check_lengths(data: &LeadingTermData, setup: &AbelianFieldSetup) -> Result<()> {
    let order = setup.group.order() as usize;
    if data.values.len() != order || data.truncated.len() != order {
        return Err(Error::Inconsistent(format!("expected {order} leading terms, got {}", data.values.len())));
    }
    if let Some(ts) = &data.tau_star {
        if ts.len() != order {
            return Err(Error::Inconsistent(format!("expected {order} tau* values, got {}", ts.len())));
        }
    }
    if data.omega.is_zero() {
        return Err(Error::Inconsistent("period is zero".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::CyclicGroup;
    use crate::numeric::DEFAULT_PRECISION;

    const PREC: usize = DEFAULT_PRECISION;

    fn data(order: usize, value: f64, omega: &str) -> LeadingTermData {
        LeadingTermData {
            values: vec![BigComplex::parse_decimal(&value.to_string(), "0", PREC).unwrap(); order],
            truncated: vec![true; order],
            orders: vec![0; order],
            omega: Real::parse_decimal(omega, PREC).unwrap(),
            dimension: 1,
            tau_star: None,
            frobenius_traces: BTreeMap::new(),
        }
    }

    #[test]
    fn trivial_character_sign() {
        let g = CyclicGroup::new(3, 1).unwrap();
        let setup = AbelianFieldSetup::rational(g, 7, None, 1).unwrap();
        let d = data(3, 1.5, "2");
        let out = normalized_leading_terms(&d, &setup, PREC).unwrap();
        assert!((out[0].re.to_f64() + 0.75).abs() < 1e-30);
        // |tau| = sqrt 7 for the nontrivial characters
        assert!((out[1].abs().to_f64() - 0.75 * 7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scaling_the_period() {
        let g = CyclicGroup::new(3, 1).unwrap();
        let setup = AbelianFieldSetup::rational(g, 7, None, 1).unwrap();
        let a = normalized_leading_terms(&data(3, 1.5, "2"), &setup, PREC).unwrap();
        let b = normalized_leading_terms(&data(3, 1.5, "6"), &setup, PREC).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((&x.scale(&Real::from_rational(&crate::arith::rat(1, 3), PREC)) - y).abs().to_f64() < 1e-40);
        }
    }

    #[test]
    fn truncation_uses_the_euler_factor() {
        let g = CyclicGroup::new(3, 1).unwrap();
        let setup = AbelianFieldSetup::rational(g, 7, None, 1).unwrap();
        let mut d = data(3, 1.0, "1");
        d.truncated = vec![false; 3];
        assert!(normalized_leading_terms(&d, &setup, PREC).is_err());
        d.frobenius_traces.insert("7".into(), 2);
        let out = normalized_leading_terms(&d, &setup, PREC).unwrap();
        // trivial character: -(1 - 2/7 + 1/7) = -6/7
        assert!((out[0].re.to_f64() + 6.0 / 7.0).abs() < 1e-30);
        let modified = modified_leading_terms(&d, &setup, PREC).unwrap();
        assert!((modified[0].re.to_f64() - 1.0).abs() < 1e-30);
    }
}
