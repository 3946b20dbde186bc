use num_rational::BigRational;

use super::RecognitionConfig;
use crate::arith;
use crate::cyclotomic::{reduce_real_poly, CycNum};
use crate::error::{Error, Result};
use crate::groupring::{recognize_rational, CyclicGroup};
use crate::numeric::{BigComplex, Real};
use crate::report::{CheckResult, Status};

pub const CHECK_RATIONALITY: &str = "rationality";

/// One Galois orbit of characters (all characters of a fixed level) and the
/// exact element recognised from it.
#[derive(Clone, Debug)]
pub struct RecognizedOrbit {
    pub level: u32,
    pub members: Vec<u64>,
    /// Value at the orbit representative `j = p^(n - level)`, in `Q(zeta_{p^level})`.
    pub element: CycNum,
    pub residual: Real,
    pub within_bound: bool,
}

/// Exact character values recognised from numerical data.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub group: CyclicGroup,
    /// `values[j]` is the exact value at `psi_j`.
    pub values: Vec<CycNum>,
    pub orbits: Vec<RecognizedOrbit>,
    pub residual: Real,
    pub within_bound: bool,
}

impl Recognition {
    pub fn status(&self, cfg: &RecognitionConfig) -> Status {
        if self.within_bound && self.residual.lt(&cfg.tol) {
            Status::Pass
        } else if self.within_bound && self.residual.lt(&cfg.loose_tol()) {
            Status::Inconclusive
        } else {
            Status::Fail
        }
    }

    /// Multiplies every value by an exact, Galois-compatible factor.
    pub fn scaled_by(&self, factors: &[CycNum]) -> Recognition {
        let values: Vec<CycNum> = self.values.iter().zip(factors).map(|(a, b)| mul_any(a, b)).collect();
        let orbits = self
            .orbits
            .iter()
            .map(|o| {
                let rep = o.members[0] as usize;
                RecognizedOrbit { element: values[rep].clone(), ..o.clone() }
            })
            .collect();
        Recognition { values, orbits, ..self.clone() }
    }
}

/// Product of two cyclotomic numbers, computed in the compositum.
pub(crate) fn mul_any(a: &CycNum, b: &CycNum) -> CycNum {
    let m = num_integer::lcm(a.modulus(), b.modulus());
    let prod = &a.lift(m).expect("divides") * &b.lift(m).expect("divides");
    let target = a.modulus().max(b.modulus());
    prod.descend(target).unwrap_or(prod)
}

/// Recognises, orbit by orbit, an exact element `alpha` of `Q(zeta_{p^t})` with
/// `alpha(zeta^{j'}) ~ values[p^(n-t) j']` for every unit `j'`.
pub fn recognize_character_values(
    group: CyclicGroup,
    values: &[BigComplex],
    cfg: &RecognitionConfig,
) -> Result<Recognition> {
    if values.len() as u64 != group.order() {
        return Err(Error::GroupMismatch(group.order(), values.len() as u64));
    }
    let prec = cfg.prec;
    let p = group.p();
    let n = group.n();
    let mut exact = vec![CycNum::zero(1); group.order() as usize];
    let mut orbits = Vec::new();
    for t in 0..=n {
        let pt = p.pow(t);
        let step = group.subgroup_order(t);
        let units: Vec<u64> = (1..=pt).filter(|&j| arith::gcd((j % pt) as i64, pt as i64) == 1).map(|j| j % pt).collect();
        let members: Vec<u64> = units.iter().map(|&u| u * step).collect();
        let (element, within_bound) = if t == 0 {
            let (q, ok) = recognize_rational(&values[0].re, &cfg.tol, &cfg.denom_bound);
            (CycNum::from_rational(1, q), ok)
        } else {
            let inv = Real::from_rational(&arith::rat(1, pt as i64), prec);
            let mut y = Vec::with_capacity(pt as usize);
            for i in 0..pt as i64 {
                let mut acc = BigComplex::zero(prec);
                for (&u, &j) in units.iter().zip(&members) {
                    let z = BigComplex::root_of_unity(-(i * u as i64), pt, prec);
                    acc = &acc + &(&values[j as usize] * &z);
                }
                y.push(&acc.re * &inv);
            }
            let reduced = reduce_real_poly(pt, &y, prec);
            let mut ok = true;
            let coeffs: Vec<BigRational> = reduced
                .iter()
                .map(|c| {
                    let (q, fine) = recognize_rational(c, &cfg.tol, &cfg.denom_bound);
                    ok &= fine;
                    q
                })
                .collect();
            (CycNum::from_poly(pt, &coeffs), ok)
        };
        let mut residual = Real::zero(prec);
        for (&u, &j) in units.iter().zip(&members) {
            let root = if t == 0 { 1 } else { u as i64 };
            let d = (&element.embed(root, prec)? - &values[j as usize]).abs();
            if residual.lt(&d) {
                residual = d;
            }
            exact[j as usize] = if t == 0 { element.clone() } else { element.galois_apply(u as i64)? };
        }
        orbits.push(RecognizedOrbit { level: t, members, element, residual, within_bound });
    }
    let residual = orbits.iter().map(|o| o.residual.clone()).fold(Real::zero(prec), |a, b| if a.lt(&b) { b } else { a });
    let within_bound = orbits.iter().all(|o| o.within_bound);
    Ok(Recognition { group, values: exact, orbits, residual, within_bound })
}

/// Rationality criterion: the values must come from one exact element per
/// Galois orbit, i.e. lie in `Q(psi)` and transform correctly under Galois.
pub fn rationality_check(
    group: CyclicGroup,
    values: &[BigComplex],
    cfg: &RecognitionConfig,
) -> Result<(CheckResult, Recognition)> {
    let rec = recognize_character_values(group, values, cfg)?;
    Ok((rationality_result(&rec, cfg), rec))
}

pub(crate) fn rationality_result(rec: &Recognition, cfg: &RecognitionConfig) -> CheckResult {
    let status = rec.status(cfg);
    let summary = match status {
        Status::Pass => format!("all {} orbits recognised; max residual {}", rec.orbits.len(), short(&rec.residual)),
        Status::Inconclusive => format!(
            "max residual {} is above the tolerance {} but below its square root",
            short(&rec.residual),
            short(&cfg.tol)
        ),
        _ if !rec.within_bound => format!("a coefficient exceeds the denominator bound {}", cfg.denom_bound),
        _ => format!("max residual {} exceeds {}", short(&rec.residual), short(&cfg.loose_tol())),
    };
    let mut res = CheckResult::new(CHECK_RATIONALITY, status, summary)
        .with_detail("tolerance", short(&cfg.tol))
        .with_detail("denominator bound", &cfg.denom_bound);
    for o in &rec.orbits {
        res = res.with_detail(
            format!("orbit level {}", o.level),
            format!("{} (residual {}{})", o.element, short(&o.residual), if o.within_bound { "" } else { ", bound exceeded" }),
        );
    }
    res
}

/// Three significant digits, for reports.
pub(crate) fn short(x: &Real) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    format!("{:.2e}", x.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{char_eval_numeric, GroupRingElt};
    use crate::numeric::DEFAULT_PRECISION;
    use num_bigint::BigInt;

    fn cfg() -> RecognitionConfig {
        RecognitionConfig::new(20, BigInt::from(1_000_000), DEFAULT_PRECISION)
    }

    #[test]
    fn constant_values() {
        let g = CyclicGroup::new(3, 2).unwrap();
        let v = vec![BigComplex::from_rational(&arith::rat(5, 7), DEFAULT_PRECISION); 9];
        let rec = recognize_character_values(g, &v, &cfg()).unwrap();
        assert_eq!(rec.status(&cfg()), Status::Pass);
        for x in &rec.values {
            assert_eq!(x.as_rational(), Some(arith::rat(5, 7)));
        }
    }

    #[test]
    fn values_of_a_group_ring_element() {
        let g = CyclicGroup::new(3, 2).unwrap();
        let x = GroupRingElt::from_terms(g, &[(0, 2), (1, -1), (4, 3), (8, 1)]);
        let v: Vec<_> = g.characters().map(|psi| char_eval_numeric(&x, &psi, DEFAULT_PRECISION)).collect();
        let rec = recognize_character_values(g, &v, &cfg()).unwrap();
        assert_eq!(rec.status(&cfg()), Status::Pass);
        for psi in g.characters() {
            assert_eq!(rec.values[psi.index() as usize], crate::groupring::char_eval(&x, &psi).unwrap());
        }
    }

    #[test]
    fn galois_incompatible_values_fail() {
        let g = CyclicGroup::new(7, 1).unwrap();
        let prec = DEFAULT_PRECISION;
        let mut v: Vec<_> = (0..7).map(|j| BigComplex::root_of_unity(j, 7, prec)).collect();
        v[3] = BigComplex::root_of_unity(5, 7, prec);
        let rec = recognize_character_values(g, &v, &cfg()).unwrap();
        assert_eq!(rec.status(&cfg()), Status::Fail);
    }

    #[test]
    fn transcendental_values_fail() {
        let g = CyclicGroup::new(3, 1).unwrap();
        let pi = BigComplex::from_real(Real::pi(DEFAULT_PRECISION));
        let rec = recognize_character_values(g, &[pi.clone(), pi.clone(), pi], &cfg()).unwrap();
        assert_eq!(rec.status(&cfg()), Status::Fail);
    }
}
