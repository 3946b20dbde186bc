//! Relabelings of a problem file that must not change any verdict: a new
//! generator `sigma' = sigma^a` of `G`, or a different primitive root mod `q`.

use crate::arith;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElt;
use crate::mwshape::{shape_from_ranks, PermShape, RankVector};
use crate::numeric::BigComplex;
use crate::problem::{ComplexEntry, Normalization, ProblemFile};
use crate::regulator::delta_psi;

fn shape_of(file: &ProblemFile) -> Result<PermShape> {
    let group = file.group()?;
    match (&file.arithmetic.shape, &file.arithmetic.ranks) {
        (Some(m), _) => PermShape::new(group, m.clone()),
        (None, Some(r)) => shape_from_ranks(group, &RankVector(r.clone())),
        (None, None) => Err(Error::MissingData("ranks or shape".into())),
    }
}

/// Rewrites `file` in terms of the generator `sigma' = sigma^a`.
///
/// The character `psi_j` becomes `psi_{ja}`; height and Frobenius exponents are
/// multiplied by `a^-1`; `Phi` is rewritten in the new generator. When `q` is
/// known, the primitive root becomes `g^a'` for a lift `a'` of `a` prime to `q - 1`.
pub fn change_generator(file: &ProblemFile, a: u64) -> Result<ProblemFile> {
    let g = file.header.q.map(|q| {
        let root = file.header.primitive_root.or_else(|| arith::smallest_primitive_root(q)).expect("prime q");
        (q, root)
    });
    let new_root = match g {
        Some((q, root)) => Some(arith::mod_pow(root, lift_prime_to(a, file.group()?.order(), q - 1)?, q)),
        None => None,
    };
    relabel(file, a, new_root)
}

/// Rewrites `file` for the primitive root `new_root` mod `q`; equivalent to a
/// generator change by the discrete logarithm of `new_root` to the old base.
pub fn change_primitive_root(file: &ProblemFile, new_root: u64) -> Result<ProblemFile> {
    let q = file.header.q.ok_or_else(|| Error::MissingData("q".into()))?;
    if !arith::is_primitive_root(new_root, q) {
        return Err(Error::Inconsistent(format!("{new_root} is not a primitive root mod {q}")));
    }
    let old = file.header.primitive_root.or_else(|| arith::smallest_primitive_root(q)).expect("prime q");
    let b = (0..q - 1).find(|&e| arith::mod_pow(old, e, q) == new_root % q).expect("primitive root");
    let order = file.group()?.order();
    relabel(file, b % order, Some(new_root))
}

/// Smallest `a' = a mod order` with `gcd(a', m) = 1`.
fn lift_prime_to(a: u64, order: u64, m: u64) -> Result<u64> {
    let a = a % order;
    (0..m.max(1))
        .map(|k| a + k * order)
        .find(|&x| arith::gcd(x as i64, m as i64) == 1)
        .ok_or(Error::NotCoprime { s: a as i64, m })
}

fn relabel(file: &ProblemFile, a: u64, new_root: Option<u64>) -> Result<ProblemFile> {
    let group = file.group()?;
    let order = group.order();
    if arith::gcd((a % order) as i64, order as i64) != 1 {
        return Err(Error::NotCoprime { s: a as i64, m: order });
    }
    let a_inv = arith::mod_inverse(a as i64, order).expect("coprime");
    let shape = shape_of(file)?;
    let prec = file.precision();
    let digits = file.header.digits as usize + 10;
    let new_j = |j: u64| j * a % order;
    let mut out = file.clone();
    out.header.primitive_root = new_root.or(file.header.primitive_root);

    let mut values = Vec::with_capacity(file.analytic.values.len());
    for e in &file.analytic.values {
        let j2 = new_j(e.j);
        let entry = if file.analytic.normalization == Normalization::QuotientOverDelta {
            // the stored value is divided by delta, which depends on the generator
            let v = BigComplex::parse_decimal(&e.re, &e.im, prec)?;
            let old = delta_psi(&shape, &group.character(e.j)).embed(1, prec)?;
            let new = delta_psi(&shape, &group.character(j2)).embed(1, prec)?;
            let w = &(&v * &old) / &new;
            ComplexEntry { j: j2, re: w.re.to_decimal(digits), im: w.im.to_decimal(digits) }
        } else {
            ComplexEntry { j: j2, ..e.clone() }
        };
        values.push(entry);
    }
    out.analytic.values = values;
    for e in out.analytic.leading_terms.iter_mut() {
        e.j = new_j(e.j);
    }
    for e in out.analytic.tau_star.iter_mut() {
        e.j = new_j(e.j);
    }
    if let Some(orders) = &file.analytic.orders {
        let mut o = vec![0; orders.len()];
        for (j, &r) in orders.iter().enumerate() {
            o[new_j(j as u64) as usize] = r;
        }
        out.analytic.orders = Some(o);
    }
    let p = group.p();
    for h in out.arithmetic.heights.iter_mut() {
        let m = p.pow(h.row.0);
        h.tau = h.tau * (a_inv % m.max(1)) % m.max(1);
    }
    if let Some(phi) = &file.arithmetic.phi {
        let mut rows = Vec::with_capacity(phi.len());
        for row in phi {
            let mut new_row = Vec::with_capacity(row.len());
            for coeffs in row {
                let x = GroupRingElt::from_ints(group, coeffs)?.substitute_generator(a_inv)?;
                let ints = x
                    .coeffs()
                    .iter()
                    .map(|c| c.to_integer().try_into().map_err(|_| Error::Inconsistent("Phi coefficient too large".into())))
                    .collect::<Result<Vec<i64>>>()?;
                new_row.push(ints);
            }
            rows.push(new_row);
        }
        out.arithmetic.phi = Some(rows);
    }
    if let Some(fb) = out.field.as_mut() {
        for v in fb.ramified.iter_mut() {
            v.frobenius = (v.frobenius.rem_euclid(order as i64) as u64 * a_inv % order) as i64;
        }
    }
    out.normalize();
    out.validate()?;
    Ok(out)
}
