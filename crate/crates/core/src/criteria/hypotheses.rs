use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::gauss::AbelianFieldSetup;
use crate::report::{CheckResult, Status};

pub const CHECK_HYPOTHESES: &str = "hypotheses";

/// Arithmetic metadata of `A/k` used by the hypothesis checklist.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveMetadata {
    pub label: String,
    #[serde(default = "one")]
    pub dimension: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u64>,
    /// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ainvs: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_torsion_order: Option<u64>,
    /// Tamagawa number per bad prime.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tamagawa: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bad_primes: Option<Vec<u64>>,
    /// `|A(kappa_v)|` per place label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub residue_point_counts: BTreeMap<String, u64>,
}

fn one() -> u32 {
    1
}

impl CurveMetadata {
    /// Bad primes, from the explicit list or by factoring the conductor.
    pub fn bad_prime_set(&self) -> Option<Vec<u64>> {
        self.bad_primes
            .clone()
            .or_else(|| self.conductor.map(|n| arith::factorize(n).into_iter().map(|(q, _)| q).collect()))
    }

    /// `|A(kappa_v)|` at a place of residue characteristic `ell`, from the table or
    /// by counting points on the Weierstrass model.
    pub fn residue_count(&self, label: &str, ell: u64) -> Option<u64> {
        if let Some(&c) = self.residue_point_counts.get(label) {
            return Some(c);
        }
        match &self.ainvs {
            Some(a) if self.dimension == 1 && arith::is_prime(ell) => Some(count_points(a, ell)),
            _ => None,
        }
    }
}

/// `|E(F_ell)|` for `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, by direct count.
pub fn count_points(ainvs: &[i64], ell: u64) -> u64 {
    let l = ell as i64;
    let a: Vec<i64> = (0..5).map(|i| ainvs.get(i).copied().unwrap_or(0).rem_euclid(l)).collect();
    let (a1, a2, a3, a4, a6) = (a[0], a[1], a[2], a[3], a[4]);
    let m = |x: i64| x.rem_euclid(l);
    let mut count = 1u64;
    for x in 0..l {
        let rhs = m(m(m(m(x * x) * x) + m(a2 * m(x * x))) + m(a4 * x) + a6);
        let b = m(a1 * x + a3);
        if ell == 2 {
            count += (0..l).filter(|&y| m(y * y + b * y) == rhs).count() as u64;
        } else {
            // y^2 + b y - rhs = 0 has 1 + (disc / ell) roots
            let disc = m(b * b + 4 * rhs) as u64;
            count += match disc {
                0 => 1,
                d if arith::mod_pow(d, (ell - 1) / 2, ell) == 1 => 2,
                _ => 0,
            };
        }
    }
    count
}

/// The hypothesis checklist (a)-(f), with (g) and (h) echoed from user assertions.
pub fn hypotheses_check(
    meta: Option<&CurveMetadata>,
    setup: &AbelianFieldSetup,
    hypothesis_g: Option<bool>,
    hypothesis_h: Option<bool>,
) -> CheckResult {
    let p = setup.group.p();
    let Some(meta) = meta else {
        return CheckResult::skipped(CHECK_HYPOTHESES, "no curve metadata supplied");
    };
    let mut items: Vec<(&str, Option<bool>, String)> = Vec::new();

    let tors = meta.torsion_order.map(|t| (t, meta.dual_torsion_order.unwrap_or(t)));
    items.push(match tors {
        Some((t, td)) => ("a", Some((t * td) % p != 0), format!("torsion orders {t}, {td}")),
        None => ("a", None, "torsion order missing".into()),
    });

    let bad = meta.bad_prime_set();
    let tam = match &bad {
        Some(bad) if bad.iter().all(|q| meta.tamagawa.contains_key(&q.to_string())) => {
            let prod: u64 = meta.tamagawa.values().product();
            (Some(prod % p != 0), format!("prod c_v = {prod}"))
        }
        _ => (None, "Tamagawa numbers missing".into()),
    };
    items.push(("b", tam.0, tam.1));

    items.push(match &bad {
        Some(bad) => ("c", Some(!bad.contains(&p)), format!("bad primes {bad:?}")),
        None => ("c", None, "conductor missing".into()),
    });

    let ramified: Vec<u64> = setup.ramified.iter().map(|v| v.norm).collect();
    items.push(("d", Some(ramified.iter().all(|&nv| nv % p != 0)), format!("ramified residue norms {ramified:?}")));

    items.push(match &bad {
        Some(bad) => {
            let clash: Vec<_> = ramified.iter().filter(|&&nv| bad.iter().any(|&q| nv % q == 0)).collect();
            ("e", Some(clash.is_empty()), format!("bad and ramified overlap {clash:?}"))
        }
        None => ("e", None, "bad primes missing".into()),
    });

    let mut counts = Vec::new();
    let mut missing = false;
    for v in &setup.ramified {
        match meta.residue_count(&v.label, v.norm) {
            Some(c) => counts.push((v.label.clone(), c)),
            None => missing = true,
        }
    }
    items.push(if missing {
        ("f", None, "residue point counts missing".into())
    } else {
        let ok = counts.iter().all(|(_, c)| c % p != 0);
        let text = counts.iter().map(|(l, c)| format!("|A(k_{l})| = {c}")).collect::<Vec<_>>().join(", ");
        ("f", Some(ok), text)
    });

    let mut res = CheckResult::pass(CHECK_HYPOTHESES, "");
    let mut failed = Vec::new();
    let mut unknown = Vec::new();
    for (name, ok, text) in items {
        let tag = match ok {
            Some(true) => "pass",
            Some(false) => {
                failed.push(name);
                "fail"
            }
            None => {
                unknown.push(name);
                "missing"
            }
        };
        res = res.with_detail(format!("({name})"), format!("{tag}: {text}"));
    }
    for (name, flag) in [("g", hypothesis_g), ("h", hypothesis_h)] {
        let text = match flag {
            Some(true) => "asserted",
            Some(false) => "asserted false",
            None => "not asserted",
        };
        res = res.with_detail(format!("({name})"), text);
        if flag == Some(false) {
            failed.push(name);
        } else if flag.is_none() {
            res = res.with_warning(format!("hypothesis ({name}) is not asserted"));
        }
    }
    if !failed.is_empty() {
        res.status = Status::Fail;
        res.summary = format!("hypotheses {} fail", failed.join(", "));
    } else if !unknown.is_empty() {
        res.status = Status::Skipped;
        res.summary = format!("metadata missing for {}", unknown.join(", "));
    } else {
        res.summary = "hypotheses (a)-(f) hold".into();
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::RamifiedPlace;
    use crate::groupring::CyclicGroup;

    fn curve_79a1() -> CurveMetadata {
        CurveMetadata {
            label: "79a1".into(),
            dimension: 1,
            conductor: Some(79),
            ainvs: Some(vec![1, 1, 1, -2, 0]),
            torsion_order: Some(1),
            dual_torsion_order: None,
            tamagawa: [("79".to_string(), 1)].into_iter().collect(),
            bad_primes: None,
            residue_point_counts: BTreeMap::new(),
        }
    }

    #[test]
    fn point_counts() {
        let a = [1, 1, 1, -2, 0];
        assert_eq!(count_points(&a, 2), 4);
        assert_eq!(count_points(&a, 3), 5);
        for ell in [5u64, 29, 31] {
            let l = ell as i64;
            let brute = 1 + (0..l)
                .flat_map(|x| (0..l).map(move |y| (x, y)))
                .filter(|&(x, y)| (y * y + x * y + y - x * x * x - x * x + 2 * x).rem_euclid(l) == 0)
                .count() as u64;
            assert_eq!(count_points(&a, ell), brute);
        }
    }

    #[test]
    fn checklist_79a1() {
        let g = CyclicGroup::new(7, 1).unwrap();
        let setup = AbelianFieldSetup::rational(g, 29, None, 1).unwrap();
        let res = hypotheses_check(Some(&curve_79a1()), &setup, Some(true), Some(true));
        assert_eq!(res.status, Status::Pass, "{res:?}");
    }

    #[test]
    fn tamagawa_divisible_by_p() {
        let g = CyclicGroup::new(7, 1).unwrap();
        let setup = AbelianFieldSetup::rational(g, 29, None, 1).unwrap();
        let mut c = curve_79a1();
        c.tamagawa.insert("79".into(), 14);
        let res = hypotheses_check(Some(&c), &setup, Some(true), Some(true));
        assert_eq!(res.status, Status::Fail);
        assert!(res.detail("(b)").unwrap().starts_with("fail"));
    }

    #[test]
    fn ramified_at_p() {
        let g = CyclicGroup::new(7, 1).unwrap();
        let mut setup = AbelianFieldSetup::rational(g, 29, None, 1).unwrap();
        setup.ramified = vec![RamifiedPlace { label: "7".into(), norm: 7, inertia_level: 0, frobenius: 0 }];
        let res = hypotheses_check(Some(&curve_79a1()), &setup, Some(true), Some(true));
        assert!(res.detail("(d)").unwrap().starts_with("fail"));
    }
}
