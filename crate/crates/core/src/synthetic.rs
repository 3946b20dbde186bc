//! Internally consistent problem files for testing the whole pipeline:
//! heights from a `G`-invariant lattice, leading terms chosen so that
//! `L*_psi / lambda_psi = psi(u) delta_psi` for a chosen group-ring element `u`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gauss::{archimedean_constant, tau_star, AbelianFieldSetup};
use crate::groupring::{char_eval, CyclicGroup, GroupRingElt};
use crate::mwshape::{ranks_from_shape, PermShape};
use crate::numeric::{bits_for_digits, BigComplex, Real};
use crate::problem::{
    AnalyticBlock, ArithmeticBlock, HeightEntry, Header, LeadingEntry, Normalization, ProblemFile, FORMAT_VERSION,
};
use crate::regulator::{build_regulator, delta_psi, lambda_psi, table_from_exact, SyntheticLattice};

/// Parameters of a synthetic problem.
#[derive(Clone, Debug)]
pub struct SyntheticSpec {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub shape: Vec<u64>,
    /// Coefficients of `u`; a unit of `Z_p[G]` makes every criterion hold.
    pub unit: Vec<i64>,
    pub seed: u64,
    pub omega: String,
    pub digits: u32,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            p: 3,
            n: 2,
            q: 19,
            shape: vec![1, 1, 0],
            unit: vec![1, 1, 0, 0, -1, 0, 0, 0, 0],
            seed: 7,
            omega: "1.7320508075688772935274463415058723669428".into(),
            digits: 40,
        }
    }
}

/// Builds the problem file described by `spec`, with raw leading terms.
pub fn synthesize(spec: &SyntheticSpec) -> Result<ProblemFile> {
    let group = CyclicGroup::new(spec.p, spec.n)?;
    let shape = PermShape::new(group, spec.shape.clone())?;
    let setup = AbelianFieldSetup::rational(group, spec.q, None, 1)?;
    let prec = bits_for_digits(spec.digits) + 96;
    let digits = spec.digits as usize;

    let dim: usize = shape.indices().iter().map(|&(t, _)| group.quotient_order(t) as usize).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let lattice = SyntheticLattice::from_matrix(&shape, &a)?;
    let exact = lattice.standard_heights();
    let heights: Vec<HeightEntry> = exact
        .iter()
        .map(|(k, v)| HeightEntry {
            row: k.row,
            tau: k.tau,
            col: k.col,
            value: Real::from_rational(v, prec).to_decimal(digits),
        })
        .collect();
    let reg = build_regulator(&table_from_exact(&shape, &exact, prec), prec)?;

    let u = GroupRingElt::from_ints(group, &spec.unit)?;
    let omega = Real::parse_decimal(&spec.omega, prec)?;
    let w = archimedean_constant(&setup, prec);
    let mut leading_terms = Vec::with_capacity(group.order() as usize);
    for psi in group.characters() {
        let alpha = &char_eval(&u, &psi)? * &delta_psi(&shape, &psi);
        let lstar = &alpha.embed(1, prec)? * &lambda_psi(&reg, &psi);
        let ts = tau_star(&psi, &setup, prec)?.numeric;
        let value: BigComplex = &(&lstar * &w).scale(&omega) / &ts;
        let order: u64 = (psi.level()..=group.n()).map(|t| shape.m(t)).sum();
        leading_terms.push(LeadingEntry {
            j: psi.index(),
            re: value.re.to_decimal(digits),
            im: value.im.to_decimal(digits),
            order,
            truncated: true,
        });
    }

    Ok(ProblemFile {
        header: Header {
            format: FORMAT_VERSION.into(),
            p: spec.p,
            n: spec.n,
            q: Some(spec.q),
            primitive_root: setup.primitive_root,
            digits: spec.digits,
            precision_bits: None,
            sha_p_trivial: Some(true),
            hypothesis_g: Some(true),
            hypothesis_h: Some(true),
            labeling: "psi_j(sigma) = exp(2 pi i j / p^n); sigma is the image of the primitive root mod q".into(),
            description: Some(format!(
                "synthetic: shape {shape}, u = {u}, lattice seed {}, ranks {:?}",
                spec.seed,
                ranks_from_shape(&shape).0
            )),
        },
        curve: None,
        field: None,
        analytic: AnalyticBlock {
            normalization: Normalization::LeadingTerms,
            values: Vec::new(),
            omega: Some(spec.omega.clone()),
            leading_terms,
            orders: None,
            tau_star: Vec::new(),
            fields: Vec::new(),
        },
        arithmetic: ArithmeticBlock { ranks: None, shape: Some(spec.shape.clone()), heights, phi: None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{run_all, RunConfig};
    use crate::report::Status;

    #[test]
    fn synthetic_unit_passes_everything() {
        let file = synthesize(&SyntheticSpec::default()).unwrap();
        let text = file.to_toml_string();
        let back = ProblemFile::from_toml_str(&text).unwrap();
        let report = run_all(&back, &RunConfig::default()).unwrap();
        for c in &report.checks {
            assert!(matches!(c.status, Status::Pass | Status::Skipped), "{report}");
        }
        assert_eq!(report.status("zpg"), Some(Status::Pass));
        assert_eq!(report.status("exact_order"), Some(Status::Pass));
    }

    #[test]
    fn synthetic_non_unit_fails_integral_criterion() {
        let spec = SyntheticSpec { unit: vec![2, 1, 0, 0, 0, 0, 0, 0, 0], ..SyntheticSpec::default() };
        let report = run_all(&synthesize(&spec).unwrap(), &RunConfig::default()).unwrap();
        assert_eq!(report.status("rationality"), Some(Status::Pass));
        assert_eq!(report.status("zpg"), Some(Status::Fail), "{report}");
    }
}
