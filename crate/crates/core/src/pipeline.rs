//! `run_all`: hypotheses, shape, regulator, rationality, maximal order,
//! integral criterion, Mazur-Tate element and its congruences, BSD_p.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::arith;
use crate::criteria::{
    bsd_p_check, corollary1_suite, default_tol_exponent, hypotheses_check, max_order_check, mazur_tate_element,
    normalized_leading_terms, rationality_check, zpg_check, Corollary1Input, Recognition, RecognitionConfig,
    CHECK_BSD, CHECK_EXACT_ORDER, CHECK_HYPOTHESES, CHECK_MAX, CHECK_MAZUR_TATE, CHECK_RATIONALITY,
    CHECK_ZPG,
};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groupring::{CyclicGroup, GroupRingElt};
use crate::mwshape::{ranks_from_orders, ranks_from_shape, shape_from_ranks, PermShape, RankVector};
use crate::numeric::{BigComplex, Real};
use crate::problem::{Normalization, ProblemFile};
use crate::regulator::{build_regulator, delta_psi, lambda_psi_checked, HeightTable, PhiMatrix};
use crate::report::{CheckResult, Status, VerificationReport};

pub const CHECK_SHAPE: &str = "shape";
pub const CHECK_REGULATOR: &str = "regulator";

/// Groups of checks selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckGroup {
    Rat,
    Max,
    Zpg,
    Cor1,
    Bsd,
    All,
}

impl std::str::FromStr for CheckGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rat" => CheckGroup::Rat,
            "max" => CheckGroup::Max,
            "zpg" => CheckGroup::Zpg,
            "cor1" => CheckGroup::Cor1,
            "bsd" => CheckGroup::Bsd,
            "all" => CheckGroup::All,
            other => return Err(Error::Parse(format!("unknown check group {other:?}"))),
        })
    }
}

/// Run options; `None` fields fall back to the problem header or the defaults.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Empty means all checks.
    pub checks: BTreeSet<CheckGroup>,
    pub tol_exponent: Option<u32>,
    pub denom_bound: Option<BigInt>,
    pub precision_bits: Option<usize>,
    /// Simulates the embedding `zeta -> zeta^s` of the coefficient field.
    pub embedding_twist: Option<u64>,
}

impl RunConfig {
    fn wants(&self, g: CheckGroup) -> bool {
        self.checks.is_empty() || self.checks.contains(&CheckGroup::All) || self.checks.contains(&g)
    }
}

/// Everything computed along the way, for callers that need more than verdicts.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub report: VerificationReport,
    pub shape: Option<PermShape>,
    /// Numerical `L*_psi / lambda_psi` (or the values as supplied) indexed by `j`.
    pub quotients: Option<Vec<BigComplex>>,
    pub recognition: Option<Recognition>,
    /// Exact `L*_psi / lambda_psi` indexed by `j`.
    pub alphas: Option<Vec<CycNum>>,
    pub mazur_tate: Option<GroupRingElt>,
}

/// Runs every selected check; errors are reserved for malformed input.
pub fn run_all(file: &ProblemFile, config: &RunConfig) -> Result<VerificationReport> {
    run_detailed(file, config).map(|o| o.report)
}

/// Like [`run_all`], keeping intermediate results. A failed hypothesis does not
/// block the numerical criteria; their results carry a warning instead.
pub fn run_detailed(file: &ProblemFile, config: &RunConfig) -> Result<PipelineOutput> {
    let mut out = run_checks(file, config)?;
    if out.report.status(CHECK_HYPOTHESES) == Some(Status::Fail) {
        for c in out.report.checks.iter_mut().skip(1) {
            c.warnings.push("hypotheses fail; this is a numerical statement only".into());
        }
    }
    Ok(out)
}

fn run_checks(file: &ProblemFile, config: &RunConfig) -> Result<PipelineOutput> {
    file.validate()?;
    let group = file.group()?;
    let prec = config.precision_bits.unwrap_or_else(|| file.precision());
    let tol_exp = config.tol_exponent.unwrap_or_else(|| default_tol_exponent(file.header.digits));
    let bound = config.denom_bound.clone().unwrap_or_else(|| BigInt::from(1_000_000));
    let cfg = RecognitionConfig::new(tol_exp, bound, prec);
    let setup = file.setup()?;

    let mut report = VerificationReport::new(report_label(file));
    let h = &file.header;
    report.settings.push(("group".into(), format!("cyclic of order {}^{}", h.p, h.n)));
    if let Some(q) = h.q {
        report.settings.push(("q".into(), q.to_string()));
    }
    if let Some(g) = setup.as_ref().and_then(|s| s.primitive_root) {
        report.settings.push(("primitive root".into(), g.to_string()));
    }
    report.settings.push(("labeling".into(), h.labeling.clone()));
    report.settings.push(("normalization".into(), format!("{:?}", file.analytic.normalization)));
    report.settings.push(("declared digits".into(), h.digits.to_string()));
    report.settings.push(("tolerance".into(), format!("1e-{tol_exp}")));
    report.settings.push(("denominator bound".into(), cfg.denom_bound.to_string()));
    report.settings.push(("precision bits".into(), prec.to_string()));
    if let Some(s) = config.embedding_twist {
        report.settings.push(("embedding twist".into(), s.to_string()));
    }

    let mut out =
        PipelineOutput { report, shape: None, quotients: None, recognition: None, alphas: None, mazur_tate: None };
    let downstream = downstream_names(config);

    // hypotheses
    let hyp = match &setup {
        Some(s) => hypotheses_check(file.curve.as_ref(), s, h.hypothesis_g, h.hypothesis_h),
        None => CheckResult::skipped(CHECK_HYPOTHESES, "no field data to check ramification"),
    };
    out.report.checks.push(hyp);

    // shape
    let (shape_res, shape) = shape_check(file, group);
    out.report.checks.push(shape_res);
    let Some(shape) = shape else {
        block(&mut out.report, &[CHECK_REGULATOR, CHECK_RATIONALITY], CHECK_SHAPE);
        block(&mut out.report, &downstream, CHECK_SHAPE);
        return Ok(out);
    };
    out.shape = Some(shape.clone());

    // regulator
    let (reg_res, lambdas) = regulator_check(file, &shape, &cfg)?;
    let reg_failed = reg_res.status == Status::Fail;
    out.report.checks.push(reg_res);
    if reg_failed {
        block(&mut out.report, &[CHECK_RATIONALITY], CHECK_REGULATOR);
        block(&mut out.report, &downstream, CHECK_REGULATOR);
        return Ok(out);
    }

    // rationality
    let raw = match file.analytic.normalization {
        Normalization::Quotient | Normalization::QuotientOverDelta => file.values(prec)?,
        Normalization::LeadingTerms => {
            let setup = setup.as_ref().ok_or_else(|| Error::schema("header.q", "field data required"))?;
            let data = file.leading_data(prec)?;
            let lstar = match normalized_leading_terms(&data, setup, prec) {
                Ok(v) => v,
                Err(e) => {
                    out.report.checks.push(CheckResult::fail(CHECK_RATIONALITY, format!("cannot normalise: {e}")));
                    block(&mut out.report, &downstream, CHECK_RATIONALITY);
                    return Ok(out);
                }
            };
            let lambdas = lambdas.as_ref().expect("heights are required for raw leading terms");
            lstar.iter().zip(lambdas).map(|(l, lam)| l / lam).collect()
        }
    };
    let raw = match config.embedding_twist {
        Some(s) => relabel(&raw, group, s)?,
        None => raw,
    };
    let (mut rat_res, rec) = rationality_check(group, &raw, &cfg)?;
    let rec = match config.embedding_twist {
        Some(s) => twist_recognition(&rec, s as i64)?,
        None => rec,
    };
    let alphas = match file.analytic.normalization {
        Normalization::QuotientOverDelta => {
            let deltas: Vec<CycNum> = group.characters().map(|psi| delta_psi(&shape, &psi)).collect();
            rec.scaled_by(&deltas).values
        }
        _ => rec.values.clone(),
    };
    for psi in group.characters() {
        rat_res = rat_res.with_detail(format!("alpha at {psi}"), &alphas[psi.index() as usize]);
    }
    let rat_status = rat_res.status;
    out.report.checks.push(rat_res);
    let quotients = match file.analytic.normalization {
        Normalization::QuotientOverDelta => raw
            .iter()
            .zip(group.characters())
            .map(|(v, psi)| Ok(v * &delta_psi(&shape, &psi).embed(1, prec)?))
            .collect::<Result<Vec<_>>>()?,
        _ => raw,
    };
    out.quotients = Some(quotients.clone());
    out.recognition = Some(rec);
    match rat_status {
        Status::Pass => {}
        Status::Inconclusive => {
            for name in &downstream {
                out.report
                    .checks
                    .push(CheckResult::skipped(*name, format!("not run: {CHECK_RATIONALITY} is inconclusive")));
            }
            return Ok(out);
        }
        _ => {
            block(&mut out.report, &downstream, CHECK_RATIONALITY);
            return Ok(out);
        }
    }
    out.alphas = Some(alphas.clone());

    let sha_gate = match h.sha_p_trivial {
        Some(true) => None,
        Some(false) => Some("Sha_p is flagged nontrivial"),
        None => Some("Sha_p triviality is not asserted"),
    };
    let phi = match file.phi_entries()? {
        Some(entries) => PhiMatrix::new(&shape, entries).map_err(|e| Error::schema("arithmetic.phi", e.to_string())),
        None => Ok(PhiMatrix::identity(&shape)),
    }?;

    let mut max_status = None;
    if config.wants(CheckGroup::Max) {
        let res = gate(max_order_check(&alphas, &shape), sha_gate);
        max_status = Some(res.status);
        out.report.checks.push(res);
    }
    if config.wants(CheckGroup::Zpg) {
        let mut res = gate(zpg_check(&alphas, &shape, &phi), sha_gate);
        if res.status == Status::Pass && max_status.is_some_and(|s| s != Status::Pass) {
            res = res.with_warning("monotonicity violated: integral criterion holds but the maximal-order one does not");
        }
        out.report.checks.push(res);
    }
    if config.wants(CheckGroup::Cor1) {
        match mazur_tate_element(&alphas, &shape) {
            Ok(l) => {
                let mut res = CheckResult::pass(CHECK_MAZUR_TATE, format!("L = {l}"))
                    .with_detail("h", shape.h())
                    .with_detail("projective", shape.is_projective());
                if let Some(t0) = shape.t0() {
                    res = res.with_detail("t0", t0);
                }
                out.report.checks.push(res);
                let v = alphas[0].as_rational().expect("trivial character value is rational");
                let input = Corollary1Input {
                    element: &l,
                    shape: &shape,
                    phi: &phi,
                    v,
                    v_numeric: Some(quotients[0].clone()),
                    sha_trivial: h.sha_p_trivial,
                    tol: cfg.loose_tol(),
                };
                out.report.checks.extend(corollary1_suite(&input));
                out.mazur_tate = Some(l);
            }
            Err(e) => {
                out.report.checks.push(CheckResult::fail(CHECK_MAZUR_TATE, e.to_string()));
                block(&mut out.report, &cor1_names(), CHECK_MAZUR_TATE);
            }
        }
    }
    if config.wants(CheckGroup::Bsd) {
        let fields = file.bsd_fields(prec)?;
        let res = bsd_p_check(&fields, group.p(), &cfg);
        let res = if fields.is_empty() { res } else { gate(res, sha_gate) };
        out.report.checks.push(res);
    }
    Ok(out)
}

fn report_label(file: &ProblemFile) -> String {
    let base = file.curve.as_ref().map(|c| c.label.clone()).unwrap_or_else(|| "problem".into());
    let order = file.header.p.pow(file.header.n);
    match file.header.q {
        Some(q) => format!("{base}_q{q}_p{order}"),
        None => format!("{base}_p{order}"),
    }
}

fn cor1_names() -> Vec<&'static str> {
    vec!["cor1.i", "cor1.ii", "cor1.iii", "cor1.iv", CHECK_EXACT_ORDER]
}

fn downstream_names(config: &RunConfig) -> Vec<&'static str> {
    let mut names = Vec::new();
    if config.wants(CheckGroup::Max) {
        names.push(CHECK_MAX);
    }
    if config.wants(CheckGroup::Zpg) {
        names.push(CHECK_ZPG);
    }
    if config.wants(CheckGroup::Cor1) {
        names.push(CHECK_MAZUR_TATE);
        names.extend(cor1_names());
    }
    if config.wants(CheckGroup::Bsd) {
        names.push(CHECK_BSD);
    }
    names
}

fn block(report: &mut VerificationReport, names: &[&str], upstream: &str) {
    for name in names {
        report.checks.push(CheckResult::blocked(*name, upstream));
    }
}

/// Checks whose statement assumes `Sha_p = 0` are reported as skipped, keeping the
/// computed outcome as a detail.
fn gate(res: CheckResult, note: Option<&str>) -> CheckResult {
    match note {
        None => res,
        Some(note) => {
            let observed = res.status;
            let mut out = CheckResult::skipped(res.name.clone(), format!("{note}; statement assumes Sha_p = 0"))
                .with_detail("observed", format!("{} ({})", observed, res.summary));
            out.details.extend(res.details);
            out
        }
    }
}

fn shape_check(file: &ProblemFile, group: CyclicGroup) -> (CheckResult, Option<PermShape>) {
    let shape = match (&file.arithmetic.shape, &file.arithmetic.ranks) {
        (Some(m), _) => PermShape::new(group, m.clone()),
        (None, Some(r)) => shape_from_ranks(group, &RankVector(r.clone())),
        (None, None) => Err(Error::MissingData("ranks or shape".into())),
    };
    match shape {
        Ok(shape) => {
            let ranks = ranks_from_shape(&shape);
            let mut res = CheckResult::pass(CHECK_SHAPE, format!("shape {shape}"))
                .with_detail("ranks", format!("{:?}", ranks.0))
                .with_detail("h", shape.h());
            if let Some(t0) = shape.t0() {
                res = res.with_detail("t0", t0);
            }
            if let Some(orders) = file.orders() {
                match ranks_from_orders(group, &orders) {
                    Ok(pred) if pred != ranks => {
                        res = res.with_warning(format!(
                            "orders of vanishing predict ranks {:?}, the arithmetic block has {:?}",
                            pred.0, ranks.0
                        ));
                    }
                    Ok(_) => res = res.with_detail("orders of vanishing", "consistent with the ranks"),
                    Err(e) => res = res.with_warning(e.to_string()),
                }
            }
            (res, Some(shape))
        }
        Err(e) => (CheckResult::fail(CHECK_SHAPE, e.to_string()), None),
    }
}

fn regulator_check(
    file: &ProblemFile,
    shape: &PermShape,
    cfg: &RecognitionConfig,
) -> Result<(CheckResult, Option<Vec<BigComplex>>)> {
    if file.arithmetic.heights.is_empty() {
        return Ok((CheckResult::skipped(CHECK_REGULATOR, "no height table; values already include the regulator"), None));
    }
    let prec = cfg.prec;
    let mut table = HeightTable::new(shape.clone());
    for h in &file.arithmetic.heights {
        table.insert(h.row, h.tau, h.col, Real::parse_decimal(&h.value, prec)?);
    }
    let reg = match build_regulator(&table, prec) {
        Ok(r) => r,
        Err(e) => return Ok((CheckResult::fail(CHECK_REGULATOR, e.to_string()), None)),
    };
    let mut lambdas = Vec::new();
    let mut res = CheckResult::pass(CHECK_REGULATOR, format!("{}x{} regulator matrix", reg.size(), reg.size()));
    for psi in shape.group().characters() {
        match lambda_psi_checked(&reg, &psi, &cfg.tol) {
            Ok(l) => {
                res = res.with_detail(format!("lambda at {psi}"), l.to_decimal(12));
                lambdas.push(l);
            }
            Err(e) => return Ok((CheckResult::fail(CHECK_REGULATOR, e.to_string()), None)),
        }
    }
    Ok((res, Some(lambdas)))
}

/// `out[j] = values[j s^-1]`: the same complex data read through the embedding twisted by `s`.
fn relabel(values: &[BigComplex], group: CyclicGroup, s: u64) -> Result<Vec<BigComplex>> {
    let order = group.order();
    let inv = arith::mod_inverse(s as i64, order).ok_or(Error::NotCoprime { s: s as i64, m: order })?;
    Ok((0..order).map(|j| values[(j * inv % order) as usize].clone()).collect())
}

fn twist_recognition(rec: &Recognition, s: i64) -> Result<Recognition> {
    let mut out = rec.clone();
    out.values = rec.values.iter().map(|v| v.galois_apply(s)).collect::<Result<_>>()?;
    for o in out.orbits.iter_mut() {
        o.element = o.element.galois_apply(s)?;
    }
    Ok(out)
}
