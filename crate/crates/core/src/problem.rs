//! The problem-file format: a TOML document with `header`, `curve`, `field`,
//! `analytic` and `arithmetic` blocks. Decimals are strings so fixtures keep
//! the published digits verbatim.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::criteria::{BsdFieldData, CurveMetadata, LeadingTermData};
use crate::error::{Error, Result};
use crate::gauss::{AbelianFieldSetup, RamifiedPlace};
use crate::groupring::{CyclicGroup, GroupRingElt};
use crate::numeric::{bits_for_digits, BigComplex, Real, DEFAULT_PRECISION};

pub const FORMAT_VERSION: &str = "etnc-problem/1";

const DEFAULT_LABELING: &str = "psi_j(sigma) = exp(2 pi i j / p^n); sigma is the image of the primitive root mod q";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub header: Header,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveMetadata>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldBlock>,
    pub analytic: AnalyticBlock,
    pub arithmetic: ArithmeticBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    #[serde(default = "format_version")]
    pub format: String,
    pub p: u64,
    pub n: u32,
    /// Conductor of `F` when `k = Q` and `F` lies in `Q(zeta_q)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    /// Primitive root mod `q` identified with `sigma`; defaults to the smallest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_root: Option<u64>,
    /// Significant digits of the decimal data.
    pub digits: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha_p_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_g: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis_h: Option<bool>,
    #[serde(default = "default_labeling")]
    pub labeling: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

fn format_version() -> String {
    FORMAT_VERSION.to_string()
}

fn default_labeling() -> String {
    DEFAULT_LABELING.to_string()
}

/// Explicit data for the base field and ramification, overriding the defaults
/// derived from `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    #[serde(default = "one")]
    pub real_places: u32,
    #[serde(default)]
    pub complex_places: u32,
    #[serde(default = "one_i64")]
    pub discriminant: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ramified: Vec<RamifiedEntry>,
}

fn one() -> u32 {
    1
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamifiedEntry {
    pub label: String,
    pub norm: u64,
    #[serde(default)]
    pub inertia_level: u32,
    #[serde(default)]
    pub frobenius: i64,
}

/// What the `values` of the analytic block contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `L*_psi / lambda_psi`.
    Quotient,
    /// `L*_psi / (lambda_psi delta_psi)`.
    QuotientOverDelta,
    /// Raw leading terms; the pipeline normalises them and divides by the regulator minors.
    LeadingTerms,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticBlock {
    pub normalization: Normalization,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<ComplexEntry>,
    /// Period `Omega(A/k)`, required for raw leading terms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leading_terms: Vec<LeadingEntry>,
    /// Orders of vanishing indexed by `j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau_star: Vec<ComplexEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<BsdFieldEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexEntry {
    pub j: u64,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeadingEntry {
    pub j: u64,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
    #[serde(default)]
    pub order: u64,
    /// True when the Euler factors at ramified places are already removed.
    #[serde(default = "yes")]
    pub truncated: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BsdFieldEntry {
    pub label: String,
    pub leading_term: String,
    pub discriminant_abs: u64,
    pub regulator: String,
    pub periods: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArithmeticBlock {
    /// `r_t = rk A(F^{H_t})` for `t = 0..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<u64>>,
    /// Multiplicities `m_0..m_n`, as an alternative to `ranks`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub heights: Vec<HeightEntry>,
    /// `phi[r][c]` lists the coefficients of `sigma^0, sigma^1, ...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightEntry {
    pub row: (u32, usize),
    pub tau: u64,
    pub col: (u32, usize),
    pub value: String,
}

impl ProblemFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::Deserializer::new(text);
        let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::schema(if path == "." { String::new() } else { path }, inner.message().trim().to_string())
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("problem file serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_toml_string())?;
        Ok(())
    }

    /// Sorts per-character entries by `j` and heights by key.
    pub fn normalize(&mut self) {
        self.analytic.values.sort_by_key(|e| e.j);
        self.analytic.leading_terms.sort_by_key(|e| e.j);
        self.analytic.tau_star.sort_by_key(|e| e.j);
        self.arithmetic.heights.sort_by(|a, b| (a.row, a.tau, a.col).cmp(&(b.row, b.tau, b.col)));
    }

    pub fn group(&self) -> Result<CyclicGroup> {
        CyclicGroup::new(self.header.p, self.header.n).map_err(|e| Error::schema("header.p", e.to_string()))
    }

    /// Working precision: the header value, or enough for the declared digits plus guard bits.
    pub fn precision(&self) -> usize {
        self.header.precision_bits.unwrap_or_else(|| DEFAULT_PRECISION.max(bits_for_digits(self.header.digits) + 64))
    }

    /// Structural validation beyond what serde enforces.
    pub fn validate(&self) -> Result<()> {
        if self.header.format != FORMAT_VERSION {
            return Err(Error::schema("header.format", format!("unsupported format {:?}", self.header.format)));
        }
        let group = self.group()?;
        let order = group.order();
        if self.header.digits == 0 {
            return Err(Error::schema("header.digits", "must be positive"));
        }
        if self.header.q.is_none() && self.field.is_none() {
            if self.analytic.normalization == Normalization::LeadingTerms {
                return Err(Error::schema("header.q", "raw leading terms need q or a field block"));
            }
        }
        if let Some(q) = self.header.q {
            AbelianFieldSetup::rational(group, q, self.header.primitive_root, 1)
                .map_err(|e| Error::schema("header.q", e.to_string()))?;
        }
        let prec = self.precision();
        let a = &self.analytic;
        match a.normalization {
            Normalization::Quotient | Normalization::QuotientOverDelta => {
                if a.values.is_empty() {
                    return Err(Error::schema("analytic.values", "no character values supplied"));
                }
                check_entries("analytic.values", a.values.iter().map(|e| (e.j, &e.re, &e.im)), order, prec)?;
            }
            Normalization::LeadingTerms => {
                if a.leading_terms.is_empty() {
                    return Err(Error::schema("analytic.leading_terms", "no leading terms supplied"));
                }
                check_entries(
                    "analytic.leading_terms",
                    a.leading_terms.iter().map(|e| (e.j, &e.re, &e.im)),
                    order,
                    prec,
                )?;
                let omega = a.omega.as_ref().ok_or_else(|| Error::schema("analytic.omega", "period required"))?;
                parse_real("analytic.omega", omega, prec)?;
                if self.arithmetic.heights.is_empty() {
                    return Err(Error::schema("arithmetic.heights", "raw leading terms need a height table"));
                }
            }
        }
        if !a.tau_star.is_empty() {
            check_entries("analytic.tau_star", a.tau_star.iter().map(|e| (e.j, &e.re, &e.im)), order, prec)?;
        }
        if let Some(orders) = &a.orders {
            if orders.len() as u64 != order {
                return Err(Error::schema("analytic.orders", format!("expected {order} entries")));
            }
        }
        for (i, f) in a.fields.iter().enumerate() {
            for (key, v) in [("leading_term", &f.leading_term), ("regulator", &f.regulator), ("periods", &f.periods)] {
                parse_real(&format!("analytic.fields[{i}].{key}"), v, prec)?;
            }
        }
        let ar = &self.arithmetic;
        let expected = group.n() as usize + 1;
        match (&ar.ranks, &ar.shape) {
            (Some(_), Some(_)) => return Err(Error::schema("arithmetic", "give either ranks or shape, not both")),
            (None, None) => return Err(Error::schema("arithmetic", "ranks or shape required")),
            (Some(r), None) if r.len() != expected => {
                return Err(Error::schema("arithmetic.ranks", format!("expected {expected} entries")))
            }
            (None, Some(m)) if m.len() != expected => {
                return Err(Error::schema("arithmetic.shape", format!("expected {expected} entries")))
            }
            _ => {}
        }
        for (i, h) in ar.heights.iter().enumerate() {
            parse_real(&format!("arithmetic.heights[{i}].value"), &h.value, prec)?;
        }
        if let Some(phi) = &ar.phi {
            for (r, row) in phi.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if x.len() as u64 != order {
                        return Err(Error::schema(format!("arithmetic.phi[{r}][{c}]"), format!("expected {order} coefficients")));
                    }
                }
            }
        }
        if let Some(fb) = &self.field {
            for (i, v) in fb.ramified.iter().enumerate() {
                if v.inertia_level > group.n() {
                    return Err(Error::schema(format!("field.ramified[{i}].inertia_level"), "exceeds n"));
                }
            }
        }
        Ok(())
    }

    /// Field setup from `q` and the optional field block.
    pub fn setup(&self) -> Result<Option<AbelianFieldSetup>> {
        let group = self.group()?;
        let dim = self.curve.as_ref().map(|c| c.dimension).unwrap_or(1);
        let mut setup = match self.header.q {
            Some(q) => AbelianFieldSetup::rational(group, q, self.header.primitive_root, dim)?,
            None => match &self.field {
                Some(_) => AbelianFieldSetup {
                    group,
                    conductor: None,
                    primitive_root: None,
                    ramified: Vec::new(),
                    real_places: 1,
                    complex_places: 0,
                    discriminant: 1,
                    dimension: dim,
                },
                None => return Ok(None),
            },
        };
        if let Some(fb) = &self.field {
            setup.real_places = fb.real_places;
            setup.complex_places = fb.complex_places;
            setup.discriminant = fb.discriminant;
            if !fb.ramified.is_empty() {
                setup.ramified = fb
                    .ramified
                    .iter()
                    .map(|v| RamifiedPlace {
                        label: v.label.clone(),
                        norm: v.norm,
                        inertia_level: v.inertia_level,
                        frobenius: v.frobenius,
                    })
                    .collect();
            }
        }
        Ok(Some(setup))
    }

    /// Character values indexed by `j`.
    pub fn values(&self, prec: usize) -> Result<Vec<BigComplex>> {
        let order = self.group()?.order();
        index_entries(self.analytic.values.iter().map(|e| (e.j, &e.re, &e.im)), order, prec)
    }

    pub fn tau_star_values(&self, prec: usize) -> Result<Option<Vec<BigComplex>>> {
        if self.analytic.tau_star.is_empty() {
            return Ok(None);
        }
        let order = self.group()?.order();
        index_entries(self.analytic.tau_star.iter().map(|e| (e.j, &e.re, &e.im)), order, prec).map(Some)
    }

    pub fn leading_data(&self, prec: usize) -> Result<LeadingTermData> {
        let group = self.group()?;
        let order = group.order() as usize;
        let a = &self.analytic;
        let values = index_entries(a.leading_terms.iter().map(|e| (e.j, &e.re, &e.im)), order as u64, prec)?;
        let mut truncated = vec![true; order];
        let mut orders = vec![0; order];
        for e in &a.leading_terms {
            truncated[e.j as usize] = e.truncated;
            orders[e.j as usize] = e.order;
        }
        let omega = parse_real("analytic.omega", a.omega.as_deref().unwrap_or(""), prec)?;
        let mut frobenius_traces = std::collections::BTreeMap::new();
        if let (Some(curve), Some(setup)) = (&self.curve, self.setup()?) {
            for v in &setup.ramified {
                if let Some(c) = curve.residue_count(&v.label, v.norm) {
                    frobenius_traces.insert(v.label.clone(), v.norm as i64 + 1 - c as i64);
                }
            }
        }
        Ok(LeadingTermData {
            values,
            truncated,
            orders,
            omega,
            dimension: self.curve.as_ref().map(|c| c.dimension).unwrap_or(1),
            tau_star: self.tau_star_values(prec)?,
            frobenius_traces,
        })
    }

    /// Orders of vanishing: explicit list, else from the leading-term entries.
    pub fn orders(&self) -> Option<Vec<u64>> {
        if let Some(o) = &self.analytic.orders {
            return Some(o.clone());
        }
        if self.analytic.leading_terms.is_empty() {
            return None;
        }
        let mut o = vec![0; self.analytic.leading_terms.len()];
        for e in &self.analytic.leading_terms {
            o[e.j as usize] = e.order;
        }
        Some(o)
    }

    pub fn bsd_fields(&self, prec: usize) -> Result<Vec<BsdFieldData>> {
        let dimension = self.curve.as_ref().map(|c| c.dimension).unwrap_or(1);
        self.analytic
            .fields
            .iter()
            .enumerate()
            .map(|(i, f)| {
                Ok(BsdFieldData {
                    label: f.label.clone(),
                    leading_term: parse_real(&format!("analytic.fields[{i}].leading_term"), &f.leading_term, prec)?,
                    discriminant_abs: BigInt::from(f.discriminant_abs),
                    regulator: parse_real(&format!("analytic.fields[{i}].regulator"), &f.regulator, prec)?,
                    periods: parse_real(&format!("analytic.fields[{i}].periods"), &f.periods, prec)?,
                    dimension,
                })
            })
            .collect()
    }

    pub fn phi_entries(&self) -> Result<Option<Vec<Vec<GroupRingElt>>>> {
        let group = self.group()?;
        match &self.arithmetic.phi {
            None => Ok(None),
            Some(rows) => rows
                .iter()
                .map(|row| row.iter().map(|c| GroupRingElt::from_ints(group, c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }
}

fn parse_real(path: &str, s: &str, prec: usize) -> Result<Real> {
    Real::parse_decimal(s, prec).map_err(|e| Error::schema(path, e.to_string()))
}

fn check_entries<'a>(
    path: &str,
    entries: impl Iterator<Item = (u64, &'a String, &'a String)>,
    order: u64,
    prec: usize,
) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, (j, re, im)) in entries.enumerate() {
        if j >= order {
            return Err(Error::schema(format!("{path}[{i}].j"), format!("character index {j} out of range 0..{order}")));
        }
        if !seen.insert(j) {
            return Err(Error::schema(format!("{path}[{i}].j"), format!("duplicate character index {j}")));
        }
        parse_real(&format!("{path}[{i}].re"), re, prec)?;
        parse_real(&format!("{path}[{i}].im"), im, prec)?;
    }
    if seen.len() as u64 != order {
        let missing: Vec<u64> = (0..order).filter(|j| !seen.contains(j)).collect();
        return Err(Error::schema(path, format!("missing characters {missing:?}")));
    }
    Ok(())
}

fn index_entries<'a>(
    entries: impl Iterator<Item = (u64, &'a String, &'a String)>,
    order: u64,
    prec: usize,
) -> Result<Vec<BigComplex>> {
    let mut out = vec![None; order as usize];
    for (j, re, im) in entries {
        out[j as usize] = Some(BigComplex::parse_decimal(re, im, prec)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(j, v)| v.ok_or_else(|| Error::MissingData(format!("value at j = {j}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
[header]
p = 3
n = 1
q = 7
digits = 20

[analytic]
normalization = "quotient"
values = [
  { j = 0, re = "0.5" },
  { j = 2, re = "-0.25", im = "0.43301270189221932338" },
  { j = 1, re = "-0.25", im = "-0.43301270189221932338" },
]

[arithmetic]
ranks = [1, 3]
"#;

    #[test]
    fn loads_and_round_trips() {
        let mut f = ProblemFile::from_toml_str(SMALL).unwrap();
        f.normalize();
        let once = f.to_toml_string();
        let mut again = ProblemFile::from_toml_str(&once).unwrap();
        again.normalize();
        assert_eq!(again.to_toml_string(), once);
        assert_eq!(f.values(128).unwrap().len(), 3);
    }

    #[test]
    fn empty_analytic_block_reports_path() {
        let text = SMALL.replace(
            "normalization = \"quotient\"\nvalues = [\n  { j = 0, re = \"0.5\" },\n  { j = 2, re = \"-0.25\", im = \"0.43301270189221932338\" },\n  { j = 1, re = \"-0.25\", im = \"-0.43301270189221932338\" },\n]\n",
            "",
        );
        match ProblemFile::from_toml_str(&text) {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("analytic"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_decimal_reports_path() {
        let text = SMALL.replace("\"0.5\"", "\"0.5x\"");
        match ProblemFile::from_toml_str(&text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "analytic.values[0].re"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_character_is_rejected() {
        let text = SMALL.replace("  { j = 1, re = \"-0.25\", im = \"-0.43301270189221932338\" },\n", "");
        assert!(matches!(ProblemFile::from_toml_str(&text), Err(Error::Schema { .. })));
    }
}
