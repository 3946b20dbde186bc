//! The verdict engine: normalised leading terms, recognition of exact
//! character values, and the rationality, maximal-order, integral and
//! augmentation-filtration checks.

mod checks;
mod hypotheses;
mod leading;
mod recognize;

pub use checks::{
    bsd_p_check, corollary1_suite, max_order_check, mazur_tate_element, twist_values, zpg_check, zpg_element,
    BsdFieldData, Corollary1Input, CHECK_BSD, CHECK_COR1, CHECK_EXACT_ORDER, CHECK_MAX, CHECK_MAZUR_TATE,
    CHECK_ZPG,
};
pub use hypotheses::{count_points, hypotheses_check, CurveMetadata, CHECK_HYPOTHESES};
pub use leading::{euler_factor, modified_leading_terms, normalized_leading_terms, LeadingTermData};
pub use recognize::{rationality_check, recognize_character_values, Recognition, RecognizedOrbit, CHECK_RATIONALITY};

use num_bigint::BigInt;

use crate::numeric::Real;

/// Tolerances for turning numerical values into exact ones.
#[derive(Clone, Debug)]
pub struct RecognitionConfig {
    /// Residuals below `tol` pass; residuals below `sqrt(tol)` are inconclusive.
    pub tol: Real,
    pub denom_bound: BigInt,
    pub prec: usize,
}

impl RecognitionConfig {
    pub fn new(tol_exponent: u32, denom_bound: BigInt, prec: usize) -> Self {
        RecognitionConfig { tol: Real::pow10_neg(tol_exponent, prec), denom_bound, prec }
    }

    /// Default for data carrying `digits` significant decimal digits.
    pub fn for_digits(digits: u32, prec: usize) -> Self {
        RecognitionConfig::new(default_tol_exponent(digits), BigInt::from(1_000_000), prec)
    }

    pub fn loose_tol(&self) -> Real {
        self.tol.sqrt()
    }
}

/// Exponent `e` of the default tolerance `10^-e` for `digits` declared digits:
/// `digits - 10` for high-precision data, never looser than `10^-min(2 digits / 3, 10)`.
pub fn default_tol_exponent(digits: u32) -> u32 {
    let guard = digits.saturating_sub(10);
    guard.max((2 * digits / 3).min(10)).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_defaults() {
        assert_eq!(default_tol_exponent(6), 4);
        assert_eq!(default_tol_exponent(20), 10);
        assert_eq!(default_tol_exponent(30), 20);
        assert_eq!(default_tol_exponent(1), 1);
    }
}
