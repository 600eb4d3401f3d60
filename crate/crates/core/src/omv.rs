//! Orders-of-magnitude values in base-10 normalized scientific notation.
//!
//! A positive value `v` is held as `(mantissa, exponent)` with
//! `v = mantissa * 10^exponent` and `mantissa` in `[1, 10)`. The mantissa is
//! rounded to a requested number of significant digits; internal math uses
//! [`DEFAULT_PRECISION`] and display rounding is left to callers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Significant digits kept by internal computations.
pub const DEFAULT_PRECISION: u32 = 15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OmvError {
    #[error("value {0} is not positive; the order of magnitude of zero or a negative number is undefined")]
    NonPositiveValue(f64),
    #[error("value {0} is not finite")]
    NonFinite(f64),
    #[error("precision must be at least 1 significant digit")]
    InvalidPrecision,
    #[error("mantissa {0} is outside [1, 10)")]
    DomainError(f64),
    #[error("value {0} cannot be written as a count in 1..=999 with unit none/k/M/B")]
    OutOfRange(f64),
}

/// `10^exp` as an f64, dividing for negative exponents so that values such as
/// `1e-3` come out correctly rounded.
pub fn pow10(exp: i32) -> f64 {
    if exp >= 0 {
        10f64.powi(exp)
    } else {
        1.0 / 10f64.powi(-exp)
    }
}

fn scale_by_pow10(x: f64, exp: i32) -> f64 {
    if exp >= 0 {
        x * 10f64.powi(exp)
    } else {
        x / 10f64.powi(-exp)
    }
}

/// A positive number in normalized scientific notation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmValue {
    mantissa: f64,
    exponent: i32,
    precision: u32,
}

impl OmValue {
    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The represented value, `mantissa * 10^exponent`.
    pub fn value(&self) -> f64 {
        scale_by_pow10(self.mantissa, self.exponent)
    }
}

impl fmt::Display for OmValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decimals = self.precision.saturating_sub(1) as usize;
        write!(f, "{:.*}e{}", decimals, self.mantissa, self.exponent)
    }
}

/// Round `x` to `digits` decimal places, half away from zero.
pub fn round_decimals(x: f64, digits: u32) -> f64 {
    let scale = 10f64.powi(digits as i32);
    (x * scale).round() / scale
}

/// Split `value` into a normalized mantissa and exponent, rounding the
/// mantissa to `precision` significant digits (half away from zero).
///
/// When rounding carries the mantissa up to 10 the result is renormalized to
/// `(1, exponent + 1)`.
pub fn decompose(value: f64, precision: u32) -> Result<OmValue, OmvError> {
    if precision == 0 {
        return Err(OmvError::InvalidPrecision);
    }
    if value.is_nan() || value.is_infinite() {
        return Err(OmvError::NonFinite(value));
    }
    if value <= 0.0 {
        return Err(OmvError::NonPositiveValue(value));
    }
    let mut exponent = value.log10().floor() as i32;
    let mut mantissa = scale_by_pow10(value, -exponent);
    // log10 can land one ulp on the wrong side of a decade boundary
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1;
    } else if mantissa < 1.0 {
        mantissa *= 10.0;
        exponent -= 1;
    }
    // beyond 17 digits an f64 carries nothing more to round
    if precision < 17 {
        mantissa = round_decimals(mantissa, precision - 1);
    }
    if mantissa >= 10.0 {
        mantissa = 1.0;
        exponent += 1;
    }
    Ok(OmValue { mantissa, exponent, precision })
}

/// `mantissa * 10^exponent`; the mantissa must already be normalized.
///
/// The product is taken in decimal, so `compose(5.19, 10)` is exactly the
/// double nearest `5.19e10` rather than `5.19 * 1e10` rounded twice.
pub fn compose(mantissa: f64, exponent: i32) -> Result<f64, OmvError> {
    if !(1.0..10.0).contains(&mantissa) {
        return Err(OmvError::DomainError(mantissa));
    }
    Ok(format!("{mantissa}e{exponent}").parse().expect("float display is parseable"))
}

/// Scale word used by the experiment's answer input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HybridUnit {
    None,
    K,
    M,
    B,
}

impl HybridUnit {
    /// Largest first.
    pub const DESCENDING: [HybridUnit; 4] = [HybridUnit::B, HybridUnit::M, HybridUnit::K, HybridUnit::None];

    pub fn multiplier(self) -> f64 {
        match self {
            HybridUnit::None => 1.0,
            HybridUnit::K => 1e3,
            HybridUnit::M => 1e6,
            HybridUnit::B => 1e9,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            HybridUnit::None => "",
            HybridUnit::K => "k",
            HybridUnit::M => "M",
            HybridUnit::B => "B",
        }
    }
}

/// A count in `1..=999` followed by an optional k/M/B unit, e.g. `53M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HybridNotation {
    pub count: u32,
    pub unit: HybridUnit,
}

impl HybridNotation {
    pub fn value(&self) -> f64 {
        self.count as f64 * self.unit.multiplier()
    }
}

impl fmt::Display for HybridNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.count, self.unit.suffix())
    }
}

fn hybrid_unit_for(value: f64) -> Result<HybridUnit, OmvError> {
    if !value.is_finite() || value < 1.0 {
        return Err(OmvError::OutOfRange(value));
    }
    let reached = HybridUnit::DESCENDING.into_iter().find(|u| value >= u.multiplier()).unwrap_or(HybridUnit::None);
    if (value / reached.multiplier()).round() <= 999.0 {
        return Ok(reached);
    }
    // rounding carried the count to 1000
    match reached {
        HybridUnit::None => Ok(HybridUnit::K),
        HybridUnit::K => Ok(HybridUnit::M),
        HybridUnit::M => Ok(HybridUnit::B),
        HybridUnit::B => Err(OmvError::OutOfRange(value)),
    }
}

/// Express `value` with the largest unit it reaches, so the count lies in
/// `1..=999` after rounding; `999.6` becomes `1k`.
pub fn to_hybrid(value: f64) -> Result<HybridNotation, OmvError> {
    let unit = hybrid_unit_for(value)?;
    Ok(HybridNotation { count: (value / unit.multiplier()).round() as u32, unit })
}

/// Snap `value` to what the answer input can hold: the unit chosen as in
/// [`to_hybrid`], with the count kept to `decimals` decimal places.
pub fn hybrid_quantize(value: f64, decimals: u32) -> Result<f64, OmvError> {
    let unit = hybrid_unit_for(value)?;
    let count = round_decimals(value / unit.multiplier(), decimals);
    Ok(count * unit.multiplier())
}

/// Group the digits of a non-negative integer string in threes.
pub fn group_thousands(digits: &str) -> String {
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

/// Decimal label for `10^exponent`: `3 -> "1,000"`, `-2 -> "0.01"`.
pub fn tick_label(exponent: i32) -> String {
    if exponent >= 0 {
        let digits = format!("1{}", "0".repeat(exponent as usize));
        group_thousands(&digits)
    } else {
        format!("0.{}1", "0".repeat((-exponent - 1) as usize))
    }
}

/// Decimal label for `digit * 10^exponent`, e.g. `(5, 4) -> "50,000"`.
pub fn scaled_label(digit: u32, exponent: i32) -> String {
    if exponent >= 0 {
        group_thousands(&format!("{digit}{}", "0".repeat(exponent as usize)))
    } else {
        format!("0.{}{digit}", "0".repeat((-exponent - 1) as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn decompose_power_of_ten() {
        let v = decompose(1000.0, 3).unwrap();
        assert_eq!(v.mantissa(), 1.0);
        assert_eq!(v.exponent(), 3);
        assert_eq!(v.precision(), 3);
    }

    #[test]
    fn decompose_rejects_zero_and_negative() {
        assert_eq!(decompose(0.0, 3), Err(OmvError::NonPositiveValue(0.0)));
        assert!(matches!(decompose(-4.0, 3), Err(OmvError::NonPositiveValue(_))));
        assert!(matches!(decompose(f64::NAN, 3), Err(OmvError::NonFinite(_))));
        assert_eq!(decompose(5.0, 0), Err(OmvError::InvalidPrecision));
    }

    #[test]
    fn decompose_renormalizes_after_rounding_carry() {
        // 9.996 to three significant digits is 10.0
        let v = decompose(9.996e6, 3).unwrap();
        assert_eq!((v.mantissa(), v.exponent()), (1.0, 7));
    }

    #[test]
    fn decompose_rounds_half_away_from_zero() {
        assert_eq!(decompose(2.25e5, 2).unwrap().mantissa(), 2.3);
        assert_eq!(decompose(0.0125, 2).unwrap().mantissa(), 1.3);
    }

    #[test]
    fn decompose_small_values() {
        let v = decompose(3.2e-8, 15).unwrap();
        assert_eq!(v.exponent(), -8);
        assert_relative_eq!(v.mantissa(), 3.2, max_relative = 1e-14);
    }

    #[test]
    fn compose_definition() {
        assert_eq!(compose(1.0, 0).unwrap(), 1.0);
        assert_relative_eq!(compose(5.3, 7).unwrap(), 5.3e7, max_relative = 1e-15);
        assert_eq!(compose(10.0, 1), Err(OmvError::DomainError(10.0)));
        assert_eq!(compose(0.99, 1), Err(OmvError::DomainError(0.99)));
    }

    fn hybrid_brute_force(value: f64) -> Option<HybridNotation> {
        // every unit with a count in 1..=999; keep the closest, larger unit on ties
        let mut best: Option<(f64, HybridNotation)> = None;
        for unit in [HybridUnit::None, HybridUnit::K, HybridUnit::M, HybridUnit::B] {
            let count = (value / unit.multiplier()).round();
            if !(1.0..=999.0).contains(&count) {
                continue;
            }
            let err = (count * unit.multiplier() - value).abs();
            if best.is_none_or(|(e, _)| err <= e) {
                best = Some((err, HybridNotation { count: count as u32, unit }));
            }
        }
        best.map(|(_, h)| h)
    }

    #[test]
    fn hybrid_examples() {
        assert_eq!(to_hybrid(53_000_000.0).unwrap(), HybridNotation { count: 53, unit: HybridUnit::M });
        assert_eq!(to_hybrid(1.0).unwrap(), HybridNotation { count: 1, unit: HybridUnit::None });
        let h = to_hybrid(9.4e10).unwrap();
        assert_eq!(h, HybridNotation { count: 94, unit: HybridUnit::B });
        assert_eq!(Some(h), hybrid_brute_force(9.4e10));
        assert_eq!(h.to_string(), "94B");
    }

    #[test]
    fn hybrid_boundaries() {
        assert_eq!(to_hybrid(999_500.0).unwrap(), HybridNotation { count: 1, unit: HybridUnit::M });
        assert_eq!(to_hybrid(999.4).unwrap(), HybridNotation { count: 999, unit: HybridUnit::None });
        assert!(matches!(to_hybrid(0.5), Err(OmvError::OutOfRange(_))));
        assert!(matches!(to_hybrid(999.5e9), Err(OmvError::OutOfRange(_))));
        assert!(to_hybrid(999.4e9).is_ok());
        assert_eq!(to_hybrid(999.6).unwrap(), HybridNotation { count: 1, unit: HybridUnit::K });
        assert_eq!(to_hybrid(600.0).unwrap(), HybridNotation { count: 600, unit: HybridUnit::None });
    }

    #[test]
    fn hybrid_agrees_with_brute_force() {
        let mut x = 1.0f64;
        while x < 9.0e11 {
            assert_eq!(to_hybrid(x).ok(), hybrid_brute_force(x), "{x}");
            x *= 1.0137;
        }
    }

    #[test]
    fn hybrid_quantize_keeps_three_significant_digits() {
        assert_eq!(hybrid_quantize(5.37e4, 2).unwrap(), 53.7e3);
        assert_eq!(hybrid_quantize(5.37e6, 2).unwrap(), 5.37e6);
        assert_eq!(hybrid_quantize(1234.5678, 2).unwrap(), 1.23e3);
    }

    #[test]
    fn tick_labels() {
        assert_eq!(tick_label(3), "1,000");
        assert_eq!(tick_label(0), "1");
        assert_eq!(tick_label(9), "1,000,000,000");
        assert_eq!(tick_label(5), "100,000");
        assert_eq!(tick_label(-1), "0.1");
        assert_eq!(tick_label(-3), "0.001");
        assert_eq!(scaled_label(5, 4), "50,000");
        assert_eq!(scaled_label(5, -1), "0.5");
        assert_eq!(scaled_label(5, -2), "0.05");
    }

    #[test]
    fn tick_label_matches_integer_expansion() {
        for e in 0..=12 {
            let plain = 10u64.pow(e as u32).to_string();
            assert_eq!(tick_label(e).replace(',', ""), plain);
        }
    }
}
