//! Positional scales for the five experimental bar-chart designs.
//!
//! Banded scales (`eplusm`, `facet`, `ssb`, `log`) split their range into one
//! band per exponent from `domain_min_exponent` through `domain_max_exponent`
//! inclusive, so a domain `4..=10` has seven bands. Positions are measured
//! from the scale floor upward in the same abstract units as `range_extent`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::omv::{self, OmvError, DEFAULT_PRECISION};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error(transparent)]
    Omv(#[from] OmvError),
    #[error("exponent domain {min}..={max} is empty")]
    EmptyDomain { min: i32, max: i32 },
    #[error("range extent {0} must be positive")]
    NonPositiveExtent(f64),
    #[error("ssb rows must be non-empty and ascending")]
    BadRows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleKind {
    Linear,
    Log,
    Eplusm,
    Facet,
    Ssb,
}

impl ScaleKind {
    /// Kinds that carry one band per exponent.
    pub fn is_banded(self) -> bool {
        !matches!(self, ScaleKind::Linear)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleSpec {
    pub kind: ScaleKind,
    pub domain_min_exponent: i32,
    pub domain_max_exponent: i32,
    pub range_extent: f64,
}

impl ScaleSpec {
    pub fn new(kind: ScaleKind, min: i32, max: i32, range_extent: f64) -> Result<Self, ScaleError> {
        if min >= max {
            return Err(ScaleError::EmptyDomain { min, max });
        }
        if range_extent <= 0.0 || !range_extent.is_finite() {
            return Err(ScaleError::NonPositiveExtent(range_extent));
        }
        Ok(Self { kind, domain_min_exponent: min, domain_max_exponent: max, range_extent })
    }

    pub fn band_count(&self) -> usize {
        (self.domain_max_exponent - self.domain_min_exponent + 1) as usize
    }

    pub fn band_extent(&self) -> f64 {
        self.range_extent / self.band_count() as f64
    }

    /// Floor of the band holding exponent `k`.
    pub fn band_floor(&self, k: i32) -> f64 {
        (k - self.domain_min_exponent) as f64 * self.band_extent()
    }

    /// Top of the linear domain, `10^(max + 1)`.
    pub fn linear_top(&self) -> f64 {
        omv::pow10(self.domain_max_exponent + 1)
    }

    /// Position of `v` measured from the scale floor.
    ///
    /// `ssb` has no single position for a value (it appears in every row) and
    /// `facet` needs the row as well; both return the EplusM-equivalent
    /// position, which is where the value's own band holds it.
    pub fn position(&self, v: f64) -> Result<f64, ScaleError> {
        let bands = self.band_count() as f64;
        let min = self.domain_min_exponent as f64;
        let pos = match self.kind {
            ScaleKind::Linear => {
                positive(v)?;
                v / self.linear_top() * self.range_extent
            }
            ScaleKind::Log => {
                positive(v)?;
                let clamped = v.log10().clamp(min, min + bands);
                (clamped - min) / bands * self.range_extent
            }
            ScaleKind::Eplusm | ScaleKind::Facet => (eplusm_forward(v)? - min) / bands * self.range_extent,
            ScaleKind::Ssb => {
                let (row, _) = facet_place(v)?;
                let fill = (v / omv::pow10(row + 1)).min(1.0);
                self.band_floor(row) + fill * self.band_extent()
            }
        };
        Ok(pos)
    }
}

fn positive(v: f64) -> Result<(), OmvError> {
    if v.is_nan() || v.is_infinite() {
        Err(OmvError::NonFinite(v))
    } else if v <= 0.0 {
        Err(OmvError::NonPositiveValue(v))
    } else {
        Ok(())
    }
}

/// EplusM position `e + (m - 1) / 9`: decades are unit length and the
/// mantissa fills each one linearly.
pub fn eplusm_forward(v: f64) -> Result<f64, OmvError> {
    let om = omv::decompose(v, DEFAULT_PRECISION)?;
    Ok(om.exponent() as f64 + (om.mantissa() - 1.0) / 9.0)
}

/// Inverse of [`eplusm_forward`]: `10^floor(s) * (1 + 9 * frac(s))`.
pub fn eplusm_inverse(s: f64) -> f64 {
    let e = s.floor();
    let frac = s - e;
    omv::pow10(e as i32) * (1.0 + 9.0 * frac)
}

/// Row (exponent) and within-row offset `(m - 1) / 9` in `[0, 1)`.
pub fn facet_place(v: f64) -> Result<(i32, f64), OmvError> {
    let om = omv::decompose(v, DEFAULT_PRECISION)?;
    Ok((om.exponent(), (om.mantissa() - 1.0) / 9.0))
}

/// Fill of each stacked row: row `k` is linear from 0 to `10^(k+1)`, clipped
/// at full.
pub fn ssb_rows(v: f64, rows: &[i32]) -> Result<Vec<(i32, f64)>, ScaleError> {
    positive(v)?;
    if rows.is_empty() || rows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ScaleError::BadRows);
    }
    Ok(rows.iter().map(|&k| (k, (v / omv::pow10(k + 1)).min(1.0))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridWeight {
    Thick,
    Thin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tick {
    pub position: f64,
    pub label: String,
    /// Exponent band the tick belongs to.
    pub exponent: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gridline {
    pub position: f64,
    pub weight: GridWeight,
    pub exponent: i32,
    /// Mantissa times ten (25, 50, 75) for thin lines, 10 for band separators.
    pub mantissa_x10: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TickSet {
    pub major: Vec<Tick>,
    pub minor: Vec<Tick>,
    pub gridlines: Vec<Gridline>,
}

impl TickSet {
    pub fn thin_count(&self) -> usize {
        self.gridlines.iter().filter(|g| g.weight == GridWeight::Thin).count()
    }

    pub fn thick_count(&self) -> usize {
        self.gridlines.iter().filter(|g| g.weight == GridWeight::Thick).count()
    }
}

/// Mantissa values of the thin subdivision lines, times ten.
pub const SUBDIVISIONS_X10: [u32; 3] = [25, 50, 75];

/// Fraction of a band at which mantissa `m` sits.
fn band_fraction(kind: ScaleKind, mantissa: f64) -> f64 {
    match kind {
        ScaleKind::Log => mantissa.log10(),
        ScaleKind::Ssb => mantissa / 10.0,
        _ => (mantissa - 1.0) / 9.0,
    }
}

/// Ticks and gridlines for a scale.
///
/// Banded kinds get a labeled major at each band floor, one labeled minor at
/// mantissa 5 per band, thin gridlines at mantissa 2.5/5/7.5 and thick
/// separators between bands. Linear scales get five evenly spaced decimal
/// majors above zero and nothing else.
pub fn ticks(spec: &ScaleSpec) -> TickSet {
    let mut set = TickSet::default();
    if !spec.kind.is_banded() {
        let top = spec.linear_top();
        let top_exponent = spec.domain_max_exponent + 1;
        for i in 0..=5u32 {
            let value = top * i as f64 / 5.0;
            let label = if i == 0 {
                "0".to_string()
            } else if i == 5 {
                omv::tick_label(top_exponent)
            } else {
                omv::scaled_label(2 * i, top_exponent - 1)
            };
            set.major.push(Tick { position: value / top * spec.range_extent, label, exponent: top_exponent });
        }
        return set;
    }

    let band = spec.band_extent();
    for k in spec.domain_min_exponent..=spec.domain_max_exponent {
        let floor = spec.band_floor(k);
        set.major.push(Tick { position: floor, label: omv::tick_label(k), exponent: k });
        set.minor.push(Tick {
            position: floor + band_fraction(spec.kind, 5.0) * band,
            label: omv::scaled_label(5, k),
            exponent: k,
        });
        if k > spec.domain_min_exponent {
            set.gridlines.push(Gridline { position: floor, weight: GridWeight::Thick, exponent: k, mantissa_x10: 10 });
        }
        for m10 in SUBDIVISIONS_X10 {
            set.gridlines.push(Gridline {
                position: floor + band_fraction(spec.kind, m10 as f64 / 10.0) * band,
                weight: GridWeight::Thin,
                exponent: k,
                mantissa_x10: m10,
            });
        }
    }
    set
}
