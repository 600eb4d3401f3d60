//! Mantissa/exponent visualization toolkit.
//!
//! - [`omv`]: normalized scientific notation and the k/M/B answer format
//! - [`scales`]: linear, log, EplusM, facet and scale-stack positions and ticks
//! - [`design`]: the configuration space, its constraints and mirror folding
//! - [`grammar`]: the `mark | exp->C | mant->C | attr->C` notation
//! - [`render`]: deterministic SVG charts and gallery panels
//! - [`lab`]: synthetic datasets, trials, scoring, aggregation and simulation

pub mod design;
pub mod grammar;
pub mod lab;
pub mod omv;
pub mod render;
pub mod scales;
