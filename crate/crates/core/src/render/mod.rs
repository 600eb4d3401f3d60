//! SVG rendering of the five bar-chart designs and of generic design-space
//! configurations.
//!
//! Output is a pure function of the [`RenderSpec`]: numbers are printed with
//! two decimals, text is placed by anchor only, and element ids are derived
//! from category labels and band exponents.

pub mod gallery;
pub mod svg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::VisConfig;
use crate::lab::dataset::Dataset;
use crate::omv::{self, DEFAULT_PRECISION};
use crate::scales::{self, GridWeight, ScaleError, ScaleKind, ScaleSpec, TickSet};
use svg::{Anchor, Doc};

pub use gallery::{render_gallery, write_gallery, GalleryPanel, PanelGeometry};

/// The five experimental designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartDesign {
    Lin,
    Log,
    Ssb,
    Eplusm,
    Facet,
}

impl ChartDesign {
    pub const ALL: [ChartDesign; 5] =
        [ChartDesign::Lin, ChartDesign::Log, ChartDesign::Ssb, ChartDesign::Eplusm, ChartDesign::Facet];

    pub fn name(self) -> &'static str {
        match self {
            ChartDesign::Lin => "lin",
            ChartDesign::Log => "log",
            ChartDesign::Ssb => "ssb",
            ChartDesign::Eplusm => "eplusm",
            ChartDesign::Facet => "facet",
        }
    }

    pub fn scale_kind(self) -> ScaleKind {
        match self {
            ChartDesign::Lin => ScaleKind::Linear,
            ChartDesign::Log => ScaleKind::Log,
            ChartDesign::Ssb => ScaleKind::Ssb,
            ChartDesign::Eplusm => ScaleKind::Eplusm,
            ChartDesign::Facet => ScaleKind::Facet,
        }
    }

    fn title(self) -> &'static str {
        match self {
            ChartDesign::Lin => "Linear bar chart",
            ChartDesign::Log => "Logarithmic bar chart",
            ChartDesign::Ssb => "Scale-stack bar chart",
            ChartDesign::Eplusm => "EplusM bar chart",
            ChartDesign::Facet => "Facet bar chart",
        }
    }
}

impl fmt::Display for ChartDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown design {0:?}; expected one of lin, log, ssb, eplusm, facet")]
pub struct UnknownDesign(pub String);

impl FromStr for ChartDesign {
    type Err = UnknownDesign;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lin" | "linear" => Ok(ChartDesign::Lin),
            "log" => Ok(ChartDesign::Log),
            "ssb" => Ok(ChartDesign::Ssb),
            "eplusm" => Ok(ChartDesign::Eplusm),
            "facet" => Ok(ChartDesign::Facet),
            _ => Err(UnknownDesign(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RenderTarget {
    Design(ChartDesign),
    Generic(VisConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleSpec {
    pub font_family: String,
    pub font_size: f64,
    pub bar_fill: String,
    pub band_separator: String,
    pub band_separator_width: f64,
    pub subdivision: String,
    pub subdivision_width: f64,
    pub axis: String,
    pub highlight_color: String,
    pub ssb_palette: Vec<String>,
}

/// Twenty categorical colors.
pub const PALETTE: [&str; 20] = [
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c", "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f", "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
];

impl Default for StyleSpec {
    fn default() -> Self {
        Self {
            font_family: "sans-serif".into(),
            font_size: 12.0,
            bar_fill: "#4c78a8".into(),
            band_separator: "#000000".into(),
            band_separator_width: 2.0,
            subdivision: "#c8c8c8".into(),
            subdivision_width: 0.75,
            axis: "#333333".into(),
            highlight_color: "#ff8c00".into(),
            ssb_palette: PALETTE.iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub const DEFAULT_WIDTH: f64 = 720.0;
pub const DEFAULT_HEIGHT: f64 = 480.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub target: RenderTarget,
    pub dataset: Dataset,
    pub width: f64,
    pub height: f64,
    pub highlight: Vec<String>,
    pub style: StyleSpec,
    /// Exponent domain; defaults to the dataset's own exponent range.
    pub domain: Option<(i32, i32)>,
}

impl RenderSpec {
    pub fn new(target: RenderTarget, dataset: Dataset) -> Self {
        Self {
            target,
            dataset,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            highlight: Vec::new(),
            style: StyleSpec::default(),
            domain: None,
        }
    }

    pub fn design(design: ChartDesign, dataset: Dataset) -> Self {
        Self::new(RenderTarget::Design(design), dataset)
    }

    pub fn with_size(mut self, width: f64, height: f64) -> Self {
        self.width = width;
        self.height = height;
        self
    }

    pub fn with_highlight<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.highlight = labels.into_iter().map(Into::into).collect();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("dataset has no rows")]
    EmptyDataset,
    #[error("value of {label} has exponent {exponent}, outside the domain {min}..={max}")]
    DomainExceeded { label: String, exponent: i32, min: i32, max: i32 },
    #[error("highlighted label {0:?} is not in the dataset")]
    UnknownHighlight(String),
    #[error("size {width}x{height} leaves no room for a plot")]
    InvalidSize { width: f64, height: f64 },
    #[error("cannot render {config}: {reason}")]
    UnrenderableConfig { config: String, reason: String },
    #[error(transparent)]
    Scale(#[from] ScaleError),
}

pub const MARGIN_LEFT: f64 = 96.0;
pub const MARGIN_RIGHT: f64 = 16.0;
pub const MARGIN_TOP: f64 = 32.0;
pub const MARGIN_BOTTOM: f64 = 56.0;
const BAR_SHARE: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotArea {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl PlotArea {
    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    /// Pixel row of a scale position measured upward from the plot floor.
    pub fn y_of(&self, position: f64) -> f64 {
        self.bottom() - position
    }
}

/// One filled extent of a bar, in scale units from the plot floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub from: f64,
    pub to: f64,
    /// Band the segment sits in, for banded designs.
    pub band: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarGeom {
    pub label: String,
    pub value: f64,
    pub x: f64,
    pub width: f64,
    pub segments: Vec<Segment>,
    pub fill: String,
    pub highlighted: bool,
}

impl BarGeom {
    /// Highest scale position the bar reaches.
    pub fn top(&self) -> f64 {
        self.segments.iter().map(|s| s.to).fold(0.0, f64::max)
    }
}

/// Resolved geometry of a design chart, before SVG serialization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Chart {
    pub design: ChartDesign,
    pub width: f64,
    pub height: f64,
    pub plot: PlotArea,
    pub scale: ScaleSpec,
    pub ticks: TickSet,
    pub bars: Vec<BarGeom>,
}

fn plot_area(width: f64, height: f64) -> Result<PlotArea, RenderError> {
    let area = PlotArea {
        x: MARGIN_LEFT,
        y: MARGIN_TOP,
        width: width - MARGIN_LEFT - MARGIN_RIGHT,
        height: height - MARGIN_TOP - MARGIN_BOTTOM,
    };
    if !(area.width > 0.0 && area.height > 0.0) || !width.is_finite() || !height.is_finite() {
        return Err(RenderError::InvalidSize { width, height });
    }
    Ok(area)
}

/// Exponent of every row, checked against the domain if one is given.
fn exponents(spec: &RenderSpec) -> Result<(Vec<i32>, i32, i32), RenderError> {
    if spec.dataset.is_empty() {
        return Err(RenderError::EmptyDataset);
    }
    let exps = spec
        .dataset
        .rows
        .iter()
        .map(|r| omv::decompose(r.value, DEFAULT_PRECISION).map(|o| o.exponent()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(ScaleError::from)?;
    let (min, max) = match spec.domain {
        Some((min, max)) => {
            for (row, &e) in spec.dataset.rows.iter().zip(&exps) {
                if e < min || e > max {
                    return Err(RenderError::DomainExceeded { label: row.label.clone(), exponent: e, min, max });
                }
            }
            (min, max)
        }
        None => (*exps.iter().min().unwrap(), *exps.iter().max().unwrap()),
    };
    // a single-decade dataset still gets a two-band scale
    let max = max.max(min + 1);
    Ok((exps, min, max))
}

fn check_highlights(spec: &RenderSpec) -> Result<(), RenderError> {
    for label in &spec.highlight {
        if spec.dataset.get(label).is_none() {
            return Err(RenderError::UnknownHighlight(label.clone()));
        }
    }
    Ok(())
}

/// Compute the chart geometry for one of the five designs.
pub fn layout(design: ChartDesign, spec: &RenderSpec) -> Result<Chart, RenderError> {
    let plot = plot_area(spec.width, spec.height)?;
    let (exps, min, max) = exponents(spec)?;
    check_highlights(spec)?;
    let scale = ScaleSpec::new(design.scale_kind(), min, max, plot.height)?;
    let ticks = scales::ticks(&scale);
    let band = scale.band_extent();
    let rows: Vec<i32> = (min..=max).collect();

    let slot = plot.width / spec.dataset.len() as f64;
    let mut bars = Vec::with_capacity(spec.dataset.len());
    for (i, (row, &e)) in spec.dataset.rows.iter().zip(&exps).enumerate() {
        let v = row.value;
        let segments = match design {
            ChartDesign::Lin | ChartDesign::Log | ChartDesign::Eplusm => {
                vec![Segment { from: 0.0, to: scale.position(v)?, band: None }]
            }
            ChartDesign::Facet => {
                let (_, offset) = scales::facet_place(v).map_err(ScaleError::from)?;
                let floor = scale.band_floor(e);
                vec![Segment { from: floor, to: floor + offset * band, band: Some(e) }]
            }
            ChartDesign::Ssb => scales::ssb_rows(v, &rows)?
                .into_iter()
                .map(|(k, fill)| Segment {
                    from: scale.band_floor(k),
                    to: scale.band_floor(k) + fill * band,
                    band: Some(k),
                })
                .collect(),
        };
        let highlighted = spec.highlight.contains(&row.label);
        let fill = if highlighted {
            spec.style.highlight_color.clone()
        } else if design == ChartDesign::Ssb && !spec.style.ssb_palette.is_empty() {
            spec.style.ssb_palette[i % spec.style.ssb_palette.len()].clone()
        } else {
            spec.style.bar_fill.clone()
        };
        let width = slot * BAR_SHARE;
        bars.push(BarGeom {
            label: row.label.clone(),
            value: v,
            x: plot.x + slot * i as f64 + (slot - width) / 2.0,
            width,
            segments,
            fill,
            highlighted,
        });
    }

    Ok(Chart { design, width: spec.width, height: spec.height, plot, scale, ticks, bars })
}

/// Render a spec to an SVG document.
pub fn render(spec: &RenderSpec) -> Result<String, RenderError> {
    match &spec.target {
        RenderTarget::Design(design) => Ok(write_chart(&layout(*design, spec)?, &spec.style)),
        RenderTarget::Generic(cfg) => gallery::render_panel(cfg, spec),
    }
}

fn arrow_down(x: f64, tip: f64) -> String {
    svg::polyline_d(&[(x - 5.0, tip - 9.0), (x + 5.0, tip - 9.0), (x, tip)], true)
}

fn arrow_up(x: f64, tip: f64) -> String {
    svg::polyline_d(&[(x - 5.0, tip + 9.0), (x + 5.0, tip + 9.0), (x, tip)], true)
}

fn write_chart(chart: &Chart, style: &StyleSpec) -> String {
    let plot = chart.plot;
    let mut doc = Doc::new(chart.width, chart.height, &style.font_family, style.font_size);
    doc.title(chart.design.title());

    doc.open_group(Some("grid"), None);
    for g in &chart.ticks.gridlines {
        let y = plot.y_of(g.position);
        let (id, class, stroke, width) = match g.weight {
            GridWeight::Thick => {
                (format!("sep-{}", g.exponent), "separator", style.band_separator.as_str(), style.band_separator_width)
            }
            GridWeight::Thin => (
                format!("grid-{}-{}", g.exponent, g.mantissa_x10),
                "subdivision",
                style.subdivision.as_str(),
                style.subdivision_width,
            ),
        };
        doc.line(Some(&id), class, plot.x, y, plot.x + plot.width, y, stroke, width);
    }
    doc.close_group();

    doc.open_group(Some("axis-y"), None);
    doc.line(None, "axis", plot.x, plot.y, plot.x, plot.bottom(), &style.axis, 1.0);
    for (i, t) in chart.ticks.major.iter().enumerate() {
        let y = plot.y_of(t.position);
        let id = format!("major-{i}");
        doc.line(Some(&id), "tick major", plot.x - 5.0, y, plot.x, y, &style.axis, 1.0);
        doc.text("tick-label major", plot.x - 8.0, y + 4.0, Anchor::End, &t.label);
    }
    for t in &chart.ticks.minor {
        let y = plot.y_of(t.position);
        let id = format!("minor-{}", t.exponent);
        doc.line(Some(&id), "tick minor", plot.x - 3.0, y, plot.x, y, &style.axis, 1.0);
        doc.text("tick-label minor", plot.x - 8.0, y + 4.0, Anchor::End, &t.label);
    }
    doc.close_group();

    doc.open_group(Some("bars"), None);
    for bar in &chart.bars {
        let id = format!("bar-{}", svg::id_safe(&bar.label));
        if chart.design == ChartDesign::Ssb {
            doc.open_group(Some(&id), Some("bar"));
            for s in &bar.segments {
                let seg_id = format!("{id}-{}", s.band.unwrap_or_default());
                doc.rect(Some(&seg_id), "bar-segment", bar.x, plot.y_of(s.to), bar.width, s.to - s.from, &bar.fill);
            }
            doc.close_group();
        } else {
            let s = bar.segments[0];
            doc.rect(Some(&id), "bar", bar.x, plot.y_of(s.to), bar.width, s.to - s.from, &bar.fill);
        }
    }
    doc.close_group();

    doc.open_group(Some("axis-x"), None);
    doc.line(None, "axis", plot.x, plot.bottom(), plot.x + plot.width, plot.bottom(), &style.axis, 1.0);
    for bar in &chart.bars {
        let cx = bar.x + bar.width / 2.0;
        doc.text("category", cx, plot.bottom() + 18.0, Anchor::Middle, &bar.label);
    }
    doc.close_group();

    if chart.bars.iter().any(|b| b.highlighted) {
        doc.open_group(Some("highlights"), None);
        for bar in chart.bars.iter().filter(|b| b.highlighted) {
            let cx = bar.x + bar.width / 2.0;
            let label = svg::id_safe(&bar.label);
            let top = plot.y_of(bar.top()) - 3.0;
            doc.path(Some(&format!("arrow-{label}-bar")), "arrow", &arrow_down(cx, top), &style.highlight_color, None);
            let below = plot.bottom() + 26.0;
            doc.path(
                Some(&format!("arrow-{label}-label")),
                "arrow",
                &arrow_up(cx, below),
                &style.highlight_color,
                None,
            );
        }
        doc.close_group();
    }
    doc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::dataset::{gen_dataset, Row};

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn facet_structure() {
        let d = gen_dataset(0, 1);
        let svg = render(&RenderSpec::design(ChartDesign::Facet, d)).unwrap();
        assert_eq!(count(&svg, "class=\"separator\""), 6);
        assert_eq!(count(&svg, "class=\"subdivision\""), 21);
        assert_eq!(count(&svg, "class=\"bar\""), 14);
        assert_eq!(count(&svg, "class=\"tick-label minor\""), 7);
        assert!(svg.contains("id=\"sep-10\"") && !svg.contains("id=\"sep-4\""));
        assert!(svg.contains("id=\"grid-4-25\""));
    }

    #[test]
    fn deterministic_bytes() {
        let d = gen_dataset(2, 5);
        for design in ChartDesign::ALL {
            let spec = RenderSpec::design(design, d.clone()).with_highlight(["C", "H"]);
            assert_eq!(render(&spec).unwrap(), render(&spec).unwrap());
        }
    }

    #[test]
    fn linear_hides_small_values() {
        let rows = vec![
            Row { label: "A".into(), value: 1e4 },
            Row { label: "B".into(), value: 5.5e7 },
            Row { label: "C".into(), value: 9.9e10 },
        ];
        let spec = RenderSpec::design(ChartDesign::Lin, Dataset::from_rows(0, 0, rows));
        let chart = layout(ChartDesign::Lin, &spec).unwrap();
        for bar in &chart.bars[..2] {
            assert!(bar.top() < chart.plot.height / 1000.0);
        }
        assert!(chart.bars[2].top() > chart.plot.height * 0.9);
    }

    #[test]
    fn eplusm_bars_match_scale() {
        let d = gen_dataset(4, 2);
        let spec = RenderSpec::design(ChartDesign::Eplusm, d.clone());
        let chart = layout(ChartDesign::Eplusm, &spec).unwrap();
        let bands = chart.scale.band_count() as f64;
        for (bar, row) in chart.bars.iter().zip(&d.rows) {
            let s = scales::eplusm_forward(row.value).unwrap();
            let expected = (s - 4.0) / bands * chart.plot.height;
            assert!((bar.top() - expected).abs() < 1e-9);
            assert_eq!(bar.segments[0].from, 0.0);
        }
    }

    #[test]
    fn errors() {
        let empty = Dataset::from_rows(0, 0, vec![]);
        assert_eq!(render(&RenderSpec::design(ChartDesign::Log, empty)), Err(RenderError::EmptyDataset));
        let mut spec = RenderSpec::design(ChartDesign::Facet, gen_dataset(0, 0));
        spec.domain = Some((5, 10));
        assert!(matches!(render(&spec), Err(RenderError::DomainExceeded { exponent: 4, .. })));
        let spec = RenderSpec::design(ChartDesign::Facet, gen_dataset(0, 0)).with_highlight(["Z"]);
        assert_eq!(render(&spec), Err(RenderError::UnknownHighlight("Z".into())));
        let spec = RenderSpec::design(ChartDesign::Facet, gen_dataset(0, 0)).with_size(50.0, 50.0);
        assert!(matches!(render(&spec), Err(RenderError::InvalidSize { .. })));
    }

    #[test]
    fn highlights_draw_two_arrows_each() {
        let spec = RenderSpec::design(ChartDesign::Ssb, gen_dataset(0, 0)).with_highlight(["A", "B"]);
        let svg = render(&spec).unwrap();
        assert_eq!(count(&svg, "class=\"arrow\""), 4);
        assert!(svg.contains("id=\"arrow-A-bar\""));
        assert_eq!(count(&svg, "#ff8c00"), 2 * 7 + 4);
    }

    #[test]
    fn design_names_parse() {
        for d in ChartDesign::ALL {
            assert_eq!(d.name().parse::<ChartDesign>().unwrap(), d);
        }
        assert!("pie".parse::<ChartDesign>().is_err());
    }
}
