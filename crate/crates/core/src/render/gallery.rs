//! Generic panels for design-space configurations.
//!
//! Each configuration is first resolved into a [`PanelGeometry`] in
//! normalized, axis-symmetric coordinates: a facet cell `(col, row)` counted
//! from the bottom left and a point `(x, y)` in the unit square. Swapping X
//! with Y and Row with Col therefore transposes the geometry exactly.

use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::svg::{self, Anchor, Doc};
use super::{exponents, PlotArea, RenderError, RenderSpec, RenderTarget, StyleSpec, PALETTE};
use crate::design::{validate, Channel, Mark, VisConfig};
use crate::grammar;
use crate::lab::dataset::Dataset;
use crate::omv::{self, DEFAULT_PRECISION};
use crate::scales::{self, ScaleError};

pub const PANEL_SIZE: f64 = 360.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn flip(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// Symbol set for the shape channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Glyph {
    Circle,
    Square,
    TriangleUp,
    Diamond,
    TriangleDown,
    Cross,
    Plus,
    Star,
    Hexagon,
}

impl Glyph {
    pub const ALL: [Glyph; 9] = [
        Glyph::Circle,
        Glyph::Square,
        Glyph::TriangleUp,
        Glyph::Diamond,
        Glyph::TriangleDown,
        Glyph::Cross,
        Glyph::Plus,
        Glyph::Star,
        Glyph::Hexagon,
    ];

    fn path(self, cx: f64, cy: f64, r: f64) -> String {
        let poly = |pts: Vec<(f64, f64)>| {
            svg::polyline_d(&pts.into_iter().map(|(x, y)| (cx + x * r, cy + y * r)).collect::<Vec<_>>(), true)
        };
        let regular = |n: usize, rot: f64, radius: &dyn Fn(usize) -> f64| {
            poly(
                (0..n)
                    .map(|i| {
                        let a = rot + i as f64 * std::f64::consts::TAU / n as f64;
                        (radius(i) * a.cos(), radius(i) * a.sin())
                    })
                    .collect(),
            )
        };
        let up = -std::f64::consts::FRAC_PI_2;
        match self {
            Glyph::Circle => regular(16, 0.0, &|_| 1.0),
            Glyph::Square => poly(vec![(-0.85, -0.85), (0.85, -0.85), (0.85, 0.85), (-0.85, 0.85)]),
            Glyph::TriangleUp => regular(3, up, &|_| 1.1),
            Glyph::TriangleDown => regular(3, -up, &|_| 1.1),
            Glyph::Diamond => regular(4, up, &|_| 1.1),
            Glyph::Hexagon => regular(6, 0.0, &|_| 1.0),
            Glyph::Star => regular(10, up, &|i| if i % 2 == 0 { 1.15 } else { 0.5 }),
            Glyph::Plus => poly(vec![
                (-0.3, -1.0),
                (0.3, -1.0),
                (0.3, -0.3),
                (1.0, -0.3),
                (1.0, 0.3),
                (0.3, 0.3),
                (0.3, 1.0),
                (-0.3, 1.0),
                (-0.3, 0.3),
                (-1.0, 0.3),
                (-1.0, -0.3),
                (-0.3, -0.3),
            ]),
            Glyph::Cross => regular(12, std::f64::consts::FRAC_PI_4 - 0.3, &|i| if i % 3 == 1 { 0.42 } else { 1.0 }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelItem {
    pub label: String,
    /// Facet cell `(col, row)`, both counted from the bottom left.
    pub cell: (usize, usize),
    pub x: f64,
    pub y: f64,
    /// Axis along which the item is drawn as an extent from zero.
    pub extent: Option<Axis>,
    /// Symbol area as a share of the largest symbol.
    pub size: f64,
    pub color: String,
    pub glyph: Glyph,
    /// Order of the other attribute, used to connect lines and areas.
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelGeometry {
    pub config: String,
    pub mark: Mark,
    pub cols: usize,
    pub rows: usize,
    /// Axis carrying the other attribute, for area baselines.
    pub other_axis: Option<Axis>,
    pub items: Vec<PanelItem>,
}

#[derive(Debug, Clone, Copy)]
struct Encoded {
    norm: f64,
    level: usize,
}

const INTENSITY_LOW: (f64, f64, f64) = (222.0, 235.0, 247.0);
const INTENSITY_HIGH: (f64, f64, f64) = (8.0, 48.0, 107.0);
const DEFAULT_FILL: &str = "#4c78a8";

fn ramp(t: f64) -> String {
    let mix = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(INTENSITY_LOW.0, INTENSITY_HIGH.0),
        mix(INTENSITY_LOW.1, INTENSITY_HIGH.1),
        mix(INTENSITY_LOW.2, INTENSITY_HIGH.2)
    )
}

fn check_renderable(cfg: &VisConfig) -> Result<(), RenderError> {
    let verdict = validate(cfg);
    if verdict.viable {
        return Ok(());
    }
    let reason = verdict.violations.iter().map(|r| r.name()).collect::<Vec<_>>().join(", ");
    Err(RenderError::UnrenderableConfig { config: grammar::serialize(cfg), reason: format!("violates {reason}") })
}

/// Resolve a viable configuration against a dataset.
pub fn panel_geometry(
    cfg: &VisConfig,
    dataset: &Dataset,
    highlight: &[String],
    style: &StyleSpec,
) -> Result<PanelGeometry, RenderError> {
    check_renderable(cfg)?;
    let probe = RenderSpec::new(RenderTarget::Generic(*cfg), dataset.clone());
    let (exps, emin, emax) = exponents(&probe)?;
    let exp_levels = (emax - emin + 1) as usize;
    let n = dataset.len();

    let mut items = Vec::with_capacity(n);
    for (i, (row, &e)) in dataset.rows.iter().zip(&exps).enumerate() {
        let m = omv::decompose(row.value, DEFAULT_PRECISION).map_err(ScaleError::from)?.mantissa();
        let exp = Encoded { norm: (e - emin) as f64 / (exp_levels - 1).max(1) as f64, level: (e - emin) as usize };
        let mant = Encoded { norm: (m - 1.0) / 9.0, level: (m.floor() as usize).clamp(1, 9) - 1 };
        let other = Encoded { norm: if n > 1 { i as f64 / (n - 1) as f64 } else { 0.5 }, level: i };
        let combined = Encoded {
            norm: (scales::eplusm_forward(row.value).map_err(ScaleError::from)? - emin as f64) / exp_levels as f64,
            level: exp.level,
        };
        let on = |c: Channel| -> Option<Encoded> {
            if cfg.eplusm() && cfg.exp_channel == c {
                Some(combined)
            } else if cfg.exp_channel == c {
                Some(exp)
            } else if cfg.mant_channel == c {
                Some(mant)
            } else if cfg.other_channel == c {
                Some(other)
            } else {
                None
            }
        };

        let place = |c: Channel| on(c).map_or(0.5, |a| 0.08 + 0.84 * a.norm);
        let mut x = place(Channel::PosX);
        let mut y = place(Channel::PosY);
        let extent = on(Channel::Length).map(|a| {
            let axis = length_axis(cfg);
            let t = 0.1 + 0.85 * a.norm;
            match axis {
                Axis::X => x = t,
                Axis::Y => y = t,
            }
            axis
        });
        let size = on(Channel::Area).map_or(0.45, |a| 0.12 + 0.88 * a.norm);
        let color = if highlight.contains(&row.label) {
            style.highlight_color.clone()
        } else if let Some(a) = on(Channel::Hue) {
            PALETTE[(a.level * 2) % PALETTE.len()].to_string()
        } else if let Some(a) = on(Channel::Intensity) {
            ramp(0.1 + 0.9 * a.norm)
        } else {
            DEFAULT_FILL.to_string()
        };
        let glyph = on(Channel::Shape).map_or(Glyph::Circle, |a| Glyph::ALL[a.level % Glyph::ALL.len()]);
        let cell = (on(Channel::Col).map_or(0, |a| a.level), on(Channel::Row).map_or(0, |a| a.level));
        items.push(PanelItem { label: row.label.clone(), cell, x, y, extent, size, color, glyph, order: i });
    }

    let levels = |c: Channel| -> usize {
        if cfg.exp_channel == c {
            exp_levels
        } else if cfg.mant_channel == c {
            9
        } else if cfg.other_channel == c {
            n
        } else {
            1
        }
    };
    let other_axis = match cfg.other_channel {
        Channel::PosX => Some(Axis::X),
        Channel::PosY => Some(Axis::Y),
        _ => None,
    };
    Ok(PanelGeometry {
        config: grammar::serialize(cfg),
        mark: cfg.mark,
        cols: levels(Channel::Col),
        rows: levels(Channel::Row),
        other_axis,
        items,
    })
}

/// Axis for drawn extents: the free positional axis if there is one;
/// otherwise perpendicular to the other attribute's axis or facet, or along
/// the exponent's (then mantissa's) channel.
fn length_axis(cfg: &VisConfig) -> Axis {
    let along = |c: Channel| match c {
        Channel::PosX | Channel::Col => Some(Axis::Y),
        Channel::PosY | Channel::Row => Some(Axis::X),
        _ => None,
    };
    match (cfg.uses(Channel::PosX), cfg.uses(Channel::PosY)) {
        (true, false) => Axis::Y,
        (false, true) => Axis::X,
        _ => along(cfg.other_channel)
            .or_else(|| along(cfg.exp_channel).map(Axis::flip))
            .or_else(|| along(cfg.mant_channel).map(Axis::flip))
            .unwrap_or(Axis::Y),
    }
}

impl PanelGeometry {
    /// The geometry with X/Y and Row/Col exchanged.
    pub fn transposed(&self) -> PanelGeometry {
        PanelGeometry {
            config: self.config.clone(),
            mark: self.mark,
            cols: self.rows,
            rows: self.cols,
            other_axis: self.other_axis.map(Axis::flip),
            items: self
                .items
                .iter()
                .map(|it| PanelItem {
                    cell: (it.cell.1, it.cell.0),
                    x: it.y,
                    y: it.x,
                    extent: it.extent.map(Axis::flip),
                    ..it.clone()
                })
                .collect(),
        }
    }
}

struct Frame {
    grid: PlotArea,
    cell_w: f64,
    cell_h: f64,
}

impl Frame {
    fn px(&self, it: &PanelItem, x: f64, y: f64) -> (f64, f64) {
        (self.grid.x + (it.cell.0 as f64 + x) * self.cell_w, self.grid.bottom() - (it.cell.1 as f64 + y) * self.cell_h)
    }
}

fn draw(geom: &PanelGeometry, width: f64, height: f64, style: &StyleSpec) -> Result<String, RenderError> {
    let grid = PlotArea { x: 24.0, y: 40.0, width: width - 48.0, height: height - 64.0 };
    if !(grid.width > 0.0 && grid.height > 0.0) {
        return Err(RenderError::InvalidSize { width, height });
    }
    let frame = Frame { grid, cell_w: grid.width / geom.cols as f64, cell_h: grid.height / geom.rows as f64 };
    let r_max = (frame.cell_w.min(frame.cell_h) * 0.18).clamp(2.0, 14.0);

    let mut doc = Doc::new(width, height, &style.font_family, style.font_size);
    doc.title(&geom.config);
    doc.text("panel-title", width / 2.0, 22.0, Anchor::Middle, &geom.config);

    doc.open_group(Some("cells"), None);
    for r in 0..geom.rows {
        for c in 0..geom.cols {
            let id = format!("cell-{c}-{r}");
            let x = grid.x + c as f64 * frame.cell_w;
            let y = grid.bottom() - (r + 1) as f64 * frame.cell_h;
            doc.rect(Some(&id), "cell", x, y, frame.cell_w, frame.cell_h, "#f7f7f7");
        }
    }
    doc.close_group();

    if matches!(geom.mark, Mark::Line | Mark::Area) {
        doc.open_group(Some("connections"), None);
        let mut cells: Vec<(usize, usize)> = geom.items.iter().map(|it| it.cell).collect();
        cells.sort_unstable();
        cells.dedup();
        for cell in cells {
            let mut members: Vec<&PanelItem> = geom.items.iter().filter(|it| it.cell == cell).collect();
            members.sort_by_key(|it| it.order);
            if members.first().is_some_and(|it| it.extent.is_some()) {
                continue;
            }
            let pts: Vec<(f64, f64)> = members.iter().map(|it| frame.px(it, it.x, it.y)).collect();
            let id = format!("series-{}-{}", cell.0, cell.1);
            if geom.mark == Mark::Area {
                let mut poly = pts.clone();
                let (first, last) = (members[0], members[members.len() - 1]);
                match geom.other_axis {
                    Some(Axis::Y) => {
                        poly.push(frame.px(last, 0.0, last.y));
                        poly.push(frame.px(first, 0.0, first.y));
                    }
                    _ => {
                        poly.push(frame.px(last, last.x, 0.0));
                        poly.push(frame.px(first, first.x, 0.0));
                    }
                }
                doc.path(Some(&id), "area", &svg::polyline_d(&poly, true), DEFAULT_FILL, None);
            } else if pts.len() > 1 {
                doc.path(Some(&id), "line", &svg::polyline_d(&pts, false), "none", Some((&style.axis, 1.5)));
            }
        }
        doc.close_group();
    }

    doc.open_group(Some("marks"), None);
    for it in &geom.items {
        let id = format!("item-{}", svg::id_safe(&it.label));
        let (px, py) = frame.px(it, it.x, it.y);
        match (it.extent, geom.mark) {
            (Some(axis), Mark::Line) => {
                let thick = r_max * 0.9;
                let (bx, by) = match axis {
                    Axis::X => frame.px(it, 0.0, it.y),
                    Axis::Y => frame.px(it, it.x, 0.0),
                };
                let (x, y, w, h) = match axis {
                    Axis::X => (bx, by - thick / 2.0, px - bx, thick),
                    Axis::Y => (px - thick / 2.0, py, thick, by - py),
                };
                doc.rect(Some(&id), "bar", x, y, w, h, &it.color);
            }
            (Some(axis), _) => {
                let (bx, by) = match axis {
                    Axis::X => frame.px(it, 0.0, it.y),
                    Axis::Y => frame.px(it, it.x, 0.0),
                };
                doc.line(Some(&id), "rule", bx, by, px, py, &it.color, 2.0);
            }
            (None, _) => {
                let r = r_max * it.size.sqrt();
                doc.path(Some(&id), "symbol", &it.glyph.path(px, py, r), &it.color, None);
            }
        }
    }
    doc.close_group();

    doc.open_group(Some("labels"), None);
    for it in &geom.items {
        let (px, py) = frame.px(it, it.x, it.y);
        doc.text("item-label", px + r_max + 2.0, py - r_max, Anchor::Start, &it.label);
    }
    doc.close_group();
    Ok(doc.finish())
}

/// One panel at the spec's size.
pub fn render_panel(cfg: &VisConfig, spec: &RenderSpec) -> Result<String, RenderError> {
    super::check_highlights(spec)?;
    let geom = panel_geometry(cfg, &spec.dataset, &spec.highlight, &spec.style)?;
    draw(&geom, spec.width, spec.height, &spec.style)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GalleryPanel {
    pub config: String,
    pub file: String,
    #[serde(skip)]
    pub svg: String,
}

/// One square panel per configuration, in input order.
pub fn render_gallery(configs: &[VisConfig], dataset: &Dataset) -> Result<Vec<GalleryPanel>, RenderError> {
    let style = StyleSpec::default();
    configs
        .par_iter()
        .map(|cfg| {
            let geom = panel_geometry(cfg, dataset, &[], &style)?;
            Ok(GalleryPanel {
                config: geom.config.clone(),
                file: format!("{}.svg", grammar::filename(cfg)),
                svg: draw(&geom, PANEL_SIZE, PANEL_SIZE, &style)?,
            })
        })
        .collect()
}

pub const GALLERY_INDEX: &str = "index.json";

/// Write each panel plus an `index.json` listing config and file name.
pub fn write_gallery(dir: &Path, panels: &[GalleryPanel]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for p in panels {
        fs::write(dir.join(&p.file), &p.svg)?;
    }
    let index = serde_json::to_string_pretty(panels).map_err(io::Error::other)?;
    fs::write(dir.join(GALLERY_INDEX), index + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{canonical_set, enumerate_all, OtherAttrType};
    use crate::lab::dataset::gallery_dataset;

    fn cfg(text: &str) -> VisConfig {
        grammar::parse(text).unwrap()
    }

    #[test]
    fn canonical_gallery_renders() {
        let panels = render_gallery(&canonical_set(), &gallery_dataset()).unwrap();
        assert_eq!(panels.len(), 168);
        for p in &panels {
            assert!(p.svg.contains(&format!("<title>{}</title>", svg::escape(&p.config))));
        }
        let mut files: Vec<_> = panels.iter().map(|p| &p.file).collect();
        files.sort();
        files.dedup();
        assert_eq!(files.len(), 168);
    }

    #[test]
    fn facet_panel_bands_rows_by_exponent() {
        let c = cfg("point | exp->Row | mant->PosY | nominal->PosX");
        let g = panel_geometry(&c, &gallery_dataset(), &[], &StyleSpec::default()).unwrap();
        assert_eq!((g.cols, g.rows), (1, 7));
        let mut rows: Vec<usize> = g.items.iter().map(|it| it.cell.1).collect();
        rows.sort_unstable();
        assert_eq!(rows, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn mirrored_configs_transpose() {
        let d = gallery_dataset();
        let style = StyleSpec::default();
        let mut checked = 0;
        for c in enumerate_all().into_iter().filter(|c| validate(c).viable) {
            let m = c.mirror();
            let a = panel_geometry(&c, &d, &[], &style).unwrap();
            let b = panel_geometry(&m, &d, &[], &style).unwrap();
            let t = a.transposed();
            assert_eq!(t.items, b.items, "{}", a.config);
            assert_eq!((t.cols, t.rows), (b.cols, b.rows));
            checked += 1;
        }
        assert_eq!(checked, 336);
    }

    #[test]
    fn non_viable_config_is_unrenderable() {
        let c = VisConfig::new(Mark::Point, Channel::Area, Channel::PosX, OtherAttrType::Nominal, Channel::PosX);
        assert!(matches!(render_gallery(&[c], &gallery_dataset()), Err(RenderError::UnrenderableConfig { .. })));
    }

    #[test]
    fn gallery_directory_has_index() {
        let dir = tempfile::tempdir().unwrap();
        let panels = render_gallery(&canonical_set()[..3], &gallery_dataset()).unwrap();
        write_gallery(dir.path(), &panels).unwrap();
        let index: Vec<serde_json::Value> =
            serde_json::from_str(&fs::read_to_string(dir.path().join(GALLERY_INDEX)).unwrap()).unwrap();
        assert_eq!(index.len(), 3);
        for entry in index {
            assert!(dir.path().join(entry["file"].as_str().unwrap()).exists());
        }
    }
}
