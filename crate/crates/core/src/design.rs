//! The mantissa/exponent visualization design space.
//!
//! A configuration is a mark plus one channel each for the exponent, the
//! mantissa and one other attribute. Enumeration covers every one-to-one
//! assignment of the nine channels plus the EplusM assignments where exponent
//! and mantissa share `PosX` or `PosY`; [`validate`] applies the constraint
//! set and [`canonicalize`] folds the X/Y and Row/Col mirror pairs.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grammar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Channel {
    PosX,
    PosY,
    Row,
    Col,
    Length,
    Area,
    Intensity,
    Hue,
    Shape,
}

impl Channel {
    pub const ALL: [Channel; 9] = [
        Channel::PosX,
        Channel::PosY,
        Channel::Row,
        Channel::Col,
        Channel::Length,
        Channel::Area,
        Channel::Intensity,
        Channel::Hue,
        Channel::Shape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::PosX => "PosX",
            Channel::PosY => "PosY",
            Channel::Row => "Row",
            Channel::Col => "Col",
            Channel::Length => "Length",
            Channel::Area => "Area",
            Channel::Intensity => "Intensity",
            Channel::Hue => "Hue",
            Channel::Shape => "Shape",
        }
    }

    pub fn is_position(self) -> bool {
        matches!(self, Channel::PosX | Channel::PosY)
    }

    pub fn is_facet(self) -> bool {
        matches!(self, Channel::Row | Channel::Col)
    }

    /// X/Y and Row/Col swap; everything else is fixed.
    pub fn mirror(self) -> Channel {
        match self {
            Channel::PosX => Channel::PosY,
            Channel::PosY => Channel::PosX,
            Channel::Row => Channel::Col,
            Channel::Col => Channel::Row,
            other => other,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Point,
    Line,
    Area,
}

impl Mark {
    pub const ALL: [Mark; 3] = [Mark::Point, Mark::Line, Mark::Area];

    pub fn name(self) -> &'static str {
        match self {
            Mark::Point => "point",
            Mark::Line => "line",
            Mark::Area => "area",
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OtherAttrType {
    Nominal,
    Ordinal,
    Temporal,
    Quantitative,
}

impl OtherAttrType {
    pub const ALL: [OtherAttrType; 4] =
        [OtherAttrType::Nominal, OtherAttrType::Ordinal, OtherAttrType::Temporal, OtherAttrType::Quantitative];

    pub fn name(self) -> &'static str {
        match self {
            OtherAttrType::Nominal => "nominal",
            OtherAttrType::Ordinal => "ordinal",
            OtherAttrType::Temporal => "temporal",
            OtherAttrType::Quantitative => "quantitative",
        }
    }
}

/// Data type of whatever occupies a channel. Exponent and mantissa are both
/// quantitative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DataKind {
    Nominal,
    Ordinal,
    Temporal,
    Quantitative,
}

impl From<OtherAttrType> for DataKind {
    fn from(t: OtherAttrType) -> Self {
        match t {
            OtherAttrType::Nominal => DataKind::Nominal,
            OtherAttrType::Ordinal => DataKind::Ordinal,
            OtherAttrType::Temporal => DataKind::Temporal,
            OtherAttrType::Quantitative => DataKind::Quantitative,
        }
    }
}

/// Mark plus channel bindings for exponent, mantissa and the other attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VisConfig {
    pub mark: Mark,
    pub exp_channel: Channel,
    pub mant_channel: Channel,
    pub other_type: OtherAttrType,
    pub other_channel: Channel,
}

impl VisConfig {
    pub fn new(
        mark: Mark,
        exp_channel: Channel,
        mant_channel: Channel,
        other_type: OtherAttrType,
        other_channel: Channel,
    ) -> Self {
        Self { mark, exp_channel, mant_channel, other_type, other_channel }
    }

    /// Exponent and mantissa share one positional channel.
    pub fn eplusm(&self) -> bool {
        self.exp_channel == self.mant_channel && self.exp_channel.is_position()
    }

    pub fn channels(&self) -> [Channel; 3] {
        [self.exp_channel, self.mant_channel, self.other_channel]
    }

    pub fn uses(&self, channel: Channel) -> bool {
        self.channels().contains(&channel)
    }

    pub fn mirror(&self) -> VisConfig {
        VisConfig {
            exp_channel: self.exp_channel.mirror(),
            mant_channel: self.mant_channel.mirror(),
            other_channel: self.other_channel.mirror(),
            ..*self
        }
    }
}

impl fmt::Display for VisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&grammar::serialize(self))
    }
}

/// Constraint identifiers, in the order they are checked and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// No `PosX` or `PosY` anywhere.
    NoPosition,
    /// `Hue`/`Shape` carry nominal data only.
    ExpressivenessHueShape,
    /// `Intensity` carries ordinal or quantitative data only.
    ExpressivenessIntensity,
    /// `Length`/`Area` carry quantitative data only.
    ExpressivenessLengthArea,
    /// `Row`/`Col` hold the exponent, except exponent plus a nominal other
    /// split across both facet channels.
    FacetOnlyExponent,
    ShapeAreaPointOnly,
    LengthNotOnArea,
    AreaMarkTemporalOnly,
    LineNotQuantitative,
    HueIntensityClash,
    ShapeLengthClash,
    /// A point with `Length` is drawn as a rule, which has no area to size.
    LengthAreaClash,
    /// Line marks are bars or rects laid out along the other attribute, so
    /// that attribute needs `PosX` or `PosY`.
    LineOtherNotPositional,
    DuplicateChannel,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::NoPosition,
        Rule::ExpressivenessHueShape,
        Rule::ExpressivenessIntensity,
        Rule::ExpressivenessLengthArea,
        Rule::FacetOnlyExponent,
        Rule::ShapeAreaPointOnly,
        Rule::LengthNotOnArea,
        Rule::AreaMarkTemporalOnly,
        Rule::LineNotQuantitative,
        Rule::HueIntensityClash,
        Rule::ShapeLengthClash,
        Rule::LengthAreaClash,
        Rule::LineOtherNotPositional,
        Rule::DuplicateChannel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::NoPosition => "NoPosition",
            Rule::ExpressivenessHueShape => "ExpressivenessHueShape",
            Rule::ExpressivenessIntensity => "ExpressivenessIntensity",
            Rule::ExpressivenessLengthArea => "ExpressivenessLengthArea",
            Rule::FacetOnlyExponent => "FacetOnlyExponent",
            Rule::ShapeAreaPointOnly => "ShapeAreaPointOnly",
            Rule::LengthNotOnArea => "LengthNotOnArea",
            Rule::AreaMarkTemporalOnly => "AreaMarkTemporalOnly",
            Rule::LineNotQuantitative => "LineNotQuantitative",
            Rule::HueIntensityClash => "HueIntensityClash",
            Rule::ShapeLengthClash => "ShapeLengthClash",
            Rule::LengthAreaClash => "LengthAreaClash",
            Rule::LineOtherNotPositional => "LineOtherNotPositional",
            Rule::DuplicateChannel => "DuplicateChannel",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintVerdict {
    pub viable: bool,
    pub violations: Vec<Rule>,
}

impl ConstraintVerdict {
    fn from_violations(violations: Vec<Rule>) -> Self {
        Self { viable: violations.is_empty(), violations }
    }
}

fn expressive_for(channel: Channel, kind: DataKind) -> Option<Rule> {
    match channel {
        Channel::Hue | Channel::Shape if kind != DataKind::Nominal => Some(Rule::ExpressivenessHueShape),
        Channel::Intensity if !matches!(kind, DataKind::Ordinal | DataKind::Quantitative) => {
            Some(Rule::ExpressivenessIntensity)
        }
        Channel::Length | Channel::Area if kind != DataKind::Quantitative => Some(Rule::ExpressivenessLengthArea),
        _ => None,
    }
}

/// Check every constraint and report all that fail, in [`Rule::ALL`] order.
pub fn validate(cfg: &VisConfig) -> ConstraintVerdict {
    let mut v = Vec::new();
    let VisConfig { mark, exp_channel: exp, mant_channel: mant, other_type, other_channel: other } = *cfg;

    if !cfg.channels().iter().any(|c| c.is_position()) {
        v.push(Rule::NoPosition);
    }

    let bindings = [(exp, DataKind::Quantitative), (mant, DataKind::Quantitative), (other, DataKind::from(other_type))];
    for rule in [Rule::ExpressivenessHueShape, Rule::ExpressivenessIntensity, Rule::ExpressivenessLengthArea] {
        if bindings.iter().any(|&(channel, kind)| expressive_for(channel, kind) == Some(rule)) {
            v.push(rule);
        }
    }

    let facet_pair = other_type == OtherAttrType::Nominal && exp.is_facet() && other.is_facet() && exp != other;
    if mant.is_facet() || (other.is_facet() && !facet_pair) {
        v.push(Rule::FacetOnlyExponent);
    }

    if mark != Mark::Point && (cfg.uses(Channel::Shape) || cfg.uses(Channel::Area)) {
        v.push(Rule::ShapeAreaPointOnly);
    }
    if mark == Mark::Area && cfg.uses(Channel::Length) {
        v.push(Rule::LengthNotOnArea);
    }
    if mark == Mark::Area && other_type != OtherAttrType::Temporal {
        v.push(Rule::AreaMarkTemporalOnly);
    }
    if mark == Mark::Line && other_type == OtherAttrType::Quantitative {
        v.push(Rule::LineNotQuantitative);
    }
    if cfg.uses(Channel::Hue) && cfg.uses(Channel::Intensity) {
        v.push(Rule::HueIntensityClash);
    }
    if cfg.uses(Channel::Shape) && cfg.uses(Channel::Length) {
        v.push(Rule::ShapeLengthClash);
    }
    if cfg.uses(Channel::Length) && cfg.uses(Channel::Area) {
        v.push(Rule::LengthAreaClash);
    }
    if mark == Mark::Line && !other.is_position() {
        v.push(Rule::LineOtherNotPositional);
    }

    let shared_ok = exp == mant && exp.is_position();
    if other == exp || other == mant || (exp == mant && !shared_ok) {
        v.push(Rule::DuplicateChannel);
    }

    ConstraintVerdict::from_violations(v)
}

/// All configurations for one `(mark, other_type)` block: 504 one-to-one
/// assignments and 16 EplusM assignments, ordered by
/// `(exp_channel, mant_channel, other_channel)`.
pub fn enumerate_block(mark: Mark, other_type: OtherAttrType) -> Vec<VisConfig> {
    let mut out = Vec::with_capacity(520);
    for exp in Channel::ALL {
        for mant in Channel::ALL {
            let shared = exp == mant;
            if shared && !exp.is_position() {
                continue;
            }
            for other in Channel::ALL {
                if other == exp || other == mant {
                    continue;
                }
                out.push(VisConfig::new(mark, exp, mant, other_type, other));
            }
        }
    }
    out
}

/// Every configuration before constraints: 3 marks x 4 other types x 520.
pub fn enumerate_all() -> Vec<VisConfig> {
    let blocks: Vec<(Mark, OtherAttrType)> =
        Mark::ALL.iter().flat_map(|&m| OtherAttrType::ALL.iter().map(move |&t| (m, t))).collect();
    blocks.into_par_iter().flat_map_iter(|(mark, other)| enumerate_block(mark, other)).collect()
}

/// Configurations that satisfy every constraint, in enumeration order.
pub fn viable_set() -> Vec<VisConfig> {
    enumerate_all().into_par_iter().filter(|c| validate(c).viable).collect()
}

/// Pick one of `cfg` and its mirror: at the first binding (exponent, then
/// mantissa, then other) where they differ, keep the variant using `PosY` or
/// `Row`.
pub fn canonicalize(cfg: &VisConfig) -> VisConfig {
    let mirrored = cfg.mirror();
    for (own, theirs) in cfg.channels().into_iter().zip(mirrored.channels()) {
        if own != theirs {
            return if matches!(own, Channel::PosY | Channel::Row) { *cfg } else { mirrored };
        }
    }
    *cfg
}

pub fn is_canonical(cfg: &VisConfig) -> bool {
    canonicalize(cfg) == *cfg
}

/// Viable configurations with mirror duplicates removed, in enumeration order.
pub fn canonical_set() -> Vec<VisConfig> {
    viable_set().into_iter().filter(is_canonical).collect()
}

/// How one rule bites across the full enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule: Rule,
    /// Configurations the rule rejects.
    pub violating: usize,
    /// Configurations rejected by this rule and no other.
    pub sole: usize,
    /// Configurations still standing after applying this rule and every rule
    /// listed before it.
    pub remaining: usize,
}

pub fn rule_table() -> Vec<RuleCount> {
    let verdicts: Vec<ConstraintVerdict> = enumerate_all().iter().map(validate).collect();
    let mut remaining = verdicts.len();
    let mut applied: Vec<Rule> = Vec::new();
    Rule::ALL
        .iter()
        .map(|&rule| {
            let violating = verdicts.iter().filter(|v| v.violations.contains(&rule)).count();
            let sole = verdicts.iter().filter(|v| v.violations == [rule]).count();
            let newly = verdicts
                .iter()
                .filter(|v| v.violations.contains(&rule) && !v.violations.iter().any(|r| applied.contains(r)))
                .count();
            remaining -= newly;
            applied.push(rule);
            RuleCount { rule, violating, sole, remaining }
        })
        .collect()
}

/// Attribute slots shown as rows of the explorer table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrSlot {
    Exp,
    Mant,
    Nominal,
    Ordinal,
    Temporal,
    Quantitative,
}

impl AttrSlot {
    pub const ALL: [AttrSlot; 6] = [
        AttrSlot::Exp,
        AttrSlot::Mant,
        AttrSlot::Nominal,
        AttrSlot::Ordinal,
        AttrSlot::Temporal,
        AttrSlot::Quantitative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AttrSlot::Exp => "exp",
            AttrSlot::Mant => "mant",
            AttrSlot::Nominal => "nominal",
            AttrSlot::Ordinal => "ordinal",
            AttrSlot::Temporal => "temporal",
            AttrSlot::Quantitative => "quantitative",
        }
    }

    fn matches(self, cfg: &VisConfig, channel: Channel) -> bool {
        match self {
            AttrSlot::Exp => cfg.exp_channel == channel,
            AttrSlot::Mant => cfg.mant_channel == channel,
            _ => {
                let ty = match self {
                    AttrSlot::Nominal => OtherAttrType::Nominal,
                    AttrSlot::Ordinal => OtherAttrType::Ordinal,
                    AttrSlot::Temporal => OtherAttrType::Temporal,
                    _ => OtherAttrType::Quantitative,
                };
                cfg.other_type == ty && cfg.other_channel == channel
            }
        }
    }
}

/// One enabled cell of the explorer table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibleCell {
    pub mark: Mark,
    pub attr: AttrSlot,
    pub channel: Channel,
}

/// Cells `(mark, attribute, channel)` used by at least one viable
/// configuration.
pub fn eligibility(viable: &[VisConfig]) -> Vec<EligibleCell> {
    let mut cells = Vec::new();
    for mark in Mark::ALL {
        for attr in AttrSlot::ALL {
            for channel in Channel::ALL {
                if viable.iter().any(|c| c.mark == mark && attr.matches(c, channel)) {
                    cells.push(EligibleCell { mark, attr, channel });
                }
            }
        }
    }
    cells
}

/// CSV export: one row per configuration with its verdict.
pub fn write_csv<W: Write>(configs: &[VisConfig], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mark", "exp", "mant", "other_type", "other", "eplusm", "viable", "violations", "config"])?;
    for cfg in configs {
        let verdict = validate(cfg);
        let violations: Vec<&str> = verdict.violations.iter().map(|r| r.name()).collect();
        w.write_record([
            cfg.mark.name(),
            cfg.exp_channel.name(),
            cfg.mant_channel.name(),
            cfg.other_type.name(),
            cfg.other_channel.name(),
            if cfg.eplusm() { "true" } else { "false" },
            if verdict.viable { "true" } else { "false" },
            &violations.join(";"),
            &grammar::serialize(cfg),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    use Channel::*;

    fn cfg(mark: Mark, e: Channel, m: Channel, t: OtherAttrType, o: Channel) -> VisConfig {
        VisConfig::new(mark, e, m, t, o)
    }

    #[test]
    fn enumeration_arithmetic() {
        let all = enumerate_all();
        assert_eq!(all.len(), 6240);
        for mark in Mark::ALL {
            for t in OtherAttrType::ALL {
                let block: Vec<_> = all.iter().filter(|c| c.mark == mark && c.other_type == t).collect();
                assert_eq!(block.iter().filter(|c| !c.eplusm()).count(), 504);
                assert_eq!(block.iter().filter(|c| c.eplusm()).count(), 16);
            }
        }
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        assert_eq!(all, enumerate_all());
        let key = |c: &VisConfig| (c.mark, c.other_type, c.exp_channel, c.mant_channel, c.other_channel);
        assert!(all.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    }

    #[test]
    fn viable_and_canonical_counts() {
        let viable = viable_set();
        assert_eq!(viable.len(), 336);
        assert_eq!(canonical_set().len(), 168);
        let distinct: HashSet<_> = viable.iter().map(canonicalize).collect();
        assert_eq!(distinct.len(), 168);
    }

    #[test]
    fn facet_point_is_viable() {
        let c = cfg(Mark::Point, Row, PosY, OtherAttrType::Nominal, PosX);
        assert_eq!(validate(&c), ConstraintVerdict { viable: true, violations: vec![] });
    }

    #[test]
    fn no_position_reported() {
        let c = cfg(Mark::Point, Intensity, Length, OtherAttrType::Quantitative, Area);
        let v = validate(&c);
        assert!(!v.viable);
        assert!(v.violations.contains(&Rule::NoPosition));
        // every failing rule is listed, not just the first
        assert!(v.violations.contains(&Rule::LengthAreaClash));
    }

    #[test]
    fn eplusm_with_hue_categories() {
        let point = cfg(Mark::Point, PosY, PosY, OtherAttrType::Nominal, Hue);
        assert!(validate(&point).viable);
        assert!(point.eplusm());
        // bars need the categories on an axis
        let line = cfg(Mark::Line, PosY, PosY, OtherAttrType::Nominal, Hue);
        assert_eq!(validate(&line).violations, vec![Rule::LineOtherNotPositional]);
        let line_x = cfg(Mark::Line, PosY, PosY, OtherAttrType::Nominal, PosX);
        assert!(validate(&line_x).viable);
    }

    #[test]
    fn duplicate_channels() {
        let c = cfg(Mark::Point, Area, PosX, OtherAttrType::Nominal, PosX);
        assert!(validate(&c).violations.contains(&Rule::DuplicateChannel));
        let shared_facet = cfg(Mark::Point, Row, Row, OtherAttrType::Nominal, PosX);
        assert!(validate(&shared_facet).violations.contains(&Rule::DuplicateChannel));
        let eplusm_clash = cfg(Mark::Point, PosX, PosX, OtherAttrType::Nominal, PosX);
        assert!(validate(&eplusm_clash).violations.contains(&Rule::DuplicateChannel));
    }

    #[test]
    fn facet_exception_needs_nominal_other() {
        let nominal = cfg(Mark::Point, Row, PosY, OtherAttrType::Nominal, Col);
        assert!(validate(&nominal).viable);
        let ordinal = cfg(Mark::Point, Row, PosY, OtherAttrType::Ordinal, Col);
        assert_eq!(validate(&ordinal).violations, vec![Rule::FacetOnlyExponent]);
        let mant_row = cfg(Mark::Point, PosY, Row, OtherAttrType::Nominal, PosX);
        assert_eq!(validate(&mant_row).violations, vec![Rule::FacetOnlyExponent]);
        let other_only = cfg(Mark::Point, PosY, Length, OtherAttrType::Nominal, Row);
        assert!(validate(&other_only).violations.contains(&Rule::FacetOnlyExponent));
    }

    #[test]
    fn mark_rules() {
        let v = validate(&cfg(Mark::Line, PosY, Area, OtherAttrType::Nominal, PosX));
        assert_eq!(v.violations, vec![Rule::ShapeAreaPointOnly]);
        let v = validate(&cfg(Mark::Area, PosY, Length, OtherAttrType::Temporal, PosX));
        assert_eq!(v.violations, vec![Rule::LengthNotOnArea]);
        let v = validate(&cfg(Mark::Area, PosY, PosX, OtherAttrType::Nominal, Hue));
        assert!(v.violations.contains(&Rule::AreaMarkTemporalOnly));
        let v = validate(&cfg(Mark::Line, PosY, Length, OtherAttrType::Quantitative, PosX));
        assert_eq!(v.violations, vec![Rule::LineNotQuantitative]);
        let v = validate(&cfg(Mark::Area, PosY, Intensity, OtherAttrType::Temporal, PosX));
        assert!(v.viable);
    }

    #[test]
    fn interference_rules() {
        let v = validate(&cfg(Mark::Point, PosY, Intensity, OtherAttrType::Nominal, Hue));
        assert_eq!(v.violations, vec![Rule::HueIntensityClash]);
        let v = validate(&cfg(Mark::Point, PosY, Length, OtherAttrType::Nominal, Shape));
        assert_eq!(v.violations, vec![Rule::ShapeLengthClash]);
        let v = validate(&cfg(Mark::Point, Area, Length, OtherAttrType::Nominal, PosX));
        assert_eq!(v.violations, vec![Rule::LengthAreaClash]);
    }

    #[test]
    fn expressiveness_rules() {
        let v = validate(&cfg(Mark::Point, Hue, PosY, OtherAttrType::Nominal, PosX));
        assert_eq!(v.violations, vec![Rule::ExpressivenessHueShape]);
        let v = validate(&cfg(Mark::Point, PosY, PosX, OtherAttrType::Temporal, Intensity));
        assert_eq!(v.violations, vec![Rule::ExpressivenessIntensity]);
        let v = validate(&cfg(Mark::Point, PosY, PosX, OtherAttrType::Ordinal, Intensity));
        assert!(v.viable);
        let v = validate(&cfg(Mark::Point, PosY, PosX, OtherAttrType::Ordinal, Length));
        assert_eq!(v.violations, vec![Rule::ExpressivenessLengthArea]);
    }

    #[test]
    fn viable_set_properties() {
        for c in viable_set() {
            assert!(c.uses(PosX) || c.uses(PosY));
            assert!(![Hue, Shape].contains(&c.exp_channel));
            assert!(![Hue, Shape].contains(&c.mant_channel));
            if c.mark == Mark::Area {
                assert_eq!(c.other_type, OtherAttrType::Temporal);
            }
            assert_ne!(c.mirror(), c);
        }
    }

    #[test]
    fn mirror_symmetry() {
        for c in enumerate_all() {
            assert_eq!(c.mirror().mirror(), c);
            assert_eq!(validate(&c), validate(&c.mirror()));
        }
    }

    #[test]
    fn canonicalize_prefers_row_and_posy() {
        let c = cfg(Mark::Point, Col, PosX, OtherAttrType::Nominal, PosY);
        assert_eq!(canonicalize(&c), cfg(Mark::Point, Row, PosY, OtherAttrType::Nominal, PosX));
        for c in viable_set() {
            let once = canonicalize(&c);
            assert_eq!(canonicalize(&once), once);
            assert_eq!(canonicalize(&c.mirror()), once);
        }
    }

    #[test]
    fn rule_table_accounts_for_every_rejection() {
        let table = rule_table();
        assert_eq!(table.len(), Rule::ALL.len());
        assert_eq!(table.last().unwrap().remaining, 336);
        let rejected_any = enumerate_all().iter().filter(|c| !validate(c).viable).count();
        assert_eq!(6240 - rejected_any, 336);
    }

    #[test]
    fn eligibility_greys_hue_for_exponent() {
        let viable = viable_set();
        let cells = eligibility(&viable);
        assert!(!cells
            .iter()
            .any(|c| matches!(c.attr, AttrSlot::Exp | AttrSlot::Mant) && matches!(c.channel, Hue | Shape)));
        // area marks only leave the temporal row among other attributes
        let area_attrs: HashSet<_> = cells.iter().filter(|c| c.mark == Mark::Area).map(|c| c.attr).collect();
        assert!(area_attrs.contains(&AttrSlot::Temporal));
        for a in [AttrSlot::Nominal, AttrSlot::Ordinal, AttrSlot::Quantitative] {
            assert!(!area_attrs.contains(&a));
        }
    }

    #[test]
    fn csv_export_has_header_and_rows() {
        let mut buf = Vec::new();
        write_csv(&viable_set(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 337);
        assert!(text.starts_with("mark,exp,mant,other_type,other,eplusm,viable,violations,config\n"));
    }
}
