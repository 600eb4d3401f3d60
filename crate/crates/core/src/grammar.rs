//! Text form of a visualization configuration.
//!
//! ```text
//! config  = mark "|" binding "|" binding "|" binding ;
//! mark    = "point" | "line" | "area" ;
//! binding = attr "->" channel ;
//! attr    = "exp" | "mant" | "nominal" | "ordinal" | "temporal" | "quant" ;
//! channel = "PosX" | "PosY" | "Row" | "Col" | "Length" | "Area"
//!         | "Intensity" | "Hue" | "Shape" ;
//! ```
//!
//! Keywords are case-insensitive, `↦` is accepted for `->`, and whitespace
//! between tokens is ignored. The parser only checks syntax and arity;
//! constraint checking is [`crate::design::validate`]'s job.

use std::fmt;

use thiserror::Error;

use crate::design::{Channel, Mark, OtherAttrType, VisConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemanticErrorKind {
    /// An attribute was bound more than once.
    DuplicateAttr(String),
    MissingAttr(&'static str),
    /// Two bindings name other-attribute types.
    TwoOtherAttrs,
    /// Not exactly three bindings.
    BindingCount(usize),
}

impl fmt::Display for SemanticErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemanticErrorKind::DuplicateAttr(a) => write!(f, "attribute '{a}' is bound twice"),
            SemanticErrorKind::MissingAttr(a) => write!(f, "no binding for '{a}'"),
            SemanticErrorKind::TwoOtherAttrs => f.write_str("only one of nominal/ordinal/temporal/quant may be bound"),
            SemanticErrorKind::BindingCount(n) => {
                write!(f, "expected exactly 3 bindings, found {n}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {}, found {found}", .expected.join(" or "))]
    Syntax { position: usize, expected: Vec<&'static str>, found: String },
    #[error("semantic error at byte {position}: {kind}")]
    Semantic { position: usize, kind: SemanticErrorKind },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Semantic { position, .. } => *position,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "syntax_error",
            ParseError::Semantic { .. } => "semantic_error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Pipe,
    Arrow,
    Eof,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    /// Next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(ch) = trimmed.chars().next() else {
            return Ok((Tok::Eof, start));
        };
        if ch == '|' {
            self.pos += 1;
            return Ok((Tok::Pipe, start));
        }
        if trimmed.starts_with("->") {
            self.pos += 2;
            return Ok((Tok::Arrow, start));
        }
        if ch == '↦' {
            self.pos += ch.len_utf8();
            return Ok((Tok::Arrow, start));
        }
        if ch.is_ascii_alphabetic() {
            let len = trimmed.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(trimmed.len());
            self.pos += len;
            return Ok((Tok::Word(&trimmed[..len]), start));
        }
        Err(ParseError::Syntax { position: start, expected: vec!["keyword", "'|'", "'->'"], found: format!("'{ch}'") })
    }
}

const MARKS: [&str; 3] = ["point", "line", "area"];
const ATTRS: [&str; 6] = ["exp", "mant", "nominal", "ordinal", "temporal", "quant"];
const CHANNELS: [&str; 9] = ["PosX", "PosY", "Row", "Col", "Length", "Area", "Intensity", "Hue", "Shape"];

fn syntax(position: usize, expected: &[&'static str], found: &Tok) -> ParseError {
    ParseError::Syntax { position, expected: expected.to_vec(), found: found.describe() }
}

fn mark_from(word: &str) -> Option<Mark> {
    Mark::ALL.into_iter().find(|m| m.name().eq_ignore_ascii_case(word))
}

fn channel_from(word: &str) -> Option<Channel> {
    Channel::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Attr {
    Exp,
    Mant,
    Other(OtherAttrType),
}

fn attr_from(word: &str) -> Option<Attr> {
    let lower = word.to_ascii_lowercase();
    Some(match lower.as_str() {
        "exp" => Attr::Exp,
        "mant" => Attr::Mant,
        "nominal" => Attr::Other(OtherAttrType::Nominal),
        "ordinal" => Attr::Other(OtherAttrType::Ordinal),
        "temporal" => Attr::Other(OtherAttrType::Temporal),
        "quant" | "quantitative" => Attr::Other(OtherAttrType::Quantitative),
        _ => return None,
    })
}

fn attr_keyword(attr: OtherAttrType) -> &'static str {
    match attr {
        OtherAttrType::Nominal => "nominal",
        OtherAttrType::Ordinal => "ordinal",
        OtherAttrType::Temporal => "temporal",
        OtherAttrType::Quantitative => "quant",
    }
}

struct Binding {
    attr: Attr,
    channel: Channel,
    position: usize,
}

/// Parse bytes that may not be UTF-8; invalid UTF-8 is a syntax error at the
/// first bad byte.
pub fn parse_bytes(input: &[u8]) -> Result<VisConfig, ParseError> {
    match std::str::from_utf8(input) {
        Ok(text) => parse(text),
        Err(err) => Err(ParseError::Syntax {
            position: err.valid_up_to(),
            expected: vec!["UTF-8 text"],
            found: "invalid byte".into(),
        }),
    }
}

pub fn parse(text: &str) -> Result<VisConfig, ParseError> {
    let mut lex = Lexer::new(text);

    let (tok, pos) = lex.next()?;
    let mark = match tok {
        Tok::Word(w) => mark_from(w).ok_or_else(|| syntax(pos, &MARKS, &tok))?,
        _ => return Err(syntax(pos, &MARKS, &tok)),
    };

    let mut bindings = Vec::new();
    let end = loop {
        let (tok, pos) = lex.next()?;
        match tok {
            Tok::Eof => break pos,
            Tok::Pipe => {}
            _ => return Err(syntax(pos, &["'|'", "end of input"], &tok)),
        }

        let (tok, start) = lex.next()?;
        let attr = match tok {
            Tok::Word(w) => attr_from(w).ok_or_else(|| syntax(start, &ATTRS, &tok))?,
            _ => return Err(syntax(start, &ATTRS, &tok)),
        };
        let (tok, pos) = lex.next()?;
        if tok != Tok::Arrow {
            return Err(syntax(pos, &["'->'"], &tok));
        }
        let (tok, pos) = lex.next()?;
        let channel = match tok {
            Tok::Word(w) => channel_from(w).ok_or_else(|| syntax(pos, &CHANNELS, &tok))?,
            _ => return Err(syntax(pos, &CHANNELS, &tok)),
        };
        bindings.push(Binding { attr, channel, position: start });
    };

    if bindings.len() != 3 {
        let position = bindings.get(3).map_or(end, |b| b.position);
        return Err(ParseError::Semantic { position, kind: SemanticErrorKind::BindingCount(bindings.len()) });
    }

    let mut exp = None;
    let mut mant = None;
    let mut other: Option<(OtherAttrType, Channel)> = None;
    for b in &bindings {
        let dup = |name: &str| ParseError::Semantic {
            position: b.position,
            kind: SemanticErrorKind::DuplicateAttr(name.to_string()),
        };
        match b.attr {
            Attr::Exp if exp.is_some() => return Err(dup("exp")),
            Attr::Exp => exp = Some(b.channel),
            Attr::Mant if mant.is_some() => return Err(dup("mant")),
            Attr::Mant => mant = Some(b.channel),
            Attr::Other(t) => match other {
                Some((prev, _)) if prev == t => return Err(dup(attr_keyword(t))),
                Some(_) => {
                    return Err(ParseError::Semantic { position: b.position, kind: SemanticErrorKind::TwoOtherAttrs })
                }
                None => other = Some((t, b.channel)),
            },
        }
    }
    let missing =
        |name: &'static str| ParseError::Semantic { position: end, kind: SemanticErrorKind::MissingAttr(name) };
    let exp_channel = exp.ok_or_else(|| missing("exp"))?;
    let mant_channel = mant.ok_or_else(|| missing("mant"))?;
    let (other_type, other_channel) = other.ok_or_else(|| missing("other attribute"))?;

    Ok(VisConfig { mark, exp_channel, mant_channel, other_type, other_channel })
}

/// Canonical text: `mark | exp->C | mant->C | attr->C`.
pub fn serialize(cfg: &VisConfig) -> String {
    format!(
        "{} | exp->{} | mant->{} | {}->{}",
        cfg.mark.name(),
        cfg.exp_channel.name(),
        cfg.mant_channel.name(),
        attr_keyword(cfg.other_type),
        cfg.other_channel.name()
    )
}

/// Gallery file stem: `point__exp-Row__mant-PosY__nominal-PosX`.
pub fn filename(cfg: &VisConfig) -> String {
    serialize(cfg).replace('|', "__").replace("->", "-").replace(' ', "")
}
