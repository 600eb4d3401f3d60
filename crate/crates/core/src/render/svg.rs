//! Minimal SVG text builder with fixed number formatting.

use std::fmt::Write;

/// Two decimals, with trailing zeros and negative zero removed.
pub fn num(x: f64) -> String {
    let mut s = format!("{x:.2}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Characters allowed in element ids; anything else becomes `_`.
pub fn id_safe(text: &str) -> String {
    text.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Start,
    Middle,
    End,
}

impl Anchor {
    fn as_str(self) -> &'static str {
        match self {
            Anchor::Start => "start",
            Anchor::Middle => "middle",
            Anchor::End => "end",
        }
    }
}

pub struct Doc {
    buf: String,
    depth: usize,
}

impl Doc {
    pub fn new(width: f64, height: f64, font_family: &str, font_size: f64) -> Self {
        let mut buf = String::new();
        buf.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"{f}\" font-size=\"{s}\">",
            w = num(width),
            h = num(height),
            f = escape(font_family),
            s = num(font_size),
        );
        Self { buf, depth: 1 }
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
    }

    pub fn title(&mut self, text: &str) {
        self.indent();
        let _ = writeln!(self.buf, "<title>{}</title>", escape(text));
    }

    pub fn open_group(&mut self, id: Option<&str>, class: Option<&str>) {
        self.indent();
        self.buf.push_str("<g");
        if let Some(id) = id {
            let _ = write!(self.buf, " id=\"{}\"", escape(id));
        }
        if let Some(class) = class {
            let _ = write!(self.buf, " class=\"{class}\"");
        }
        self.buf.push_str(">\n");
        self.depth += 1;
    }

    pub fn close_group(&mut self) {
        self.depth -= 1;
        self.indent();
        self.buf.push_str("</g>\n");
    }

    #[allow(clippy::too_many_arguments)]
    pub fn rect(&mut self, id: Option<&str>, class: &str, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        self.indent();
        self.buf.push_str("<rect");
        if let Some(id) = id {
            let _ = write!(self.buf, " id=\"{}\"", escape(id));
        }
        let _ = writeln!(
            self.buf,
            " class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>",
            num(x),
            num(y),
            num(w),
            num(h)
        );
    }

    #[allow(clippy::too_many_arguments)]
    pub fn line(
        &mut self,
        id: Option<&str>,
        class: &str,
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        stroke: &str,
        width: f64,
    ) {
        self.indent();
        self.buf.push_str("<line");
        if let Some(id) = id {
            let _ = write!(self.buf, " id=\"{}\"", escape(id));
        }
        let _ = writeln!(
            self.buf,
            " class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }

    pub fn text(&mut self, class: &str, x: f64, y: f64, anchor: Anchor, content: &str) {
        self.indent();
        let _ = writeln!(
            self.buf,
            "<text class=\"{class}\" x=\"{}\" y=\"{}\" text-anchor=\"{}\">{}</text>",
            num(x),
            num(y),
            anchor.as_str(),
            escape(content)
        );
    }

    pub fn path(&mut self, id: Option<&str>, class: &str, d: &str, fill: &str, stroke: Option<(&str, f64)>) {
        self.indent();
        self.buf.push_str("<path");
        if let Some(id) = id {
            let _ = write!(self.buf, " id=\"{}\"", escape(id));
        }
        let _ = write!(self.buf, " class=\"{class}\" d=\"{d}\" fill=\"{fill}\"");
        if let Some((color, width)) = stroke {
            let _ = write!(self.buf, " stroke=\"{color}\" stroke-width=\"{}\"", num(width));
        }
        self.buf.push_str("/>\n");
    }

    pub fn circle(&mut self, id: Option<&str>, class: &str, cx: f64, cy: f64, r: f64, fill: &str) {
        self.indent();
        self.buf.push_str("<circle");
        if let Some(id) = id {
            let _ = write!(self.buf, " id=\"{}\"", escape(id));
        }
        let _ = writeln!(
            self.buf,
            " class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
            num(cx),
            num(cy),
            num(r)
        );
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

/// Path data from points: `M x y L x y ...`, optionally closed.
pub fn polyline_d(points: &[(f64, f64)], close: bool) -> String {
    let mut d = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(*x), num(*y));
    }
    if close {
        d.push_str(" Z");
    }
    d
}
