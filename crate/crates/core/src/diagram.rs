//! Barannikov diagrams and their renderings.
//!
//! Column `D_k` sits at `x = n - k`, so a coupling segment from an upper point
//! (degree k+1) to its lower partner (degree k) always has negative slope.
//! All output is built with fixed-precision formatting and is byte-deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::complex::text::strip_comment;
use crate::formal::FramedDiagram;
use crate::path::{PathEvent, PathTrace};
use crate::reduction::{BarannikovResult, GeneratorType};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frame {
    Up,
    Down,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frame::Up => "up",
            Frame::Down => "down",
        })
    }
}

impl FromStr for Frame {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "up" => Ok(Frame::Up),
            "down" => Ok(Frame::Down),
            _ => Err(format!("expected `up` or `down`, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramPoint {
    pub name: String,
    pub degree: u32,
    pub value: Value,
    pub kind: GeneratorType,
    pub partner: Option<String>,
    pub frame: Option<Frame>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub dim: u32,
    /// Sorted by value.
    pub points: Vec<DiagramPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("no frame given for {0}")]
    MissingFrame(String),
    #[error("frame given for unknown generator {0:?}")]
    UnknownFrame(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl Diagram {
    /// Coupled pairs `(upper, lower)` in order of the upper point's value.
    pub fn segments(&self) -> Vec<(&DiagramPoint, &DiagramPoint)> {
        let by_name: HashMap<&str, &DiagramPoint> = self.points.iter().map(|p| (p.name.as_str(), p)).collect();
        self.points
            .iter()
            .filter(|p| p.kind == GeneratorType::Upper)
            .filter_map(|p| Some((p, *by_name.get(p.partner.as_deref()?)?)))
            .collect()
    }

    /// Horizontal position of a degree.
    pub fn column(&self, degree: u32) -> i64 {
        self.dim as i64 - degree as i64
    }

    /// The framed diagram with ranks as values.
    pub fn from_framed(d: &FramedDiagram) -> Diagram {
        let points = d
            .points()
            .into_iter()
            .map(|p| {
                let partner = d.partner(&p.id).map(str::to_string);
                let kind = match &partner {
                    None => GeneratorType::Homological,
                    Some(q) => {
                        let q_rank = d.points().iter().find(|x| &x.id == q).unwrap().rank;
                        if q_rank < p.rank {
                            GeneratorType::Upper
                        } else {
                            GeneratorType::Lower
                        }
                    }
                };
                DiagramPoint {
                    name: p.id,
                    degree: p.degree,
                    value: Value::from_i64(p.rank as i64),
                    kind,
                    partner,
                    frame: Some(p.frame),
                }
            })
            .collect();
        Diagram { dim: d.dim(), points }
    }
}

/// One point per generator, one segment per couple. `frames`, if given, must cover every generator.
pub fn build_diagram(r: &BarannikovResult, frames: Option<&BTreeMap<String, Frame>>) -> Result<Diagram, DiagramError> {
    let c = r.complex();
    if let Some(frames) = frames {
        if let Some(name) = frames.keys().find(|n| c.index_of(n).is_none()) {
            return Err(DiagramError::UnknownFrame(name.clone()));
        }
        if let Some(g) = c.generators().iter().find(|g| !frames.contains_key(&g.name)) {
            return Err(DiagramError::MissingFrame(g.name.clone()));
        }
    }
    let points = c
        .generators()
        .iter()
        .map(|g| DiagramPoint {
            name: g.name.clone(),
            degree: g.degree,
            value: g.value.clone(),
            kind: r.generator_type(&g.name).unwrap(),
            partner: r.partner(&g.name).map(str::to_string),
            frame: frames.map(|f| f[&g.name]),
        })
        .collect();
    Ok(Diagram {
        dim: c.effective_dim(),
        points,
    })
}

/// Parses `frame NAME up|down` lines.
pub fn parse_frames(text: &str) -> Result<BTreeMap<String, Frame>, DiagramError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let err = |message: String| DiagramError::Syntax { line, message };
        match words[..] {
            [] => {}
            ["frame", name, f] => {
                let f: Frame = f.parse().map_err(err)?;
                if out.insert(name.to_string(), f).is_some() {
                    return Err(err(format!("second frame for {name}")));
                }
            }
            _ => return Err(err(format!("expected `frame NAME up|down`, got {:?}", raw.trim()))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YMode {
    /// Evenly spaced by value order.
    Rank,
    Value,
}

impl FromStr for YMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rank" => Ok(YMode::Rank),
            "value" => Ok(YMode::Value),
            _ => Err(format!("expected `rank` or `value`, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub y_mode: YMode,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 480,
            height: 360,
            margin: 40,
            y_mode: YMode::Rank,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

// Maps values to a vertical pixel coordinate.
struct YScale {
    mode: YMode,
    ranks: HashMap<Value, usize>,
    lo: f64,
    hi: f64,
    top: f64,
    bottom: f64,
}

impl YScale {
    fn new<'a>(values: impl IntoIterator<Item = &'a Value>, opts: &RenderSpec) -> Self {
        let distinct: BTreeSet<&Value> = values.into_iter().collect();
        let lo = distinct.first().map_or(0.0, |v| v.to_f64());
        let hi = distinct.last().map_or(1.0, |v| v.to_f64());
        YScale {
            mode: opts.y_mode,
            ranks: distinct.into_iter().enumerate().map(|(i, v)| (v.clone(), i)).collect(),
            lo,
            hi,
            top: opts.margin as f64,
            bottom: opts.height as f64 - opts.margin as f64,
        }
    }

    fn y(&self, v: &Value) -> f64 {
        let t = match self.mode {
            YMode::Rank => {
                let n = self.ranks.len().saturating_sub(1).max(1) as f64;
                self.ranks.get(v).copied().unwrap_or(0) as f64 / n
            }
            YMode::Value => {
                if self.hi > self.lo {
                    (v.to_f64() - self.lo) / (self.hi - self.lo)
                } else {
                    0.0
                }
            }
        };
        self.bottom - t * (self.bottom - self.top)
    }
}

fn svg_open(out: &mut String, opts: &RenderSpec) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#,
        w = opts.width,
        h = opts.height
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{}" height="{}" fill="white"/>"#,
        opts.width, opts.height
    )
    .unwrap();
}

fn arrow(out: &mut String, x: f64, y: f64, frame: Frame) {
    let (tip, s) = match frame {
        Frame::Up => (y - 12.0, 1.0),
        Frame::Down => (y + 12.0, -1.0),
    };
    writeln!(
        out,
        r#"<path class="frame" d="M {x:.2} {y:.2} L {x:.2} {tip:.2} M {l:.2} {b:.2} L {x:.2} {tip:.2} L {r:.2} {b:.2}" stroke="black" fill="none"/>"#,
        l = x - 3.0,
        r = x + 3.0,
        b = tip + 4.0 * s,
    )
    .unwrap();
}

/// Standalone SVG of a (possibly framed) Barannikov diagram.
pub fn render_svg(d: &Diagram, opts: &RenderSpec) -> String {
    let mut out = String::new();
    svg_open(&mut out, opts);
    let (left, right) = (opts.margin as f64, opts.width as f64 - opts.margin as f64);
    let x_of = |col: i64| {
        if d.dim == 0 {
            (left + right) / 2.0
        } else {
            left + col as f64 * (right - left) / d.dim as f64
        }
    };
    let scale = YScale::new(d.points.iter().map(|p| &p.value), opts);
    let (top, bottom) = (
        opts.margin as f64 - 10.0,
        opts.height as f64 - opts.margin as f64 + 10.0,
    );
    for k in (0..=d.dim).rev() {
        let x = x_of(d.column(k));
        writeln!(
            out,
            r#"<line class="column" x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="gray" stroke-dasharray="4 4"/>"#
        )
        .unwrap();
        writeln!(
            out,
            r#"<text class="column-label" x="{x:.2}" y="{:.2}" text-anchor="middle">D<tspan baseline-shift="sub">{k}</tspan></text>"#,
            bottom + 14.0
        )
        .unwrap();
    }
    let pos = |p: &DiagramPoint| (x_of(d.column(p.degree)), scale.y(&p.value));
    for (u, l) in d.segments() {
        let ((x1, y1), (x2, y2)) = (pos(u), pos(l));
        writeln!(
            out,
            r#"<line class="segment" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1.5"/>"#
        )
        .unwrap();
    }
    for p in &d.points {
        let (x, y) = pos(p);
        writeln!(
            out,
            r#"<circle class="dot" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"><title>{}</title></circle>"#,
            escape(&p.name)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text class="name" x="{:.2}" y="{:.2}">{}</text>"#,
            x + 12.0,
            y + 4.0,
            escape(&p.name)
        )
        .unwrap();
        if let Some(f) = p.frame {
            arrow(&mut out, x - 8.0, y, f);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Fixed-width text rendering: one row per point, highest value first.
///
/// Cells read `*name`, then `^` or `v` for the frame, then `[i]` for the i-th couple.
pub fn render_ascii(d: &Diagram) -> String {
    let couple_of: HashMap<&str, usize> = d
        .segments()
        .iter()
        .enumerate()
        .flat_map(|(i, (u, l))| [(u.name.as_str(), i + 1), (l.name.as_str(), i + 1)])
        .collect();
    let cell = |p: &DiagramPoint| {
        let mut s = format!("*{}", p.name);
        match p.frame {
            Some(Frame::Up) => s.push('^'),
            Some(Frame::Down) => s.push('v'),
            None => {}
        }
        if let Some(i) = couple_of.get(p.name.as_str()) {
            write!(s, "[{i}]").unwrap();
        }
        s
    };
    let labels: Vec<String> = d.points.iter().map(|p| p.value.to_string()).collect();
    let label_w = labels.iter().map(String::len).max().unwrap_or(0);
    let cells: Vec<String> = d.points.iter().map(cell).collect();
    let col_w = cells
        .iter()
        .map(String::len)
        .chain([2 + d.dim.to_string().len()])
        .max()
        .unwrap()
        + 2;

    let mut out = String::new();
    let mut header = " ".repeat(label_w + 2);
    for k in (0..=d.dim).rev() {
        write!(header, "{:<col_w$}", format!("D{k}")).unwrap();
    }
    out.push_str(header.trim_end());
    out.push('\n');
    for i in (0..d.points.len()).rev() {
        let p = &d.points[i];
        let mut row = format!("{:>label_w$}  ", labels[i]);
        for k in (0..=d.dim).rev() {
            let text = if k == p.degree { cells[i].as_str() } else { "" };
            write!(row, "{text:<col_w$}").unwrap();
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Cerf diagram of a path: one polyline per generator lifetime, a cusp at
/// every birth and death, transversal crossings at swaps.
pub fn render_cerf(trace: &PathTrace, opts: &RenderSpec) -> String {
    let mut states = vec![&trace.initial];
    states.extend(trace.steps.iter().map(|s| &s.complex));
    let mut out = String::new();
    svg_open(&mut out, opts);
    let (left, right) = (opts.margin as f64, opts.width as f64 - opts.margin as f64);
    let n_steps = trace.steps.len();
    let x_of = |s: f64| left + s * (right - left) / n_steps.max(1) as f64;
    let scale = YScale::new(
        states.iter().flat_map(|c| c.generators().iter().map(|g| &g.value)),
        opts,
    );
    let (top, bottom) = (opts.margin as f64, opts.height as f64 - opts.margin as f64);

    writeln!(
        out,
        r#"<line class="axis" x1="{left:.2}" y1="{bottom:.2}" x2="{right:.2}" y2="{bottom:.2}" stroke="gray"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<line class="axis" x1="{left:.2}" y1="{top:.2}" x2="{left:.2}" y2="{bottom:.2}" stroke="gray"/>"#
    )
    .unwrap();
    for s in 0..=n_steps {
        writeln!(
            out,
            r#"<text class="step-label" x="{:.2}" y="{:.2}" text-anchor="middle">{s}</text>"#,
            x_of(s as f64),
            bottom + 14.0
        )
        .unwrap();
    }

    // Cusp points keyed by (step of the event, generator name).
    let mut cusps: HashMap<(usize, &str), (f64, f64)> = HashMap::new();
    let mut glyphs = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let (p, q, at) = match &step.event {
            PathEvent::Birth { p, q, .. } => (p, q, states[i + 1]),
            PathEvent::Death { p, q } => (p, q, states[i]),
            PathEvent::Swap { .. } => continue,
        };
        let vp = &at.generator(p).unwrap().value;
        let vq = &at.generator(q).unwrap().value;
        let point = (x_of(i as f64 + 0.5), (scale.y(vp) + scale.y(vq)) / 2.0);
        cusps.insert((i, p.as_str()), point);
        cusps.insert((i, q.as_str()), point);
        glyphs.push((point, matches!(step.event, PathEvent::Birth { .. })));
    }

    let mut names: Vec<&str> = Vec::new();
    for c in &states {
        for g in c.generators() {
            if !names.contains(&g.name.as_str()) {
                names.push(&g.name);
            }
        }
    }
    for name in names {
        let mut run: Vec<(f64, f64)> = Vec::new();
        let flush = |run: &mut Vec<(f64, f64)>, out: &mut String| {
            if run.len() >= 2 {
                let pts: Vec<String> = run.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                writeln!(
                    out,
                    r#"<polyline class="curve" points="{}" fill="none" stroke="black"><title>{}</title></polyline>"#,
                    pts.join(" "),
                    escape(name)
                )
                .unwrap();
            }
            run.clear();
        };
        for (s, c) in states.iter().enumerate() {
            match c.generator(name) {
                Some(g) => {
                    if run.is_empty() && s > 0 {
                        if let Some(&pt) = cusps.get(&(s - 1, name)) {
                            run.push(pt);
                        }
                    }
                    run.push((x_of(s as f64), scale.y(&g.value)));
                }
                None => {
                    if !run.is_empty() {
                        if let Some(&pt) = cusps.get(&(s - 1, name)) {
                            run.push(pt);
                        }
                    }
                    flush(&mut run, &mut out);
                }
            }
        }
        flush(&mut run, &mut out);
    }
    for ((x, y), birth) in glyphs {
        let dx = if birth { 6.0 } else { -6.0 };
        writeln!(
            out,
            r#"<path class="cusp" d="M {:.2} {:.2} L {x:.2} {y:.2} L {:.2} {:.2}" stroke="red" fill="none"/>"#,
            x + dx,
            y - 6.0,
            x + dx,
            y + 6.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
