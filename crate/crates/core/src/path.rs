//! Generic one-parameter events on a filtered complex.
//!
//! A path is a sequence of births, deaths and transpositions of two adjacent
//! critical values. Each transposition is classified against the three crossing
//! bifurcations: the coupling is recomputed on both sides, and the condition
//! predicting a change is evaluated separately with the rank oracles of
//! [`crate::reduction`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use thiserror::Error;

use crate::complex::{axpy, text::strip_comment, text::valid_name, Chain, FilteredComplex, Generator};
use crate::linalg::EchelonBasis;
use crate::reduction::{class_birth, class_death, reduce, BarannikovResult, GeneratorType, ReductionError};
use crate::scalar::Scalar;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathEvent {
    /// Inserts `q` (degree `degree`) and `p` (degree `degree + 1`) with adjacent
    /// fresh values just below `below`, and `∂p = q`.
    Birth {
        p: String,
        q: String,
        degree: u32,
        below: Value,
    },
    Death {
        p: String,
        q: String,
    },
    Swap {
        a: String,
        b: String,
    },
}

impl fmt::Display for PathEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathEvent::Birth { p, q, degree, below } => write!(f, "birth {p} {q} {degree} below {below}"),
            PathEvent::Death { p, q } => write!(f, "death {p} {q}"),
            PathEvent::Swap { a, b } => write!(f, "swap {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator name {0:?} is already in use")]
    NameInUse(String),
    #[error("birth needs two distinct valid names, got {0:?} and {1:?}")]
    BadNames(String, String),
    #[error("degree {degree} is above the ambient dimension {dim}")]
    DegreeAboveDim { degree: u32, dim: u32 },
    #[error("{a} and {b} are not adjacent in value order")]
    NotAdjacent { a: String, b: String },
    #[error("{a} and {b} are incident, their values cannot cross")]
    Incident { a: String, b: String },
    #[error("{p} and {q} are not a coupled pair with {p} upper")]
    NotCoupled { p: String, q: String },
    #[error("the coefficient of {q} in the boundary of {p} is zero")]
    ZeroCoefficient { p: String, q: String },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

fn index(c: &FilteredComplex, name: &str) -> Result<usize, EventError> {
    c.index_of(name)
        .ok_or_else(|| EventError::UnknownGenerator(name.to_string()))
}

fn rebuild(
    c: &FilteredComplex,
    generators: Vec<Generator>,
    boundary: BTreeMap<String, Chain>,
) -> Result<FilteredComplex, EventError> {
    FilteredComplex::new(c.field(), c.ambient_dim(), generators, boundary)
        .map_err(|e| EventError::Internal(e.to_string()))
}

/// Applies one event. Births and swaps leave every other boundary untouched;
/// a death first cancels the unit pivot between `p` and `q`.
pub fn apply_event(c: &FilteredComplex, e: &PathEvent) -> Result<FilteredComplex, EventError> {
    match e {
        PathEvent::Birth { p, q, degree, below } => birth(c, p, q, *degree, below),
        PathEvent::Death { p, q } => death(c, p, q),
        PathEvent::Swap { a, b } => swap(c, a, b),
    }
}

fn birth(c: &FilteredComplex, p: &str, q: &str, degree: u32, below: &Value) -> Result<FilteredComplex, EventError> {
    if p == q || !valid_name(p) || !valid_name(q) {
        return Err(EventError::BadNames(p.to_string(), q.to_string()));
    }
    for name in [p, q] {
        if c.index_of(name).is_some() {
            return Err(EventError::NameInUse(name.to_string()));
        }
    }
    if let Some(dim) = c.ambient_dim() {
        if degree + 1 > dim {
            return Err(EventError::DegreeAboveDim {
                degree: degree + 1,
                dim,
            });
        }
    }
    let lo = c
        .generators()
        .iter()
        .rev()
        .find(|g| g.value < *below)
        .map(|g| g.value.clone())
        .unwrap_or_else(|| Value(below.as_rational() - num_rational::BigRational::from_integer(1.into())));
    let vq = lo.midpoint(below);
    let vp = vq.midpoint(below);
    let (mut generators, mut boundary) = c.to_parts();
    generators.push(Generator::new(q, degree, vq));
    generators.push(Generator::new(p, degree + 1, vp));
    boundary.insert(p.to_string(), Chain::zero(degree as i64).with_term(q, c.field().one()));
    rebuild(c, generators, boundary)
}

fn death(c: &FilteredComplex, p: &str, q: &str) -> Result<FilteredComplex, EventError> {
    let ip = index(c, p)?;
    let iq = index(c, q)?;
    let r = reduce(c)?;
    if r.generator_type(p) != Some(GeneratorType::Upper) || r.partner(p) != Some(q) {
        return Err(EventError::NotCoupled {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    if ip != iq + 1 {
        return Err(EventError::NotAdjacent {
            a: q.to_string(),
            b: p.to_string(),
        });
    }
    let pivot = c
        .column(ip)
        .get(&iq)
        .cloned()
        .ok_or_else(|| EventError::ZeroCoefficient {
            p: p.to_string(),
            q: q.to_string(),
        })?;
    // ∂'x = ∂x - (<∂x, q> / <∂p, q>) ∂p, then drop p from every boundary.
    let mut boundary = BTreeMap::new();
    for (j, g) in c.generators().iter().enumerate() {
        if j == ip || j == iq {
            continue;
        }
        let mut col = c.column(j).clone();
        if let Some(x) = col.get(&iq).cloned() {
            let coef = x.checked_div(&pivot).expect("nonzero pivot").neg();
            axpy(&mut col, &coef, c.column(ip));
        }
        col.remove(&ip);
        if !col.is_empty() {
            boundary.insert(g.name.clone(), c.column_to_chain(g.degree as i64 - 1, &col));
        }
    }
    let generators = c
        .generators()
        .iter()
        .filter(|g| g.name != p && g.name != q)
        .cloned()
        .collect();
    rebuild(c, generators, boundary)
}

fn swap(c: &FilteredComplex, a: &str, b: &str) -> Result<FilteredComplex, EventError> {
    let ia = index(c, a)?;
    let ib = index(c, b)?;
    if ia.abs_diff(ib) != 1 {
        return Err(EventError::NotAdjacent {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    if c.column(ia).contains_key(&ib) || c.column(ib).contains_key(&ia) {
        return Err(EventError::Incident {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let (mut generators, boundary) = c.to_parts();
    let va = c.generators()[ia].value.clone();
    let vb = c.generators()[ib].value.clone();
    for g in generators.iter_mut() {
        if g.name == a {
            g.value = vb.clone();
        } else if g.name == b {
            g.value = va.clone();
        }
    }
    rebuild(c, generators, boundary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The lower-value generator is upper type, the higher-value one lower type.
    Left,
    /// The lower-value generator is lower type, the higher-value one upper type.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationCase {
    A(Side),
    B,
    C,
    None,
    Extremal,
}

impl fmt::Display for BifurcationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BifurcationCase::A(Side::Left) => "A-left",
            BifurcationCase::A(Side::Right) => "A-right",
            BifurcationCase::B => "B",
            BifurcationCase::C => "C",
            BifurcationCase::None => "none",
            BifurcationCase::Extremal => "extremal",
        })
    }
}

/// Classification of one transposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifurcationReport {
    pub event: PathEvent,
    pub same_index: bool,
    pub case: BifurcationCase,
    /// The independently evaluated condition; `None` when no case condition applies.
    pub condition_held: Option<bool>,
    /// Whether the partner map or the type map changed.
    pub changed: bool,
    pub coupling_before: BTreeMap<String, Option<String>>,
    pub coupling_after: BTreeMap<String, Option<String>>,
}

/// Classifies the swap of `a` and `b` in `c`.
pub fn classify_transposition(c: &FilteredComplex, e: &PathEvent) -> Result<BifurcationReport, EventError> {
    let before = reduce(c)?;
    Ok(classify_with(c, &before, e)?.2)
}

fn classify_with(
    c: &FilteredComplex,
    before: &BarannikovResult,
    e: &PathEvent,
) -> Result<(FilteredComplex, BarannikovResult, BifurcationReport), EventError> {
    let PathEvent::Swap { a, b } = e else {
        return Err(EventError::Internal(format!("{e} is not a transposition")));
    };
    let next = swap(c, a, b)?;
    let after = reduce(&next)?;
    // lo has the smaller value before the swap
    let (lo, hi) = if index(c, a)? < index(c, b)? { (a, b) } else { (b, a) };
    let g_lo = c.generator(lo).unwrap();
    let g_hi = c.generator(hi).unwrap();
    let same_index = g_lo.degree == g_hi.degree;
    let t_lo = before.generator_type(lo).unwrap();
    let t_hi = before.generator_type(hi).unwrap();

    use GeneratorType::*;
    let (case, condition_held) = if !same_index {
        (BifurcationCase::None, None)
    } else if t_lo == Homological || t_hi == Homological {
        (BifurcationCase::Extremal, None)
    } else {
        match (t_lo, t_hi) {
            (Upper, Lower) => (
                BifurcationCase::A(Side::Left),
                Some(proportional_boundaries(c, lo, hi)?),
            ),
            (Lower, Upper) => (BifurcationCase::A(Side::Right), Some(false)),
            (Upper, Upper) => {
                let ceiling = &g_lo.value;
                let l1 = class_birth(c, &c.boundary_of(lo).unwrap(), ceiling)?;
                let l2 = class_birth(c, &c.boundary_of(hi).unwrap(), ceiling)?;
                (BifurcationCase::B, Some(l1 == l2))
            }
            (Lower, Lower) => {
                let floor = Some(&g_lo.value);
                let unit = |n: &str| Chain::zero(g_lo.degree as i64).with_term(n, c.field().one());
                let m1 = class_death(c, &unit(lo), floor)?;
                let m2 = class_death(c, &unit(hi), floor)?;
                (BifurcationCase::C, Some(m1 == m2))
            }
            _ => unreachable!("homological handled above"),
        }
    };

    let changed = before.partner_map() != after.partner_map() || before.types() != after.types();
    let mut affected: BTreeSet<String> = [lo.clone(), hi.clone()].into();
    for r in [before, &after] {
        for n in [lo, hi] {
            if let Some(p) = r.partner(n) {
                affected.insert(p.to_string());
            }
        }
    }
    let restrict = |r: &BarannikovResult| {
        affected
            .iter()
            .map(|n| (n.clone(), r.partner(n).map(str::to_string)))
            .collect()
    };
    let report = BifurcationReport {
        event: e.clone(),
        same_index,
        case,
        condition_held,
        changed,
        coupling_before: restrict(before),
        coupling_after: restrict(&after),
    };
    Ok((next, after, report))
}

// [∂hi] is a nonzero multiple of [∂lo] in the homology of the sublevel strictly below lo.
fn proportional_boundaries(c: &FilteredComplex, lo: &str, hi: &str) -> Result<bool, EventError> {
    let ilo = index(c, lo)?;
    let ihi = index(c, hi)?;
    let k = c.generators()[ilo].degree;
    let dense = |i: usize| -> Vec<Scalar> {
        let mut v = vec![c.field().zero(); c.len()];
        for (&j, s) in c.column(i) {
            v[j] = s.clone();
        }
        v
    };
    let mut span = EchelonBasis::new(c.field(), c.len());
    for i in c.degree_indices(k) {
        if i < ilo {
            span.insert(&dense(i));
        }
    }
    let d_hi = dense(ihi);
    if span.contains(&d_hi) {
        return Ok(false);
    }
    span.insert(&dense(ilo));
    Ok(span.contains(&d_hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub event: PathEvent,
    pub complex: FilteredComplex,
    pub result: BarannikovResult,
    pub report: Option<BifurcationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub initial: FilteredComplex,
    pub initial_result: BarannikovResult,
    pub steps: Vec<PathStep>,
}

impl PathTrace {
    pub fn last_complex(&self) -> &FilteredComplex {
        self.steps.last().map_or(&self.initial, |s| &s.complex)
    }

    pub fn last_result(&self) -> &BarannikovResult {
        self.steps.last().map_or(&self.initial_result, |s| &s.result)
    }

    /// One line per step, as printed by the command line tool.
    pub fn render_reports(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            write!(out, "{} {}", i + 1, step.event).unwrap();
            match (&step.event, &step.report) {
                (_, Some(r)) => {
                    write!(out, " | case {}", r.case).unwrap();
                    if let Some(held) = r.condition_held {
                        write!(out, " | condition {held}").unwrap();
                    }
                    write!(out, " | {}", if r.changed { "changed" } else { "unchanged" }).unwrap();
                    write!(
                        out,
                        " | {} => {}",
                        format_coupling(&r.coupling_before),
                        format_coupling(&r.coupling_after)
                    )
                    .unwrap();
                }
                (PathEvent::Birth { p, .. }, None) => {
                    let partner = step.result.partner(p).unwrap_or("-");
                    write!(out, " | {p}->{partner}").unwrap();
                }
                _ => {}
            }
            out.push('\n');
        }
        out
    }
}

fn format_coupling(m: &BTreeMap<String, Option<String>>) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(n, p)| format!("{n}:{}", p.as_deref().unwrap_or("-")))
        .collect();
    parts.join(" ")
}

/// A failed path: the failing event, why, and everything before it.
#[derive(Debug, Clone, Error)]
#[error("event {} ({event}): {reason}", .index + 1)]
pub struct PathError {
    /// Zero-based position of the failing event.
    pub index: usize,
    pub event: PathEvent,
    pub reason: EventError,
    /// The steps before the failing event; `None` when the initial complex is invalid.
    pub trace: Option<Box<PathTrace>>,
}

/// Runs `events` from `c`, reducing after every step.
#[allow(clippy::result_large_err)]
pub fn run_path(c: &FilteredComplex, events: &[PathEvent]) -> Result<PathTrace, PathError> {
    let fail = |index: usize, event: &PathEvent, reason: EventError, trace: PathTrace| PathError {
        index,
        event: event.clone(),
        reason,
        trace: Some(Box::new(trace)),
    };
    let initial_result = reduce(c).map_err(|e| PathError {
        index: 0,
        event: events.first().cloned().unwrap_or(PathEvent::Swap {
            a: String::new(),
            b: String::new(),
        }),
        reason: e.into(),
        trace: None,
    })?;
    let mut trace = PathTrace {
        initial: c.clone(),
        initial_result,
        steps: Vec::new(),
    };
    for (i, event) in events.iter().enumerate() {
        let step = match event {
            PathEvent::Swap { .. } => {
                classify_with(trace.last_complex(), trace.last_result(), event).map(|(complex, result, report)| {
                    PathStep {
                        event: event.clone(),
                        complex,
                        result,
                        report: Some(report),
                    }
                })
            }
            _ => apply_event(trace.last_complex(), event).and_then(|complex| {
                let result = reduce(&complex)?;
                Ok(PathStep {
                    event: event.clone(),
                    complex,
                    result,
                    report: None,
                })
            }),
        };
        match step {
            Ok(s) => trace.steps.push(s),
            Err(reason) => return Err(fail(i, event, reason, trace)),
        }
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct PathParseError {
    pub line: usize,
    pub message: String,
}

/// Parses a path file, keeping the line number of every event.
pub fn parse_path_lines(text: &str) -> Result<Vec<(usize, PathEvent)>, PathParseError> {
    let mut events = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let err = |message: String| PathParseError { line, message };
        let event = match words[..] {
            [] => continue,
            ["birth", p, q, k, "below", v] => PathEvent::Birth {
                p: p.to_string(),
                q: q.to_string(),
                degree: k.parse().map_err(|_| err(format!("bad degree {k:?}")))?,
                below: v.parse().map_err(|e| err(format!("{e}")))?,
            },
            ["death", p, q] => PathEvent::Death {
                p: p.to_string(),
                q: q.to_string(),
            },
            ["swap", a, b] => PathEvent::Swap {
                a: a.to_string(),
                b: b.to_string(),
            },
            _ => {
                return Err(err(format!(
                    "expected `birth P Q K below V`, `death P Q` or `swap A B`, got {:?}",
                    raw.trim()
                )))
            }
        };
        events.push((line, event));
    }
    Ok(events)
}

pub fn parse_path(text: &str) -> Result<Vec<PathEvent>, PathParseError> {
    Ok(parse_path_lines(text)?.into_iter().map(|(_, e)| e).collect())
}

pub fn print_path(events: &[PathEvent]) -> String {
    events.iter().map(|e| format!("{e}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    fn ex1() -> FilteredComplex {
        parse_complex(
            "field F2\ngenerator m 0 0\ngenerator q 1 1\ngenerator p1 2 2\ngenerator p2 2 3\n\
             boundary p1 : 1*q\nboundary p2 : 1*q\n",
        )
        .unwrap()
    }

    fn ex2() -> FilteredComplex {
        parse_complex(
            "field F2\ngenerator q2 1 1\ngenerator q1 1 2\ngenerator p1 2 4\ngenerator p2 2 5\n\
             boundary p1 : 1*q1 + 1*q2\nboundary p2 : 1*q1\n",
        )
        .unwrap()
    }

    fn swap_ev(a: &str, b: &str) -> PathEvent {
        PathEvent::Swap {
            a: a.into(),
            b: b.into(),
        }
    }

    fn pair(a: &str, b: &str) -> (String, Option<String>) {
        (a.to_string(), Some(b.to_string()))
    }

    #[test]
    fn swap_exchanges_values_only() {
        let c = ex2();
        let d = apply_event(&c, &swap_ev("p1", "p2")).unwrap();
        assert_eq!(d.generator("p1").unwrap().value, Value::from_i64(5));
        assert_eq!(d.generator("p2").unwrap().value, Value::from_i64(4));
        assert_eq!(c.to_parts().1, d.to_parts().1);
    }

    #[test]
    fn ex2_swap_is_case_b_with_exchange() {
        let r = classify_transposition(&ex2(), &swap_ev("p1", "p2")).unwrap();
        assert_eq!(r.case, BifurcationCase::B);
        assert_eq!(r.condition_held, Some(true));
        assert!(r.changed);
        let after: BTreeMap<_, _> = [pair("p1", "q2"), pair("p2", "q1"), pair("q1", "p2"), pair("q2", "p1")].into();
        assert_eq!(r.coupling_after, after);
    }

    #[test]
    fn disjoint_supports_give_case_b_without_change() {
        let c = parse_complex(
            "field F2\ngenerator q2 1 1\ngenerator q1 1 2\ngenerator p1 2 4\ngenerator p2 2 5\n\
             boundary p1 : 1*q1 + 1*q2\nboundary p2 : 1*q2\n",
        )
        .unwrap();
        let r = classify_transposition(&c, &swap_ev("p1", "p2")).unwrap();
        assert_eq!(r.case, BifurcationCase::B);
        assert_eq!(r.condition_held, Some(false));
        assert!(!r.changed);
    }

    #[test]
    fn different_degrees_give_case_none() {
        let c = parse_complex("field F2\ngenerator a 0 0\ngenerator b 1 1\ngenerator c 2 2\n").unwrap();
        let r = classify_transposition(&c, &swap_ev("a", "b")).unwrap();
        assert_eq!(r.case, BifurcationCase::None);
        assert_eq!(r.condition_held, None);
        assert!(!r.changed);
    }

    #[test]
    fn homological_participant_is_extremal() {
        let r = classify_transposition(&ex1(), &swap_ev("p1", "p2")).unwrap();
        assert_eq!(r.case, BifurcationCase::Extremal);
        assert!(r.changed);
    }

    #[test]
    fn swap_rejections() {
        let c = ex1();
        assert!(matches!(
            apply_event(&c, &swap_ev("m", "p1")),
            Err(EventError::NotAdjacent { .. })
        ));
        assert!(matches!(
            apply_event(&c, &swap_ev("q", "p1")),
            Err(EventError::Incident { .. })
        ));
        assert!(matches!(
            apply_event(&c, &swap_ev("q", "zz")),
            Err(EventError::UnknownGenerator(_))
        ));
    }

    fn birth_ev() -> PathEvent {
        PathEvent::Birth {
            p: "b1".into(),
            q: "b0".into(),
            degree: 0,
            below: Value::from_i64(1),
        }
    }

    #[test]
    fn birth_then_death() {
        let c = ex1();
        let born = apply_event(&c, &birth_ev()).unwrap();
        assert_eq!(born.len(), 6);
        assert_eq!(born.generator("b0").unwrap().value, Value::new(1, 2));
        assert_eq!(born.generator("b1").unwrap().value, Value::new(3, 4));
        let r = reduce(&born).unwrap();
        assert_eq!(r.partner("b1"), Some("b0"));
        assert_eq!(r.generator_type("b1"), Some(GeneratorType::Upper));
        let dead = apply_event(
            &born,
            &PathEvent::Death {
                p: "b1".into(),
                q: "b0".into(),
            },
        )
        .unwrap();
        assert_eq!(dead, c);
    }

    #[test]
    fn death_cancels_incidences() {
        // x's boundary meets q; after cancelling (p, q) it is rerouted through ∂p.
        let c = parse_complex(
            "field Q\ngenerator m 0 0\ngenerator q 0 1\ngenerator p 1 2\ngenerator x 1 3\ngenerator y 2 4\n\
             boundary p : 2*q + -2*m\nboundary x : 1*q + -1*m\nboundary y : 1*p + -2*x\n",
        )
        .unwrap();
        let r = reduce(&c).unwrap();
        assert_eq!(r.partner("p"), Some("q"));
        let d = apply_event(
            &c,
            &PathEvent::Death {
                p: "p".into(),
                q: "q".into(),
            },
        )
        .unwrap();
        assert!(d.boundary_of("x").unwrap().is_zero());
        let y = d.boundary_of("y").unwrap();
        assert_eq!(y.terms.len(), 1);
        assert!(d.validate().is_empty());
    }

    #[test]
    fn death_rejections() {
        let c = ex1();
        let death = |p: &str, q: &str| {
            apply_event(
                &c,
                &PathEvent::Death {
                    p: p.into(),
                    q: q.into(),
                },
            )
        };
        assert!(matches!(death("p2", "q"), Err(EventError::NotCoupled { .. })));
        assert!(matches!(death("q", "p1"), Err(EventError::NotCoupled { .. })));
        let far = parse_complex(
            "field F2\ngenerator q 0 0\ngenerator m 0 1\ngenerator x 1 2\ngenerator p 1 3\nboundary p : 1*q + 1*m\n",
        )
        .unwrap();
        let err = apply_event(
            &far,
            &PathEvent::Death {
                p: "p".into(),
                q: "m".into(),
            },
        );
        assert!(matches!(err, Err(EventError::NotAdjacent { .. })), "{err:?}");
    }

    #[test]
    fn birth_rejections() {
        let c = parse_complex("field F2\ndim 1\ngenerator m 0 0\n").unwrap();
        let b = |p: &str, q: &str, k| {
            apply_event(
                &c,
                &PathEvent::Birth {
                    p: p.into(),
                    q: q.into(),
                    degree: k,
                    below: Value::from_i64(0),
                },
            )
        };
        assert!(matches!(b("m", "x", 0), Err(EventError::NameInUse(_))));
        assert!(matches!(b("x", "x", 0), Err(EventError::BadNames(..))));
        assert!(matches!(b("x", "y", 1), Err(EventError::DegreeAboveDim { .. })));
        let d = b("x", "y", 0).unwrap();
        assert_eq!(d.generator("y").unwrap().value, Value::new(-1, 2));
    }

    #[test]
    fn run_path_traces() {
        let t = run_path(&ex2(), &[swap_ev("p1", "p2")]).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].report.as_ref().unwrap().case, BifurcationCase::B);

        let t = run_path(&ex1(), &[]).unwrap();
        assert!(t.steps.is_empty());

        let events = [
            birth_ev(),
            PathEvent::Death {
                p: "b1".into(),
                q: "b0".into(),
            },
        ];
        let t = run_path(&ex1(), &events).unwrap();
        assert_eq!(t.last_result().partner_map(), t.initial_result.partner_map());
    }

    #[test]
    fn run_path_fails_fast() {
        let events = [birth_ev(), swap_ev("m", "p2"), swap_ev("p1", "p2")];
        let err = run_path(&ex1(), &events).unwrap_err();
        assert_eq!(err.index, 1);
        assert_eq!(err.trace.as_ref().unwrap().steps.len(), 1);
        assert!(err.to_string().starts_with("event 2 (swap m p2)"));
    }

    #[test]
    fn report_lines() {
        let t = run_path(&ex2(), &[swap_ev("p1", "p2")]).unwrap();
        assert_eq!(
            t.render_reports(),
            "1 swap p1 p2 | case B | condition true | changed | p1:q1 p2:q2 q1:p1 q2:p2 => p1:q2 p2:q1 q1:p2 q2:p1\n"
        );
    }

    #[test]
    fn path_file_roundtrip() {
        let text = "birth b1 b0 0 below 1/2\n# comment\n\nswap p1 p2\ndeath b1 b0\n";
        let events = parse_path(text).unwrap();
        assert_eq!(events.len(), 3);
        assert_eq!(parse_path(&print_path(&events)).unwrap(), events);
        let err = parse_path("swap a\n").unwrap_err();
        assert_eq!(err.line, 1);
    }
}
