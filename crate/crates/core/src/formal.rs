//! The formal problem on framed Barannikov diagrams of the sphere.
//!
//! A diagram is a set of points (degree, rank in the global value order,
//! frame) with a coupling. Moves are the crossings of two rank-adjacent points,
//! cancellations of standard pairs and births of standard pairs. [`solve`]
//! decides whether the standard diagram (minimum framed up, maximum framed
//! down) is reachable without births.
//!
//! Internally a diagram is a list of slots in rank order whose partner links
//! are positions, so two diagrams that differ only by point names share one
//! search state.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::complex::text::strip_comment;
use crate::diagram::Frame;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedPoint {
    pub id: String,
    pub degree: u32,
    /// Position in the global value order, starting at 1.
    pub rank: usize,
    pub frame: Frame,
}

impl FramedPoint {
    pub fn new(id: impl Into<String>, degree: u32, rank: usize, frame: Frame) -> Self {
        FramedPoint {
            id: id.into(),
            degree,
            rank,
            frame,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Slot {
    degree: u32,
    frame: Frame,
    partner: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormalError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("ambient dimension must be at least 1")]
    BadDimension,
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("ranks must be a permutation of 1..{0}")]
    BadRanks(usize),
    #[error("point {id:?} has degree {degree} above the dimension {dim}")]
    DegreeAboveDim { id: String, degree: u32, dim: u32 },
    #[error("point {0:?} is in two pairs")]
    PairedTwice(String),
    #[error("pair ({upper}, {lower}) must have degrees k+1, k and a higher rank for {upper}")]
    BadPair { upper: String, lower: String },
    #[error("unpartnered point {0:?} at an intermediate degree: not a sphere diagram")]
    NotSphere(String),
    #[error("illegal move {0}")]
    IllegalMove(String),
}

/// A framed Barannikov diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedDiagram {
    dim: u32,
    slots: Vec<Slot>,
    ids: Vec<String>,
}

impl FramedDiagram {
    /// Builds a diagram; `couples` lists `(upper, lower)` ids.
    pub fn new(dim: u32, mut points: Vec<FramedPoint>, couples: Vec<(String, String)>) -> Result<Self, FormalError> {
        if dim == 0 {
            return Err(FormalError::BadDimension);
        }
        points.sort_by_key(|p| p.rank);
        let m = points.len();
        if points.iter().enumerate().any(|(i, p)| p.rank != i + 1) {
            return Err(FormalError::BadRanks(m));
        }
        let mut pos = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if pos.insert(p.id.clone(), i).is_some() {
                return Err(FormalError::DuplicatePoint(p.id.clone()));
            }
            if p.degree > dim {
                return Err(FormalError::DegreeAboveDim {
                    id: p.id.clone(),
                    degree: p.degree,
                    dim,
                });
            }
        }
        let mut slots: Vec<Slot> = points
            .iter()
            .map(|p| Slot {
                degree: p.degree,
                frame: p.frame,
                partner: None,
            })
            .collect();
        for (u, l) in couples {
            let &iu = pos.get(&u).ok_or_else(|| FormalError::UnknownPoint(u.clone()))?;
            let &il = pos.get(&l).ok_or_else(|| FormalError::UnknownPoint(l.clone()))?;
            for (i, id) in [(iu, &u), (il, &l)] {
                if slots[i].partner.is_some() || iu == il {
                    return Err(FormalError::PairedTwice(id.clone()));
                }
            }
            if slots[iu].degree != slots[il].degree + 1 || iu < il {
                return Err(FormalError::BadPair { upper: u, lower: l });
            }
            slots[iu].partner = Some(il);
            slots[il].partner = Some(iu);
        }
        Ok(FramedDiagram {
            dim,
            slots,
            ids: points.into_iter().map(|p| p.id).collect(),
        })
    }

    /// The target of the formal problem.
    pub fn standard(dim: u32) -> Self {
        FramedDiagram::new(
            dim,
            vec![
                FramedPoint::new("min", 0, 1, Frame::Up),
                FramedPoint::new("max", dim, 2, Frame::Down),
            ],
            Vec::new(),
        )
        .expect("standard diagram is valid")
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Points in rank order.
    pub fn points(&self) -> Vec<FramedPoint> {
        self.slots
            .iter()
            .zip(&self.ids)
            .enumerate()
            .map(|(i, (s, id))| FramedPoint::new(id.clone(), s.degree, i + 1, s.frame))
            .collect()
    }

    pub fn partner(&self, id: &str) -> Option<&str> {
        let i = self.position(id)?;
        self.slots[i].partner.map(|j| self.ids[j].as_str())
    }

    /// Coupled pairs as `(upper, lower)`, by rank of the upper point.
    pub fn couples(&self) -> Vec<(String, String)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s.partner {
                Some(j) if j < i => Some((self.ids[i].clone(), self.ids[j].clone())),
                _ => None,
            })
            .collect()
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn is_standard(&self) -> bool {
        self.slots == standard_slots(self.dim)
    }

    /// Number of coupled pairs whose two arrows differ.
    pub fn inverted_count(&self) -> usize {
        self.classify_pairs()
            .values()
            .filter(|c| c.kind != PairKind::Standard)
            .count()
    }

    pub fn classify_pairs(&self) -> BTreeMap<(String, String), PairClass> {
        self.couples()
            .into_iter()
            .map(|(u, l)| {
                let su = &self.slots[self.position(&u).unwrap()];
                let sl = &self.slots[self.position(&l).unwrap()];
                let kind = match (su.frame, sl.frame) {
                    (a, b) if a == b => PairKind::Standard,
                    (Frame::Up, _) => PairKind::InvertedI,
                    (Frame::Down, _) => PairKind::InvertedII,
                };
                ((u, l), PairClass { kind, index: su.degree })
            })
            .collect()
    }

    fn check_sphere(&self) -> Result<(), FormalError> {
        for (s, id) in self.slots.iter().zip(&self.ids) {
            if s.partner.is_none() && s.degree != 0 && s.degree != self.dim {
                return Err(FormalError::NotSphere(id.clone()));
            }
        }
        Ok(())
    }

    fn fresh_ids(&self) -> (String, String) {
        let used: HashSet<&str> = self.ids.iter().map(String::as_str).collect();
        (1..)
            .map(|j| (format!("b{j}p"), format!("b{j}q")))
            .find(|(u, l)| !used.contains(u.as_str()) && !used.contains(l.as_str()))
            .unwrap()
    }

    fn to_move(&self, m: PosMove) -> Move {
        match m {
            PosMove::Cross { r, exchange } => Move::Cross {
                a: self.ids[r].clone(),
                b: self.ids[r + 1].clone(),
                outcome: if exchange { Outcome::Exchange } else { Outcome::Keep },
            },
            PosMove::Cancel { r } => Move::Cancel {
                upper: self.ids[r + 1].clone(),
                lower: self.ids[r].clone(),
            },
            PosMove::Birth { degree, r, frame } => Move::Birth {
                degree,
                at_rank: r + 1,
                frame,
            },
        }
    }

    fn to_pos(&self, m: &Move) -> Option<PosMove> {
        match m {
            Move::Cross { a, b, outcome } => {
                let r = self.position(a)?;
                (self.position(b)? == r + 1).then_some(PosMove::Cross {
                    r,
                    exchange: *outcome == Outcome::Exchange,
                })
            }
            Move::Cancel { upper, lower } => {
                let r = self.position(lower)?;
                (self.position(upper)? == r + 1).then_some(PosMove::Cancel { r })
            }
            Move::Birth { degree, at_rank, frame } => Some(PosMove::Birth {
                degree: *degree,
                r: at_rank.checked_sub(1)?,
                frame: *frame,
            }),
        }
    }
}

fn standard_slots(dim: u32) -> Vec<Slot> {
    vec![
        Slot {
            degree: 0,
            frame: Frame::Up,
            partner: None,
        },
        Slot {
            degree: dim,
            frame: Frame::Down,
            partner: None,
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    Standard,
    InvertedI,
    InvertedII,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Standard => "standard",
            PairKind::InvertedI => "inverted-I",
            PairKind::InvertedII => "inverted-II",
        })
    }
}

/// Class of a coupled pair; `index` is the degree of its upper point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairClass {
    pub kind: PairKind,
    pub index: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Keep,
    Exchange,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `a` has rank one below `b`; afterwards their ranks are exchanged.
    Cross {
        a: String,
        b: String,
        outcome: Outcome,
    },
    /// A standard pair with lower point of degree `degree` at rank `at_rank`
    /// and upper point right above it.
    Birth {
        degree: u32,
        at_rank: usize,
        frame: Frame,
    },
    Cancel {
        upper: String,
        lower: String,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Cross { a, b, outcome } => {
                let o = match outcome {
                    Outcome::Keep => "keep",
                    Outcome::Exchange => "exchange",
                };
                write!(f, "cross {a} {b} {o}")
            }
            Move::Birth { degree, at_rank, frame } => write!(f, "birth {degree} {at_rank} {frame}"),
            Move::Cancel { upper, lower } => write!(f, "cancel {upper} {lower}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PosMove {
    Cross { r: usize, exchange: bool },
    Cancel { r: usize },
    Birth { degree: u32, r: usize, frame: Frame },
}

fn pos_moves(slots: &[Slot], dim: u32, allow_births: bool) -> Vec<PosMove> {
    let mut out = Vec::new();
    let m = slots.len();
    for r in 0..m.saturating_sub(1) {
        let (a, b) = (&slots[r], &slots[r + 1]);
        let (Some(pa), Some(pb)) = (a.partner, b.partner) else {
            // the extremes stay the global minimum and maximum
            continue;
        };
        if pa == r + 1 || a.frame != Frame::Up || b.frame != Frame::Down {
            continue;
        }
        out.push(PosMove::Cross { r, exchange: false });
        if a.degree == b.degree {
            let a_upper = pa < r;
            let b_upper = pb < r;
            let pattern = match (a_upper, b_upper) {
                (true, false) => true,
                (true, true) => pa > pb,
                (false, false) => pa > pb,
                (false, true) => false,
            };
            if pattern {
                out.push(PosMove::Cross { r, exchange: true });
            }
        }
    }
    for r in 0..m.saturating_sub(1) {
        let (a, b) = (&slots[r], &slots[r + 1]);
        if a.partner == Some(r + 1) && a.frame == b.frame {
            out.push(PosMove::Cancel { r });
        }
    }
    if allow_births && m >= 2 {
        for degree in 0..dim {
            for r in 1..m {
                for frame in [Frame::Up, Frame::Down] {
                    out.push(PosMove::Birth { degree, r, frame });
                }
            }
        }
    }
    out
}

fn pos_legal(slots: &[Slot], dim: u32, m: PosMove) -> bool {
    match m {
        PosMove::Birth { degree, r, .. } => degree < dim && r >= 1 && r < slots.len(),
        _ => pos_moves(slots, dim, false).contains(&m),
    }
}

// Applies a legal positional move; `ids` is permuted alongside when given.
fn pos_apply(slots: &[Slot], m: PosMove, ids: Option<(&[String], (String, String))>) -> (Vec<Slot>, Vec<String>) {
    let mut s = slots.to_vec();
    let mut names: Vec<String> = ids.as_ref().map(|(v, _)| v.to_vec()).unwrap_or_default();
    match m {
        PosMove::Cross { r, exchange } => {
            if exchange {
                let pa = s[r].partner.unwrap();
                let pb = s[r + 1].partner.unwrap();
                s[r].partner = Some(pb);
                s[pb].partner = Some(r);
                s[r + 1].partner = Some(pa);
                s[pa].partner = Some(r + 1);
            }
            s.swap(r, r + 1);
            for slot in s.iter_mut() {
                slot.partner = slot.partner.map(|p| match p {
                    p if p == r => r + 1,
                    p if p == r + 1 => r,
                    p => p,
                });
            }
            if !names.is_empty() {
                names.swap(r, r + 1);
            }
        }
        PosMove::Cancel { r } => {
            s.drain(r..r + 2);
            for slot in s.iter_mut() {
                slot.partner = slot.partner.map(|p| if p > r + 1 { p - 2 } else { p });
            }
            if !names.is_empty() {
                names.drain(r..r + 2);
            }
        }
        PosMove::Birth { degree, r, frame } => {
            for slot in s.iter_mut() {
                slot.partner = slot.partner.map(|p| if p >= r { p + 2 } else { p });
            }
            s.splice(
                r..r,
                [
                    Slot {
                        degree,
                        frame,
                        partner: Some(r + 1),
                    },
                    Slot {
                        degree: degree + 1,
                        frame,
                        partner: Some(r),
                    },
                ],
            );
            if let Some((_, (u, l))) = ids {
                names.splice(r..r, [l, u]);
            }
        }
    }
    (s, names)
}

/// All legal moves from `d`, in a fixed order.
pub fn enumerate_moves(d: &FramedDiagram, allow_births: bool) -> Vec<Move> {
    pos_moves(&d.slots, d.dim, allow_births)
        .into_iter()
        .map(|m| d.to_move(m))
        .collect()
}

/// Applies a legal move. Births name their points `b<j>p` (upper) and `b<j>q`.
pub fn apply_move(d: &FramedDiagram, m: &Move) -> Result<FramedDiagram, FormalError> {
    let pm = d
        .to_pos(m)
        .filter(|&pm| pos_legal(&d.slots, d.dim, pm))
        .ok_or_else(|| FormalError::IllegalMove(m.to_string()))?;
    let (slots, ids) = pos_apply(&d.slots, pm, Some((&d.ids, d.fresh_ids())));
    Ok(FramedDiagram { dim: d.dim, slots, ids })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The number of inverted pairs is odd.
    Parity,
    /// Every state reachable without births was visited.
    Exhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A shortest move sequence to the standard diagram.
    Reachable(Vec<Move>),
    Unreachable(Certificate),
    /// The search stopped after visiting this many states.
    Undecided(usize),
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Reachable(moves) => {
                writeln!(f, "REACHABLE")?;
                for m in moves {
                    writeln!(f, "{m}")?;
                }
                Ok(())
            }
            SolveOutcome::Unreachable(Certificate::Parity) => writeln!(f, "UNREACHABLE parity"),
            SolveOutcome::Unreachable(Certificate::Exhausted(n)) => writeln!(f, "UNREACHABLE exhausted {n}"),
            SolveOutcome::Undecided(n) => writeln!(f, "UNDECIDED {n}"),
        }
    }
}

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Breadth-first search without births.
pub fn solve(d: &FramedDiagram, max_states: usize) -> Result<SolveOutcome, FormalError> {
    d.check_sphere()?;
    if d.inverted_count() % 2 == 1 {
        return Ok(SolveOutcome::Unreachable(Certificate::Parity));
    }
    let target = standard_slots(d.dim);
    let mut states: Vec<Vec<Slot>> = vec![d.slots.clone()];
    let mut parent: Vec<Option<(usize, PosMove)>> = vec![None];
    let mut seen: HashMap<Vec<Slot>, usize> = HashMap::from([(d.slots.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut found = None;
    while let Some(i) = queue.pop_front() {
        if states[i] == target {
            found = Some(i);
            break;
        }
        for m in pos_moves(&states[i], d.dim, false) {
            let (next, _) = pos_apply(&states[i], m, None);
            if seen.contains_key(&next) {
                continue;
            }
            if states.len() >= max_states {
                return Ok(SolveOutcome::Undecided(states.len()));
            }
            seen.insert(next.clone(), states.len());
            states.push(next);
            parent.push(Some((i, m)));
            queue.push_back(states.len() - 1);
        }
    }
    let Some(mut i) = found else {
        return Ok(SolveOutcome::Unreachable(Certificate::Exhausted(states.len())));
    };
    let mut path = Vec::new();
    while let Some((p, m)) = parent[i] {
        path.push(m);
        i = p;
    }
    path.reverse();
    // Name the moves by replaying them on the input.
    let mut cur = d.clone();
    let mut moves = Vec::with_capacity(path.len());
    for pm in path {
        let m = cur.to_move(pm);
        cur = apply_move(&cur, &m).expect("search only follows legal moves");
        moves.push(m);
    }
    Ok(SolveOutcome::Reachable(moves))
}

/// Memoized reachability of the standard diagram with a bounded number of births.
///
/// Independent of [`solve`]: depth-first over positional states, births included.
/// Two invariants of every move prune the search: the frames of the unpartnered
/// extremes never change, and neither does the parity of the inverted pairs.
/// One instance can be shared across many queries of the same dimension.
#[derive(Debug, Default)]
pub struct BirthBoundedSearch {
    memo: HashMap<(u128, u8, u8), bool>,
}

// 8 bits per slot: degree (3), frame (1), partner position (4, own position when unpartnered).
fn pack(slots: &[Slot]) -> u128 {
    assert!(slots.len() <= 16, "packed states hold at most 16 points");
    slots.iter().enumerate().fold(0u128, |acc, (i, s)| {
        assert!(s.degree < 8, "packed states hold degrees below 8");
        let byte =
            s.degree as u128 | (matches!(s.frame, Frame::Down) as u128) << 3 | (s.partner.unwrap_or(i) as u128) << 4;
        acc | byte << (8 * i)
    })
}

impl BirthBoundedSearch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reachable(&mut self, d: &FramedDiagram, max_births: usize) -> bool {
        let extremes_ok = d.slots.iter().all(|s| {
            s.partner.is_some()
                || (s.degree == 0 && s.frame == Frame::Up)
                || (s.degree == d.dim && s.frame == Frame::Down)
        });
        if !extremes_ok || d.inverted_count() % 2 == 1 {
            return false;
        }
        self.go(&d.slots, d.dim, max_births)
    }

    /// Number of memoized states.
    pub fn states(&self) -> usize {
        self.memo.len()
    }

    fn go(&mut self, slots: &[Slot], dim: u32, births: usize) -> bool {
        if slots == standard_slots(dim).as_slice() {
            return true;
        }
        let key = (pack(slots), slots.len() as u8, births as u8);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut result = false;
        for m in pos_moves(slots, dim, births > 0) {
            let b = if matches!(m, PosMove::Birth { .. }) {
                births - 1
            } else {
                births
            };
            let (next, _) = pos_apply(slots, m, None);
            if self.go(&next, dim, b) {
                result = true;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// Parses the framed diagram file format.
pub fn parse_diagram(text: &str) -> Result<FramedDiagram, FormalError> {
    let mut dim = None;
    let mut points = Vec::new();
    let mut couples = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let words: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let err = |message: String| FormalError::Syntax { line, message };
        match words[..] {
            [] => {}
            ["dim", n] => {
                if dim.is_some() {
                    return Err(err("dim declared twice".into()));
                }
                dim = Some(n.parse().map_err(|_| err(format!("bad dimension {n:?}")))?);
            }
            ["point", id, degree, rank, frame] => points.push(FramedPoint::new(
                id,
                degree.parse().map_err(|_| err(format!("bad degree {degree:?}")))?,
                rank.parse().map_err(|_| err(format!("bad rank {rank:?}")))?,
                frame.parse().map_err(|_| err(format!("bad frame {frame:?}")))?,
            )),
            ["pair", u, l] => couples.push((u.to_string(), l.to_string())),
            _ => {
                return Err(err(format!(
                    "expected `dim N`, `point ID DEGREE RANK up|down` or `pair UPPER LOWER`, got {:?}",
                    raw.trim()
                )))
            }
        }
    }
    let dim = dim.ok_or(FormalError::Syntax {
        line: 1,
        message: "missing `dim` declaration".into(),
    })?;
    FramedDiagram::new(dim, points, couples)
}

pub fn print_diagram(d: &FramedDiagram) -> String {
    let mut out = format!("dim {}\n", d.dim);
    for p in d.points() {
        writeln!(out, "point {} {} {} {}", p.id, p.degree, p.rank, p.frame).unwrap();
    }
    for (u, l) in d.couples() {
        writeln!(out, "pair {u} {l}").unwrap();
    }
    out
}

impl FromStr for FramedDiagram {
    type Err = FormalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

/// Every sphere diagram of dimension `dim` with exactly `pairs` coupled pairs,
/// extremes at ranks 1 and `2 * pairs + 2`, up to renaming.
pub fn all_diagrams(dim: u32, pairs: usize, standard_extremes: bool) -> Vec<FramedDiagram> {
    let mut matchings = Vec::new();
    match_slots(&mut vec![None; 2 * pairs], &mut matchings);
    let mut out = Vec::new();
    let frames = [Frame::Up, Frame::Down];
    let extreme_frames: Vec<(Frame, Frame)> = if standard_extremes {
        vec![(Frame::Up, Frame::Down)]
    } else {
        frames
            .iter()
            .flat_map(|&a| frames.iter().map(move |&b| (a, b)))
            .collect()
    };
    for matching in &matchings {
        // matching[i] = partner of interior slot i; lower end is the smaller position
        let uppers: Vec<usize> = (0..2 * pairs).filter(|&i| matching[i].unwrap() < i).collect();
        for indices in 0..(dim as usize).pow(pairs as u32) {
            for frame_bits in 0..(1usize << (2 * pairs)) {
                for &(fmin, fmax) in &extreme_frames {
                    let mut slots = vec![Slot {
                        degree: 0,
                        frame: fmin,
                        partner: None,
                    }];
                    let mut interior = vec![(0u32, Frame::Up); 2 * pairs];
                    let mut code = indices;
                    for (j, &u) in uppers.iter().enumerate() {
                        let index = (code % dim as usize) as u32 + 1;
                        code /= dim as usize;
                        let l = matching[u].unwrap();
                        let fu = frames[(frame_bits >> (2 * j)) & 1];
                        let fl = frames[(frame_bits >> (2 * j + 1)) & 1];
                        interior[u] = (index, fu);
                        interior[l] = (index - 1, fl);
                    }
                    for (i, &(degree, frame)) in interior.iter().enumerate() {
                        slots.push(Slot {
                            degree,
                            frame,
                            partner: Some(matching[i].unwrap() + 1),
                        });
                    }
                    slots.push(Slot {
                        degree: dim,
                        frame: fmax,
                        partner: None,
                    });
                    let ids = (0..slots.len()).map(|i| format!("x{}", i + 1)).collect();
                    out.push(FramedDiagram { dim, slots, ids });
                }
            }
        }
    }
    out
}

fn match_slots(partial: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
    let Some(first) = partial.iter().position(Option::is_none) else {
        out.push(partial.clone());
        return;
    };
    for other in first + 1..partial.len() {
        if partial[other].is_none() {
            partial[first] = Some(other);
            partial[other] = Some(first);
            match_slots(partial, out);
            partial[first] = None;
            partial[other] = None;
        }
    }
}
