//! Reduction of a filtered complex to its unique simple form.
//!
//! [`reduce`] runs the column algorithm: generators are processed in increasing
//! value; the pivot of a column is its highest-value term, and a pivot already
//! owned by an earlier column is eliminated with a multiple of that column.
//! Surviving pivots couple an upper generator (the column) with a lower one
//! (the pivot row).
//!
//! The remaining functions are independent oracles that only use rank
//! computations from [`crate::linalg`]: [`homology_ranks`],
//! [`persistence_rank_oracle`], [`class_birth`], [`class_death`] and
//! [`is_lower_by_elimination`].

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write};

use thiserror::Error;

use crate::complex::{axpy, BasisChange, Chain, Column, ComplexError, FilteredComplex, Violation};
use crate::linalg::EchelonBasis;
use crate::scalar::Scalar;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorType {
    Upper,
    Lower,
    Homological,
}

impl fmt::Display for GeneratorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorType::Upper => "upper",
            GeneratorType::Lower => "lower",
            GeneratorType::Homological => "homological",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid complex: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{0:?} is not a cycle")]
    NotACycle(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("degree mismatch: degree({upper}) must be degree({lower}) + 1")]
    DegreeMismatch { upper: String, lower: String },
    #[error(transparent)]
    Chain(#[from] ComplexError),
}

fn require_valid(c: &FilteredComplex) -> Result<(), ReductionError> {
    let violations = c.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ReductionError::Invalid(violations))
    }
}

/// The simple form of a complex: types, coupling and the change of basis realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarannikovResult {
    complex: FilteredComplex,
    types: Vec<GeneratorType>,
    // Symmetric: upper <-> lower.
    partner: Vec<Option<usize>>,
    reduced: Vec<Column>,
    chains: Vec<Column>,
    witness: BasisChange,
}

/// Reduces `c` to its simple form.
pub fn reduce(c: &FilteredComplex) -> Result<BarannikovResult, ReductionError> {
    require_valid(c)?;
    let n = c.len();
    let mut reduced: Vec<Column> = c.columns().to_vec();
    let mut chains: Vec<Column> = (0..n).map(|i| Column::from([(i, c.field().one())])).collect();
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();

    for j in 0..n {
        while let Some((&low, lead)) = reduced[j].iter().next_back() {
            let Some(&i) = pivot_owner.get(&low) else {
                pivot_owner.insert(low, j);
                break;
            };
            let coef = lead.checked_div(&reduced[i][&low]).expect("nonzero pivot").neg();
            let (ri, vi) = (reduced[i].clone(), chains[i].clone());
            axpy(&mut reduced[j], &coef, &ri);
            axpy(&mut chains[j], &coef, &vi);
        }
    }

    let mut types = vec![GeneratorType::Homological; n];
    let mut partner = vec![None; n];
    for (&low, &col) in &pivot_owner {
        types[col] = GeneratorType::Upper;
        types[low] = GeneratorType::Lower;
        partner[col] = Some(low);
        partner[low] = Some(col);
    }

    // T(upper) = V/lead, T(lower) = R(partner)/lead, T(homological) = V.
    let mut witness = chains.clone();
    for j in 0..n {
        if types[j] == GeneratorType::Upper {
            let low = partner[j].unwrap();
            let inv = reduced[j][&low].inverse().expect("nonzero pivot");
            witness[j] = scale(&chains[j], &inv);
            witness[low] = scale(&reduced[j], &inv);
        }
    }
    let witness = BasisChange::from_columns(c, &witness);

    Ok(BarannikovResult {
        complex: c.clone(),
        types,
        partner,
        reduced,
        chains,
        witness,
    })
}

fn scale(col: &Column, s: &Scalar) -> Column {
    col.iter().map(|(&k, x)| (k, x * s)).collect()
}

impl BarannikovResult {
    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    pub fn witness(&self) -> &BasisChange {
        &self.witness
    }

    fn idx(&self, name: &str) -> Option<usize> {
        self.complex.index_of(name)
    }

    fn name(&self, i: usize) -> &str {
        &self.complex.generators()[i].name
    }

    pub fn generator_type(&self, name: &str) -> Option<GeneratorType> {
        self.idx(name).map(|i| self.types[i])
    }

    pub fn partner(&self, name: &str) -> Option<&str> {
        let i = self.idx(name)?;
        self.partner[i].map(|j| self.name(j))
    }

    /// ∂_B: each generator mapped to its lower partner, or `None`.
    pub fn simple_boundary(&self) -> BTreeMap<String, Option<String>> {
        (0..self.types.len())
            .map(|i| {
                let image = match self.types[i] {
                    GeneratorType::Upper => self.partner[i].map(|j| self.name(j).to_string()),
                    _ => None,
                };
                (self.name(i).to_string(), image)
            })
            .collect()
    }

    pub fn types(&self) -> BTreeMap<String, GeneratorType> {
        (0..self.types.len())
            .map(|i| (self.name(i).to_string(), self.types[i]))
            .collect()
    }

    /// Coupled pairs `(upper, lower)` in increasing value of the upper end.
    pub fn pairs(&self) -> Vec<(String, String)> {
        (0..self.types.len())
            .filter(|&i| self.types[i] == GeneratorType::Upper)
            .map(|i| {
                (
                    self.name(i).to_string(),
                    self.name(self.partner[i].unwrap()).to_string(),
                )
            })
            .collect()
    }

    /// Symmetric partner map over all coupled generators.
    pub fn partner_map(&self) -> BTreeMap<String, String> {
        (0..self.types.len())
            .filter_map(|i| self.partner[i].map(|j| (self.name(i).to_string(), self.name(j).to_string())))
            .collect()
    }

    /// The simple complex itself: ∂_B(p) = q with coefficient 1 for each couple.
    pub fn simple_complex(&self) -> FilteredComplex {
        let c = &self.complex;
        let boundary: Vec<Column> = (0..self.types.len())
            .map(|i| match self.types[i] {
                GeneratorType::Upper => Column::from([(self.partner[i].unwrap(), c.field().one())]),
                _ => Column::new(),
            })
            .collect();
        FilteredComplex::from_columns(c.field(), c.ambient_dim(), c.generators().to_vec(), boundary)
    }

    /// The reduced boundary column of `name` (zero for lower and homological generators).
    pub fn reduced_boundary(&self, name: &str) -> Option<Chain> {
        let i = self.idx(name)?;
        let g = &self.complex.generators()[i];
        Some(self.complex.column_to_chain(g.degree as i64 - 1, &self.reduced[i]))
    }

    /// The chain combination that produced the reduced column of `name`.
    pub fn reducing_chain(&self, name: &str) -> Option<Chain> {
        let i = self.idx(name)?;
        let g = &self.complex.generators()[i];
        Some(self.complex.column_to_chain(g.degree as i64, &self.chains[i]))
    }

    /// The cycle with top term `name`, for lower and homological generators.
    pub fn cycle_of(&self, name: &str) -> Option<Chain> {
        let i = self.idx(name)?;
        let g = &self.complex.generators()[i];
        match self.types[i] {
            GeneratorType::Upper => None,
            GeneratorType::Homological => Some(self.complex.column_to_chain(g.degree as i64, &self.chains[i])),
            GeneratorType::Lower => {
                let p = self.partner[i].unwrap();
                let inv = self.reduced[p][&i].inverse().unwrap();
                Some(
                    self.complex
                        .column_to_chain(g.degree as i64, &scale(&self.reduced[p], &inv)),
                )
            }
        }
    }

    /// Number of homological generators per degree (only degrees with generators).
    pub fn homological_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (g, t) in self.complex.generators().iter().zip(&self.types) {
            let e = out.entry(g.degree).or_insert(0);
            if *t == GeneratorType::Homological {
                *e += 1;
            }
        }
        out
    }

    /// `name degree value type [-> partner]`, one line per generator in value order.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for (i, g) in self.complex.generators().iter().enumerate() {
            write!(out, "{} {} {} {}", g.name, g.degree, g.value, self.types[i]).unwrap();
            if let Some(j) = self.partner[i] {
                write!(out, " -> {}", self.name(j)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn dense(c: &FilteredComplex, col: &Column) -> Vec<Scalar> {
    let mut v = vec![c.field().zero(); c.len()];
    for (&j, s) in col {
        v[j] = s.clone();
    }
    v
}

fn unit(c: &FilteredComplex, i: usize) -> Vec<Scalar> {
    let mut v = vec![c.field().zero(); c.len()];
    v[i] = c.field().one();
    v
}

/// Ranks of `H_k(c; F)` by plain Gaussian elimination, for every degree that has generators.
pub fn homology_ranks(c: &FilteredComplex) -> Result<BTreeMap<u32, usize>, ReductionError> {
    require_valid(c)?;
    let boundary_rank = |k: u32| {
        let cols: Vec<Vec<Scalar>> = c.degree_indices(k).into_iter().map(|i| dense(c, c.column(i))).collect();
        crate::linalg::rank(c.field(), c.len(), &cols)
    };
    let mut out = BTreeMap::new();
    let Some(top) = c.max_degree() else {
        return Ok(out);
    };
    for k in 0..=top {
        let dim = c.degree_indices(k).len();
        if dim == 0 {
            continue;
        }
        out.insert(k, dim - boundary_rank(k) - boundary_rank(k + 1));
    }
    Ok(out)
}

/// A filtration level, possibly one of the two sentinels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// The class is zero: no level is needed.
    None,
    At(Value),
    Infinity,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::None => f.write_str("none"),
            Level::At(v) => write!(f, "{v}"),
            Level::Infinity => f.write_str("inf"),
        }
    }
}

/// Birth level of the class of the cycle `z` in the sublevel complex strictly below `ceiling`:
/// the least `v` such that `z + ∂w` is supported on values `≤ v` for some chain `w`
/// of generators with value `< ceiling`. Returns [`Level::None`] if `z` bounds there.
pub fn class_birth(c: &FilteredComplex, z: &Chain, ceiling: &Value) -> Result<Level, ReductionError> {
    require_valid(c)?;
    let col = c.chain_to_column(z)?;
    if !c.apply_boundary(&col).is_empty() {
        return Err(ReductionError::NotACycle(crate::complex::format_chain(z)));
    }
    let mut span = EchelonBasis::new(c.field(), c.len());
    for (i, g) in c.generators().iter().enumerate() {
        if g.degree as i64 == z.degree + 1 && g.value < *ceiling {
            span.insert(&dense(c, c.column(i)));
        }
    }
    let target = dense(c, &col);
    if span.contains(&target) {
        return Ok(Level::None);
    }
    for (i, g) in c.generators().iter().enumerate() {
        if g.degree as i64 != z.degree {
            continue;
        }
        span.insert(&unit(c, i));
        if span.contains(&target) {
            return Ok(Level::At(g.value.clone()));
        }
    }
    unreachable!("a chain lies in the span of its own support")
}

/// Death level of `z`: the least `v` such that `z ≡ ∂w` modulo generators strictly below
/// `floor` (no relative part when `floor` is `None`), with `w` supported on values `≤ v`.
/// `z` must be a relative cycle: `∂z` supported strictly below `floor`.
pub fn class_death(c: &FilteredComplex, z: &Chain, floor: Option<&Value>) -> Result<Level, ReductionError> {
    require_valid(c)?;
    let col = c.chain_to_column(z)?;
    let below_floor = |i: &usize| floor.is_some_and(|f| c.generators()[*i].value < *f);
    if !c.apply_boundary(&col).keys().all(below_floor) {
        return Err(ReductionError::NotACycle(crate::complex::format_chain(z)));
    }
    if col.keys().all(below_floor) {
        return Ok(Level::None);
    }
    let mut span = EchelonBasis::new(c.field(), c.len());
    for (i, g) in c.generators().iter().enumerate() {
        if g.degree as i64 == z.degree && below_floor(&i) {
            span.insert(&unit(c, i));
        }
    }
    let target = dense(c, &col);
    for (i, g) in c.generators().iter().enumerate() {
        if g.degree as i64 != z.degree + 1 {
            continue;
        }
        span.insert(&dense(c, c.column(i)));
        if span.contains(&target) {
            return Ok(Level::At(g.value.clone()));
        }
    }
    Ok(Level::Infinity)
}

fn lookup(c: &FilteredComplex, name: &str) -> Result<usize, ReductionError> {
    c.index_of(name)
        .ok_or_else(|| ReductionError::UnknownGenerator(name.to_string()))
}

/// Decides whether `(lower, upper)` is a couple from ranks of boundary submatrices alone.
///
/// With `r(a, b)` the rank of the block of ∂ whose rows are the degree-k
/// generators of value `≥ a` and whose columns are the degree-(k+1) generators
/// of value `≤ b`, the multiplicity of the pair is
/// `r(q, p) - r(q⁺, p) - r(q, p⁻) + r(q⁺, p⁻)`.
pub fn persistence_rank_oracle(c: &FilteredComplex, lower: &str, upper: &str) -> Result<bool, ReductionError> {
    require_valid(c)?;
    let qi = lookup(c, lower)?;
    let pi = lookup(c, upper)?;
    let (q, p) = (&c.generators()[qi], &c.generators()[pi]);
    if p.degree != q.degree + 1 {
        return Err(ReductionError::DegreeMismatch {
            upper: upper.to_string(),
            lower: lower.to_string(),
        });
    }
    if p.value <= q.value {
        return Ok(false);
    }
    let rows = c.degree_indices(q.degree);
    let cols = c.degree_indices(p.degree);
    // rank of the block: rows of value >= q (or > q), columns of value <= p (or < p)
    let r = |rows_incl: bool, cols_incl: bool| {
        let rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| i > qi || (rows_incl && i == qi))
            .collect();
        let vectors: Vec<Vec<Scalar>> = cols
            .iter()
            .copied()
            .filter(|&j| j < pi || (cols_incl && j == pi))
            .map(|j| {
                rows.iter()
                    .map(|i| c.column(j).get(i).cloned().unwrap_or_else(|| c.field().zero()))
                    .collect()
            })
            .collect();
        crate::linalg::rank(c.field(), rows.len(), &vectors) as i64
    };
    let mult = r(true, true) - r(false, true) - r(true, false) + r(false, false);
    Ok(mult == 1)
}

/// Whether `q` is of lower type, decided by elimination: some combination of
/// higher generators has boundary equal to `q` modulo generators below `q`.
pub fn is_lower_by_elimination(c: &FilteredComplex, q: &str) -> Result<bool, ReductionError> {
    let i = lookup(c, q)?;
    let g = &c.generators()[i];
    let z = Chain::zero(g.degree as i64).with_term(q, c.field().one());
    Ok(matches!(class_death(c, &z, Some(&g.value))?, Level::At(_)))
}
