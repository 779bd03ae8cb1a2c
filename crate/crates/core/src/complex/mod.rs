//! Filtered chain complexes over a field.
//!
//! A [`FilteredComplex`] stores its generators sorted by critical value; all
//! internal columns are indexed by that position, so "higher index" and
//! "higher value" mean the same thing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};
use crate::value::Value;

pub(crate) mod text;

pub use text::{parse_complex, print_complex};

/// Sparse vector of generator positions (value order) to nonzero scalars.
pub type Column = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub value: Value,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, value: impl Into<Value>) -> Self {
        Generator {
            name: name.into(),
            degree,
            value: value.into(),
        }
    }
}

/// A linear combination of generators of one degree, keyed by name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain {
    pub degree: i64,
    pub terms: BTreeMap<String, Scalar>,
}

impl Chain {
    pub fn zero(degree: i64) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef * name`, dropping the term if it cancels.
    pub fn add_term(&mut self, name: &str, coef: Scalar) {
        match self.terms.get(name) {
            Some(old) => {
                let sum = old + &coef;
                if sum.is_zero() {
                    self.terms.remove(name);
                } else {
                    self.terms.insert(name.to_string(), sum);
                }
            }
            None if !coef.is_zero() => {
                self.terms.insert(name.to_string(), coef);
            }
            None => {}
        }
    }

    pub fn with_term(mut self, name: &str, coef: Scalar) -> Self {
        self.add_term(name, coef);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("{}duplicate generator name {name:?}", at(*.line))]
    DuplicateName { line: Option<usize>, name: String },
    #[error("duplicate critical value {value} ({first} and {second})")]
    DuplicateValue {
        first: String,
        second: String,
        value: Value,
    },
    #[error("{}unknown generator {name:?}", at(*.line))]
    UnknownGenerator { line: Option<usize>, name: String },
    #[error("{}degree mismatch: {term} (degree {term_degree}) in the boundary of {generator} (degree {degree})", at(*.line))]
    DegreeMismatch {
        line: Option<usize>,
        generator: String,
        degree: u32,
        term: String,
        term_degree: u32,
    },
    #[error("{}∂² ≠ 0: ∂∂{generator} = {residue}", at(*.line))]
    NotChainComplex {
        line: Option<usize>,
        generator: String,
        residue: String,
    },
    #[error("{}boundary term {term} of {generator} is not strictly below it in value", at(*.line))]
    NotDescending {
        line: Option<usize>,
        generator: String,
        term: String,
    },
    #[error("{}generator {generator} has degree {degree} above the ambient dimension {dim}", at(*.line))]
    DegreeAboveDim {
        line: Option<usize>,
        generator: String,
        degree: u32,
        dim: u32,
    },
    #[error("coefficient field {found} does not match the complex field {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
}

fn at(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

impl ComplexError {
    /// Stable short code per error kind.
    pub fn code(&self) -> &'static str {
        match self {
            ComplexError::Syntax { .. } => "syntax",
            ComplexError::DuplicateName { .. } => "duplicate-name",
            ComplexError::DuplicateValue { .. } => "duplicate-value",
            ComplexError::UnknownGenerator { .. } => "unknown-generator",
            ComplexError::DegreeMismatch { .. } => "degree-mismatch",
            ComplexError::NotChainComplex { .. } => "boundary-squared-nonzero",
            ComplexError::NotDescending { .. } => "not-descending",
            ComplexError::DegreeAboveDim { .. } => "degree-above-dim",
            ComplexError::FieldMismatch { .. } => "field-mismatch",
        }
    }
}

/// A failed invariant of a [`FilteredComplex`], naming the generators involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateValue {
        first: String,
        second: String,
        value: Value,
    },
    DegreeMismatch {
        generator: String,
        degree: u32,
        term: String,
        term_degree: u32,
    },
    NotDescending {
        generator: String,
        term: String,
    },
    BoundarySquared {
        generator: String,
        residue: Chain,
    },
    DegreeAboveDim {
        generator: String,
        degree: u32,
        dim: u32,
    },
}

impl Violation {
    pub fn generators(&self) -> Vec<&str> {
        match self {
            Violation::DuplicateValue { first, second, .. } => vec![first, second],
            Violation::DegreeMismatch { generator, term, .. } | Violation::NotDescending { generator, term } => {
                vec![generator, term]
            }
            Violation::BoundarySquared { generator, residue } => {
                let mut v = vec![generator.as_str()];
                v.extend(residue.terms.keys().map(String::as_str));
                v
            }
            Violation::DegreeAboveDim { generator, .. } => vec![generator],
        }
    }

    pub(crate) fn into_error(self, line: Option<usize>) -> ComplexError {
        match self {
            Violation::DuplicateValue { first, second, value } => ComplexError::DuplicateValue { first, second, value },
            Violation::DegreeMismatch {
                generator,
                degree,
                term,
                term_degree,
            } => ComplexError::DegreeMismatch {
                line,
                generator,
                degree,
                term,
                term_degree,
            },
            Violation::NotDescending { generator, term } => ComplexError::NotDescending { line, generator, term },
            Violation::BoundarySquared { generator, residue } => ComplexError::NotChainComplex {
                line,
                generator,
                residue: format_chain(&residue),
            },
            Violation::DegreeAboveDim { generator, degree, dim } => ComplexError::DegreeAboveDim {
                line,
                generator,
                degree,
                dim,
            },
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateValue { first, second, value } => {
                write!(f, "duplicate value {value}: {first}, {second}")
            }
            Violation::DegreeMismatch { generator, term, .. } => {
                write!(f, "degree mismatch: {term} in ∂{generator}")
            }
            Violation::NotDescending { generator, term } => {
                write!(f, "descending-filtration violation: {term} in ∂{generator}")
            }
            Violation::BoundarySquared { generator, residue } => {
                write!(f, "∂∂{generator} = {} ≠ 0", format_chain(residue))
            }
            Violation::DegreeAboveDim { generator, degree, dim } => {
                write!(f, "{generator} has degree {degree} > dim {dim}")
            }
        }
    }
}

pub(crate) fn format_chain(c: &Chain) -> String {
    if c.terms.is_empty() {
        return "0".to_string();
    }
    c.terms
        .iter()
        .map(|(n, s)| format!("{s}*{n}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A graded, filtered chain complex with coefficients in a field.
///
/// Construction checks only what the representation needs (unique names,
/// known generators, degrees of boundary terms, coefficient field). The
/// remaining invariants are reported by [`FilteredComplex::validate`];
/// [`FilteredComplex::new`] combines both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    field: FieldSpec,
    ambient_dim: Option<u32>,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    boundary: Vec<Column>,
}

impl FilteredComplex {
    /// Builds a complex without checking the filtration, duplicate values or ∂² = 0.
    pub fn from_parts(
        field: FieldSpec,
        ambient_dim: Option<u32>,
        mut generators: Vec<Generator>,
        boundary: impl IntoIterator<Item = (String, Chain)>,
    ) -> Result<Self, ComplexError> {
        generators.sort_by(|a, b| a.value.cmp(&b.value));
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(ComplexError::DuplicateName {
                    line: None,
                    name: g.name.clone(),
                });
            }
        }
        let mut columns = vec![Column::new(); generators.len()];
        for (name, chain) in boundary {
            let &i = index.get(&name).ok_or_else(|| ComplexError::UnknownGenerator {
                line: None,
                name: name.clone(),
            })?;
            let degree = generators[i].degree;
            for (term, coef) in &chain.terms {
                if coef.field() != field {
                    return Err(ComplexError::FieldMismatch {
                        expected: field,
                        found: coef.field(),
                    });
                }
                let &j = index.get(term).ok_or_else(|| ComplexError::UnknownGenerator {
                    line: None,
                    name: term.clone(),
                })?;
                if generators[j].degree as i64 != degree as i64 - 1 {
                    return Err(ComplexError::DegreeMismatch {
                        line: None,
                        generator: name.clone(),
                        degree,
                        term: term.clone(),
                        term_degree: generators[j].degree,
                    });
                }
                add_to(&mut columns[i], j, coef);
            }
        }
        Ok(FilteredComplex {
            field,
            ambient_dim,
            generators,
            index,
            boundary: columns,
        })
    }

    /// Builds and validates; the first violation becomes the error.
    pub fn new(
        field: FieldSpec,
        ambient_dim: Option<u32>,
        generators: Vec<Generator>,
        boundary: impl IntoIterator<Item = (String, Chain)>,
    ) -> Result<Self, ComplexError> {
        let c = Self::from_parts(field, ambient_dim, generators, boundary)?;
        match c.validate().into_iter().next() {
            Some(v) => Err(v.into_error(None)),
            None => Ok(c),
        }
    }

    /// Builds from position-indexed columns. `generators` must already be sorted by value.
    pub(crate) fn from_columns(
        field: FieldSpec,
        ambient_dim: Option<u32>,
        generators: Vec<Generator>,
        boundary: Vec<Column>,
    ) -> Self {
        debug_assert!(generators.windows(2).all(|w| w[0].value <= w[1].value));
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i))
            .collect();
        FilteredComplex {
            field,
            ambient_dim,
            generators,
            index,
            boundary,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> Option<u32> {
        self.ambient_dim
    }

    /// Declared ambient dimension, or the top degree present.
    pub fn effective_dim(&self) -> u32 {
        self.ambient_dim.unwrap_or_else(|| self.max_degree().unwrap_or(0))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.index_of(name).map(|i| &self.generators[i])
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.generators.iter().map(|g| g.degree).max()
    }

    /// Positions of the generators of degree `k`, in value order.
    pub fn degree_indices(&self, k: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.generators[i].degree == k).collect()
    }

    pub fn column(&self, i: usize) -> &Column {
        &self.boundary[i]
    }

    pub fn columns(&self) -> &[Column] {
        &self.boundary
    }

    pub fn boundary_of(&self, name: &str) -> Option<Chain> {
        let i = self.index_of(name)?;
        Some(self.column_to_chain(self.generators[i].degree as i64 - 1, &self.boundary[i]))
    }

    pub fn column_to_chain(&self, degree: i64, column: &Column) -> Chain {
        Chain {
            degree,
            terms: column
                .iter()
                .map(|(&j, s)| (self.generators[j].name.clone(), s.clone()))
                .collect(),
        }
    }

    /// Converts a named chain to a positional column, checking names, degree and field.
    pub fn chain_to_column(&self, chain: &Chain) -> Result<Column, ComplexError> {
        let mut col = Column::new();
        for (name, coef) in &chain.terms {
            if coef.field() != self.field {
                return Err(ComplexError::FieldMismatch {
                    expected: self.field,
                    found: coef.field(),
                });
            }
            let j = self.index_of(name).ok_or_else(|| ComplexError::UnknownGenerator {
                line: None,
                name: name.clone(),
            })?;
            let g = &self.generators[j];
            if g.degree as i64 != chain.degree {
                return Err(ComplexError::DegreeMismatch {
                    line: None,
                    generator: format!("<chain of degree {}>", chain.degree),
                    degree: chain.degree.max(0) as u32,
                    term: name.clone(),
                    term_degree: g.degree,
                });
            }
            add_to(&mut col, j, coef);
        }
        Ok(col)
    }

    /// ∂ applied to a positional column.
    pub fn apply_boundary(&self, column: &Column) -> Column {
        let mut out = Column::new();
        for (&j, c) in column {
            for (&h, d) in &self.boundary[j] {
                add_to(&mut out, h, &(c * d));
            }
        }
        out
    }

    /// All invariant violations; empty iff the complex is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for w in self.generators.windows(2) {
            if w[0].value == w[1].value {
                out.push(Violation::DuplicateValue {
                    first: w[0].name.clone(),
                    second: w[1].name.clone(),
                    value: w[0].value.clone(),
                });
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(dim) = self.ambient_dim {
                if g.degree > dim {
                    out.push(Violation::DegreeAboveDim {
                        generator: g.name.clone(),
                        degree: g.degree,
                        dim,
                    });
                }
            }
            for &j in self.boundary[i].keys() {
                let h = &self.generators[j];
                if h.degree as i64 != g.degree as i64 - 1 {
                    out.push(Violation::DegreeMismatch {
                        generator: g.name.clone(),
                        degree: g.degree,
                        term: h.name.clone(),
                        term_degree: h.degree,
                    });
                }
                if h.value >= g.value {
                    out.push(Violation::NotDescending {
                        generator: g.name.clone(),
                        term: h.name.clone(),
                    });
                }
            }
            let dd = self.apply_boundary(&self.boundary[i]);
            if !dd.is_empty() {
                out.push(Violation::BoundarySquared {
                    generator: g.name.clone(),
                    residue: self.column_to_chain(g.degree as i64 - 2, &dd),
                });
            }
        }
        out
    }

    /// Generators and named boundaries, suitable for [`FilteredComplex::from_parts`].
    pub fn to_parts(&self) -> (Vec<Generator>, BTreeMap<String, Chain>) {
        let boundary = self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.boundary[*i].is_empty())
            .map(|(i, g)| {
                (
                    g.name.clone(),
                    self.column_to_chain(g.degree as i64 - 1, &self.boundary[i]),
                )
            })
            .collect();
        (self.generators.clone(), boundary)
    }

    /// Conjugates the boundary by a triangular change of basis: δ = T⁻¹ ∘ ∂ ∘ T.
    pub fn conjugate(&self, t: &BasisChange) -> Result<FilteredComplex, BasisChangeError> {
        let cols = t.to_columns(self)?;
        let mut boundary = Vec::with_capacity(self.len());
        for col in &cols {
            let image = self.apply_boundary(col);
            boundary.push(solve_triangular(&cols, image));
        }
        Ok(FilteredComplex {
            boundary,
            ..self.clone()
        })
    }
}

pub(crate) fn add_to(col: &mut Column, j: usize, coef: &Scalar) {
    if coef.is_zero() {
        return;
    }
    match col.get_mut(&j) {
        Some(old) => {
            *old = &*old + coef;
            if old.is_zero() {
                col.remove(&j);
            }
        }
        None => {
            col.insert(j, coef.clone());
        }
    }
}

/// `a += c * b`
pub(crate) fn axpy(a: &mut Column, c: &Scalar, b: &Column) {
    for (&j, x) in b {
        add_to(a, j, &(c * x));
    }
}

/// Expresses `v` in the basis `{ T(g) }`, where `T(g)` has its top term at `g`.
fn solve_triangular(t: &[Column], mut v: Column) -> Column {
    let mut out = Column::new();
    while let Some((&top, c)) = v.iter().next_back() {
        let diag = &t[top][&top];
        let coef = c.checked_div(diag).expect("nonsingular diagonal");
        axpy(&mut v, &coef.neg(), &t[top]);
        debug_assert!(!v.contains_key(&top));
        out.insert(top, coef);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisChangeError {
    #[error("unknown generator {0:?} in change of basis")]
    UnknownGenerator(String),
    #[error("change of basis is not triangular: T({generator}) involves {term}")]
    NotTriangular { generator: String, term: String },
    #[error("change of basis is singular at {0}")]
    Singular(String),
    #[error("coefficient field does not match the complex")]
    FieldMismatch,
}

/// A per-degree triangular change of basis.
///
/// `T(g)` is a nonzero multiple of `g` plus a combination of strictly
/// lower-value generators of the same degree. Generators without an entry
/// are mapped to themselves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisChange {
    images: BTreeMap<String, Chain>,
}

impl BasisChange {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn set(&mut self, generator: impl Into<String>, image: Chain) {
        self.images.insert(generator.into(), image);
    }

    pub fn images(&self) -> &BTreeMap<String, Chain> {
        &self.images
    }

    /// Positional columns of T for every generator of `c`, checking the shape.
    pub fn to_columns(&self, c: &FilteredComplex) -> Result<Vec<Column>, BasisChangeError> {
        let mut cols: Vec<Column> = (0..c.len()).map(|i| Column::from([(i, c.field().one())])).collect();
        for (name, chain) in &self.images {
            let i = c
                .index_of(name)
                .ok_or_else(|| BasisChangeError::UnknownGenerator(name.clone()))?;
            let g = &c.generators[i];
            let mut col = Column::new();
            for (term, coef) in &chain.terms {
                if coef.field() != c.field() {
                    return Err(BasisChangeError::FieldMismatch);
                }
                let j = c
                    .index_of(term)
                    .ok_or_else(|| BasisChangeError::UnknownGenerator(term.clone()))?;
                let h = &c.generators[j];
                if j != i && (h.degree != g.degree || h.value >= g.value) {
                    return Err(BasisChangeError::NotTriangular {
                        generator: name.clone(),
                        term: term.clone(),
                    });
                }
                add_to(&mut col, j, coef);
            }
            if !col.contains_key(&i) {
                return Err(BasisChangeError::Singular(name.clone()));
            }
            cols[i] = col;
        }
        Ok(cols)
    }

    /// Builds a change of basis from positional columns over `c`.
    pub(crate) fn from_columns(c: &FilteredComplex, cols: &[Column]) -> Self {
        let mut out = BasisChange::identity();
        for (i, col) in cols.iter().enumerate() {
            let is_identity = col.len() == 1 && col.get(&i).is_some_and(Scalar::is_one);
            if !is_identity {
                let g = &c.generators[i];
                out.set(g.name.clone(), c.column_to_chain(g.degree as i64, col));
            }
        }
        out
    }

    /// The inverse change of basis, relative to the generators of `c`.
    pub fn inverse(&self, c: &FilteredComplex) -> Result<BasisChange, BasisChangeError> {
        let cols = self.to_columns(c)?;
        let inv: Vec<Column> = (0..c.len())
            .map(|i| solve_triangular(&cols, Column::from([(i, c.field().one())])))
            .collect();
        Ok(BasisChange::from_columns(c, &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex1() -> FilteredComplex {
        parse_complex(
            "field F2\ngenerator m 0 0\ngenerator q 1 1\ngenerator p1 2 2\ngenerator p2 2 3\n\
             boundary p1 : 1*q\nboundary p2 : 1*q\n",
        )
        .unwrap()
    }

    #[test]
    fn ex1_is_valid() {
        let c = ex1();
        assert_eq!(c.len(), 4);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn single_generator_is_valid() {
        let c = FilteredComplex::new(FieldSpec::Prime(3), None, vec![Generator::new("x", 3, 0)], []).unwrap();
        assert!(c.validate().is_empty());
    }

    #[test]
    fn ascending_boundary_is_reported() {
        let f = FieldSpec::Prime(2);
        let c = FilteredComplex::from_parts(
            f,
            None,
            vec![Generator::new("q", 0, 5), Generator::new("p", 1, 1)],
            [("p".to_string(), Chain::zero(0).with_term("q", f.one()))],
        )
        .unwrap();
        assert_eq!(
            c.validate(),
            vec![Violation::NotDescending {
                generator: "p".into(),
                term: "q".into()
            }]
        );
    }

    #[test]
    fn conjugate_identity_and_substitution() {
        let c = ex1();
        assert_eq!(c.conjugate(&BasisChange::identity()).unwrap(), c);
        let f = c.field();
        let mut t = BasisChange::identity();
        t.set("p2", Chain::zero(2).with_term("p2", f.one()).with_term("p1", f.one()));
        let d = c.conjugate(&t).unwrap();
        assert!(d.boundary_of("p2").unwrap().is_zero());
        assert_eq!(d.boundary_of("p1"), c.boundary_of("p1"));
        assert!(d.validate().is_empty());
    }

    #[test]
    fn conjugate_rejects_bad_shapes() {
        let c = ex1();
        let f = c.field();
        let mut up = BasisChange::identity();
        up.set("p1", Chain::zero(2).with_term("p1", f.one()).with_term("p2", f.one()));
        assert!(matches!(c.conjugate(&up), Err(BasisChangeError::NotTriangular { .. })));
        let mut cross = BasisChange::identity();
        cross.set("p1", Chain::zero(2).with_term("p1", f.one()).with_term("q", f.one()));
        assert!(matches!(
            c.conjugate(&cross),
            Err(BasisChangeError::NotTriangular { .. })
        ));
        let mut singular = BasisChange::identity();
        singular.set("p2", Chain::zero(2).with_term("p1", f.one()));
        assert_eq!(c.conjugate(&singular), Err(BasisChangeError::Singular("p2".into())));
    }
}
