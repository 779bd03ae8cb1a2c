//! Random instances for property tests and benchmarks.
//!
//! [`random_complex`] builds boundaries directly from cycle bases (no reduction
//! involved), so it can be used to test [`crate::reduction::reduce`].
//! [`random_sphere_complex`] instead starts from a simple complex with the
//! homology of a sphere and hides it under a random triangular conjugation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{BasisChange, Chain, Column, FilteredComplex, Generator};
use crate::diagram::Frame;
use crate::formal::{FramedDiagram, FramedPoint};
use crate::linalg::nullspace;
use crate::scalar::{FieldSpec, Scalar};
use crate::value::Value;

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.random_range(1..p as i64)),
        FieldSpec::Rationals => {
            let mut n = rng.random_range(1..=3i64);
            if rng.random_bool(0.5) {
                n = -n;
            }
            let d = rng.random_range(1..=2i64);
            field.from_fraction(&n.into(), &d.into()).expect("nonzero denominator")
        }
    }
}

/// Shape of [`random_complex`] instances.
#[derive(Debug, Clone, Copy)]
pub struct ComplexParams {
    pub max_generators: usize,
    pub max_degree: u32,
    /// Probability that a cycle basis vector enters a boundary.
    pub density: f64,
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams {
            max_generators: 12,
            max_degree: 3,
            density: 0.6,
        }
    }
}

fn distinct_values<R: Rng + ?Sized>(rng: &mut R, n: usize, fractional: bool) -> Vec<Value> {
    let mut pool: Vec<i64> = (0..(3 * n as i64 + 3)).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool.into_iter()
        .map(|k| {
            if fractional {
                Value::new(k, 2)
            } else {
                Value::from_i64(k)
            }
        })
        .collect()
}

fn dense(field: FieldSpec, len: usize, col: &Column) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    for (&j, s) in col {
        v[j] = s.clone();
    }
    v
}

/// A random valid complex: each boundary is a random combination of a basis
/// of the cycles lying below the generator.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, params: ComplexParams) -> FilteredComplex {
    let n = rng.random_range(0..=params.max_generators);
    let fractional = field == FieldSpec::Rationals && rng.random_bool(0.5);
    let values = distinct_values(rng, n, fractional);
    let mut generators: Vec<Generator> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| Generator {
            name: format!("g{i}"),
            degree: rng.random_range(0..=params.max_degree),
            value: v,
        })
        .collect();
    generators.sort_by(|a, b| a.value.cmp(&b.value));

    let mut boundary: Vec<Column> = vec![Column::new(); n];
    for j in 0..n {
        let k = generators[j].degree;
        if k == 0 {
            continue;
        }
        let below: Vec<usize> = (0..j).filter(|&i| generators[i].degree == k - 1).collect();
        if below.is_empty() {
            continue;
        }
        // Cycles among `below`, as coefficient vectors over `below`.
        let cycles = if k == 1 {
            (0..below.len())
                .map(|a| {
                    let mut v = vec![field.zero(); below.len()];
                    v[a] = field.one();
                    v
                })
                .collect()
        } else {
            let cols: Vec<Vec<Scalar>> = below.iter().map(|&i| dense(field, n, &boundary[i])).collect();
            nullspace(field, n, &cols)
        };
        let mut col = Column::new();
        for z in cycles {
            if !rng.random_bool(params.density) {
                continue;
            }
            let s = random_nonzero(rng, field);
            for (a, x) in z.iter().enumerate() {
                crate::complex::add_to(&mut col, below[a], &(&s * x));
            }
        }
        boundary[j] = col;
    }
    FilteredComplex::from_columns(field, None, generators, boundary)
}

/// A random triangular change of basis over `c`.
pub fn random_triangular<R: Rng + ?Sized>(rng: &mut R, c: &FilteredComplex, density: f64) -> BasisChange {
    let mut t = BasisChange::identity();
    for (i, g) in c.generators().iter().enumerate() {
        let mut image = Chain::zero(g.degree as i64).with_term(&g.name, random_nonzero(rng, c.field()));
        for h in &c.generators()[..i] {
            if h.degree == g.degree && rng.random_bool(density) {
                image.add_term(&h.name, random_nonzero(rng, c.field()));
            }
        }
        t.set(g.name.clone(), image);
    }
    t
}

/// A simple complex with the homology of `S^dim`: a minimum, a maximum, and
/// `pairs` coupled pairs `(p_i, q_i)` of random index placed in between.
pub fn random_simple_sphere<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, dim: u32, pairs: usize) -> FilteredComplex {
    assert!(dim >= 1);
    let mut slots: Vec<i64> = (1..=2 * pairs as i64).collect();
    slots.shuffle(rng);
    let mut generators = vec![
        Generator::new("min", 0, 0),
        Generator::new("max", dim, 2 * pairs as i64 + 1),
    ];
    let mut boundary = Vec::new();
    for i in 0..pairs {
        let (a, b) = (slots[2 * i], slots[2 * i + 1]);
        let k = rng.random_range(0..dim);
        let (p, q) = (format!("p{i}"), format!("q{i}"));
        generators.push(Generator::new(q.clone(), k, a.min(b)));
        generators.push(Generator::new(p.clone(), k + 1, a.max(b)));
        boundary.push((p, Chain::zero(k as i64).with_term(&q, field.one())));
    }
    FilteredComplex::new(field, Some(dim), generators, boundary).expect("simple sphere is valid")
}

/// A random complex whose simple form is [`random_simple_sphere`].
pub fn random_sphere_complex<R: Rng + ?Sized>(
    rng: &mut R,
    field: FieldSpec,
    dim: u32,
    pairs: usize,
    density: f64,
) -> FilteredComplex {
    let simple = random_simple_sphere(rng, field, dim, pairs);
    let t = random_triangular(rng, &simple, density);
    simple.conjugate(&t).expect("triangular by construction")
}

/// Two-degree complex `k = 0, 1` with an `n × n` boundary matrix; degree-0
/// values all lie below degree-1 values. The matrix is not forced invertible.
pub fn random_two_degree<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, n: usize) -> FilteredComplex {
    let mut lows: Vec<i64> = (0..n as i64).collect();
    let mut highs: Vec<i64> = (n as i64..2 * n as i64).collect();
    lows.shuffle(rng);
    highs.shuffle(rng);
    let mut generators = Vec::new();
    for i in 0..n {
        generators.push(Generator::new(format!("q{i}"), 0, lows[i]));
        generators.push(Generator::new(format!("p{i}"), 1, highs[i]));
    }
    let mut boundary = Vec::new();
    for i in 0..n {
        let mut ch = Chain::zero(0);
        for j in 0..n {
            if rng.random_bool(0.6) {
                ch.add_term(&format!("q{j}"), random_nonzero(rng, field));
            }
        }
        boundary.push((format!("p{i}"), ch));
    }
    FilteredComplex::new(field, Some(1), generators, boundary).expect("two-degree complex is valid")
}

fn random_frame<R: Rng + ?Sized>(rng: &mut R) -> Frame {
    if rng.random_bool(0.5) {
        Frame::Up
    } else {
        Frame::Down
    }
}

/// A random framed sphere diagram: extremes at the ends, `pairs` random pairs in between.
pub fn random_framed_diagram<R: Rng + ?Sized>(rng: &mut R, dim: u32, pairs: usize) -> FramedDiagram {
    let m = 2 * pairs + 2;
    let mut slots: Vec<usize> = (2..m).collect();
    slots.shuffle(rng);
    let mut points = vec![
        FramedPoint::new("min", 0, 1, random_frame(rng)),
        FramedPoint::new("max", dim, m, random_frame(rng)),
    ];
    let mut couples = Vec::new();
    for i in 0..pairs {
        let (a, b) = (slots[2 * i], slots[2 * i + 1]);
        let k = rng.random_range(0..dim);
        let (u, l) = (format!("u{i}"), format!("l{i}"));
        points.push(FramedPoint::new(l.clone(), k, a.min(b), random_frame(rng)));
        points.push(FramedPoint::new(u.clone(), k + 1, a.max(b), random_frame(rng)));
        couples.push((u, l));
    }
    FramedDiagram::new(dim, points, couples).expect("random diagram is valid")
}
