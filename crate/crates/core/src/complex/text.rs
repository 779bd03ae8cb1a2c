//! The line-oriented complex file format.
//!
//! ```text
//! field F2            # or F5, F7, ..., Q
//! dim 2               # optional
//! generator m 0 0     # name degree value
//! generator q 1 1
//! boundary q : 1*m + 1*x
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use super::{Chain, ComplexError, FilteredComplex, Generator};
use crate::scalar::FieldSpec;
use crate::value::Value;

fn syntax(line: usize, message: impl Into<String>) -> ComplexError {
    ComplexError::Syntax {
        line,
        message: message.into(),
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '*' | '+' | ':' | '#'))
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses and validates a complex file.
pub fn parse_complex(text: &str) -> Result<FilteredComplex, ComplexError> {
    let mut field: Option<FieldSpec> = None;
    let mut dim: Option<u32> = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut gen_line: HashMap<String, usize> = HashMap::new();
    let mut raw_boundaries: Vec<(usize, String, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "field" => {
                let spec = words.next().ok_or_else(|| syntax(lineno, "missing field"))?;
                if words.next().is_some() {
                    return Err(syntax(lineno, "trailing input after field"));
                }
                if field.is_some() {
                    return Err(syntax(lineno, "field declared twice"));
                }
                field = Some(spec.parse().map_err(|e| syntax(lineno, format!("{e}")))?);
            }
            "dim" => {
                let n = words.next().ok_or_else(|| syntax(lineno, "missing dimension"))?;
                if words.next().is_some() {
                    return Err(syntax(lineno, "trailing input after dim"));
                }
                if dim.is_some() {
                    return Err(syntax(lineno, "dim declared twice"));
                }
                dim = Some(n.parse().map_err(|_| syntax(lineno, format!("bad dimension {n:?}")))?);
            }
            "generator" => {
                let parts: Vec<&str> = words.collect();
                let [name, degree, value] = parts[..] else {
                    return Err(syntax(lineno, "expected `generator NAME DEGREE VALUE`"));
                };
                if !valid_name(name) {
                    return Err(syntax(lineno, format!("bad generator name {name:?}")));
                }
                let degree: u32 = degree
                    .parse()
                    .map_err(|_| syntax(lineno, format!("bad degree {degree:?}")))?;
                let value: Value = value.parse().map_err(|e| syntax(lineno, format!("{e}")))?;
                if gen_line.insert(name.to_string(), lineno).is_some() {
                    return Err(ComplexError::DuplicateName {
                        line: Some(lineno),
                        name: name.to_string(),
                    });
                }
                generators.push(Generator::new(name, degree, value));
            }
            "boundary" => {
                let rest = line["boundary".len()..].trim();
                let (name, terms) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(lineno, "expected `boundary NAME : TERMS`"))?;
                raw_boundaries.push((lineno, name.trim().to_string(), terms.trim().to_string()));
            }
            other => return Err(syntax(lineno, format!("unknown keyword {other:?}"))),
        }
    }

    let field = field.ok_or_else(|| syntax(1, "missing `field` declaration"))?;
    let degree_of: HashMap<&str, u32> = generators.iter().map(|g| (g.name.as_str(), g.degree)).collect();
    let mut boundary: BTreeMap<String, Chain> = BTreeMap::new();
    let mut boundary_line: HashMap<String, usize> = HashMap::new();
    for (lineno, name, terms) in raw_boundaries {
        let degree = *degree_of
            .get(name.as_str())
            .ok_or_else(|| ComplexError::UnknownGenerator {
                line: Some(lineno),
                name: name.clone(),
            })?;
        if boundary_line.insert(name.clone(), lineno).is_some() {
            return Err(syntax(lineno, format!("second boundary line for {name}")));
        }
        let mut chain = Chain::zero(degree as i64 - 1);
        for term in terms.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (coef, gen) = match term.split_once('*') {
                Some((c, g)) => (
                    field.parse_scalar(c).map_err(|e| syntax(lineno, format!("{e}")))?,
                    g.trim(),
                ),
                None => (field.one(), term),
            };
            let term_degree = *degree_of.get(gen).ok_or_else(|| ComplexError::UnknownGenerator {
                line: Some(lineno),
                name: gen.to_string(),
            })?;
            if term_degree as i64 != degree as i64 - 1 {
                return Err(ComplexError::DegreeMismatch {
                    line: Some(lineno),
                    generator: name.clone(),
                    degree,
                    term: gen.to_string(),
                    term_degree,
                });
            }
            chain.add_term(gen, coef);
        }
        boundary.insert(name, chain);
    }

    let complex = FilteredComplex::from_parts(field, dim, generators, boundary)?;
    if let Some(v) = complex.validate().into_iter().next() {
        let first = v.generators().first().map(|s| s.to_string());
        let line = match &v {
            super::Violation::DegreeAboveDim { generator, .. } => gen_line.get(generator).copied(),
            super::Violation::DuplicateValue { second, .. } => gen_line.get(second).copied(),
            _ => first.and_then(|g| boundary_line.get(&g).copied()),
        };
        return Err(v.into_error(line));
    }
    Ok(complex)
}

/// Prints a complex in the file format. Generators and boundaries appear in value order.
pub fn print_complex(c: &FilteredComplex) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", c.field()).unwrap();
    if let Some(d) = c.ambient_dim() {
        writeln!(out, "dim {d}").unwrap();
    }
    for g in c.generators() {
        writeln!(out, "generator {} {} {}", g.name, g.degree, g.value).unwrap();
    }
    for (i, g) in c.generators().iter().enumerate() {
        let col = c.column(i);
        if col.is_empty() {
            continue;
        }
        let terms: Vec<String> = col
            .iter()
            .map(|(&j, s)| format!("{s}*{}", c.generators()[j].name))
            .collect();
        writeln!(out, "boundary {} : {}", g.name, terms.join(" + ")).unwrap();
    }
    out
}
