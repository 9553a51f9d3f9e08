//! The `.bq` algebra format.
//!
//! ```text
//! field 2            # or: field Q
//! vertices 2
//! arrow a: 1 -> 2
//! arrow b: 1 -> 2
//! relation 1*a.a + 2*a.b   # dot-separated arrow names, left to right
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::Limits;

use super::quiver::{Arrow, Path, Quiver};
use super::{BoundQuiverAlgebra, Relation};

/// A parsed `.bq` file whose coefficients are still text, so the same file
/// can be instantiated over any field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraText {
    pub field: FieldSpec,
    pub quiver: Quiver,
    /// `(line number, [(coefficient text, path)])`
    pub relations: Vec<(usize, Vec<(String, Path)>)>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl AlgebraText {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut vertices = None;
        let mut arrows: Vec<(usize, Arrow)> = Vec::new();
        let mut raw_relations: Vec<(usize, String)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "field" => {
                    field = Some(rest.parse::<FieldSpec>().map_err(|m| err(line_no, m))?);
                }
                "vertices" => {
                    let n: usize = rest
                        .parse()
                        .map_err(|_| err(line_no, format!("bad vertex count `{rest}`")))?;
                    if n == 0 {
                        return Err(err(line_no, "vertex count must be at least 1"));
                    }
                    vertices = Some(n);
                }
                "arrow" => {
                    let (name, ends) = rest
                        .split_once(':')
                        .ok_or_else(|| err(line_no, "expected `arrow NAME: S -> T`"))?;
                    let (s, t) = ends
                        .split_once("->")
                        .ok_or_else(|| err(line_no, "expected `S -> T`"))?;
                    let name = name.trim();
                    if name.is_empty() || name.contains(|c: char| c == '.' || c.is_whitespace()) {
                        return Err(err(line_no, format!("bad arrow name `{name}`")));
                    }
                    let vertex = |v: &str| -> Result<usize> {
                        let v: usize = v
                            .trim()
                            .parse()
                            .map_err(|_| err(line_no, format!("bad vertex `{}`", v.trim())))?;
                        v.checked_sub(1)
                            .ok_or_else(|| err(line_no, "vertices are numbered from 1"))
                    };
                    arrows.push((
                        line_no,
                        Arrow {
                            name: name.to_string(),
                            source: vertex(s)?,
                            target: vertex(t)?,
                        },
                    ));
                }
                "relation" => raw_relations.push((line_no, rest.to_string())),
                other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
            }
        }

        let field = field.ok_or_else(|| err(0, "missing `field` line"))?;
        let n = vertices.ok_or_else(|| err(0, "missing `vertices` line"))?;
        for (line_no, a) in &arrows {
            if a.source >= n || a.target >= n {
                return Err(err(*line_no, format!("arrow `{}` leaves 1..{n}", a.name)));
            }
        }
        let quiver = Quiver::new(n, arrows.into_iter().map(|(_, a)| a).collect())?;

        let mut relations = Vec::new();
        for (line_no, text) in raw_relations {
            let terms = split_terms(&text)
                .into_iter()
                .map(|(coef, path)| Ok((coef, parse_path(&quiver, &path, line_no)?)))
                .collect::<Result<Vec<_>>>()?;
            if terms.is_empty() {
                return Err(err(line_no, "empty relation"));
            }
            relations.push((line_no, terms));
        }
        Ok(AlgebraText {
            field,
            quiver,
            relations,
        })
    }

    /// Instantiates over `S`, whatever the file's `field` line says.
    pub fn build<S: Scalar>(&self, limits: &Limits) -> Result<Arc<BoundQuiverAlgebra<S>>> {
        let mut relations = Vec::new();
        for (line_no, terms) in &self.relations {
            let terms = terms
                .iter()
                .map(|(c, p)| {
                    let c = S::parse_scalar(c)
                        .ok_or_else(|| err(*line_no, format!("bad coefficient `{c}`")))?;
                    Ok((c, p.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            relations.push(Relation::new(&self.quiver, terms)?);
        }
        BoundQuiverAlgebra::new(self.quiver.clone(), relations, limits)
    }
}

/// Splits `1*a.b - 2*c.d + e.f` into signed coefficient texts and paths.
fn split_terms(text: &str) -> Vec<(String, String)> {
    let mut terms = Vec::new();
    let mut sign = 1i32;
    let mut current = String::new();
    let flush = |current: &mut String, sign: i32, terms: &mut Vec<(String, String)>| {
        let t = current.trim().to_string();
        current.clear();
        if t.is_empty() {
            return;
        }
        let (coef, path) = match t.split_once('*') {
            Some((c, p)) => (c.trim().to_string(), p.trim().to_string()),
            None => ("1".to_string(), t),
        };
        let coef = if sign < 0 {
            match coef.strip_prefix('-') {
                Some(c) => c.to_string(),
                None => format!("-{coef}"),
            }
        } else {
            coef
        };
        terms.push((coef, path));
    };
    for ch in text.chars() {
        match ch {
            '+' | '-' if !current.trim().is_empty() && !current.trim_end().ends_with('*') => {
                flush(&mut current, sign, &mut terms);
                sign = if ch == '-' { -1 } else { 1 };
            }
            '-' if current.trim().is_empty() => sign = -sign,
            '+' if current.trim().is_empty() => {}
            _ => current.push(ch),
        }
    }
    flush(&mut current, sign, &mut terms);
    terms
}

fn parse_path(quiver: &Quiver, text: &str, line_no: usize) -> Result<Path> {
    let names: Vec<&str> = text.split('.').map(str::trim).collect();
    let mut arrows = Vec::with_capacity(names.len());
    for name in &names {
        let a = quiver
            .arrow_index(name)
            .ok_or_else(|| err(line_no, format!("unknown arrow `{name}`")))?;
        arrows.push(a);
    }
    for w in arrows.windows(2) {
        let (a, b) = (quiver.arrow(w[0]), quiver.arrow(w[1]));
        if a.target != b.source {
            return Err(err(
                line_no,
                format!("`{}.{}` does not compose: {} ends at {}, {} starts at {}",
                    a.name, b.name, a.name, a.target + 1, b.name, b.source + 1),
            ));
        }
    }
    Ok(Path {
        source: quiver.arrow(arrows[0]).source,
        arrows,
    })
}

/// Parses a `.bq` file and builds it over `S`; the file's field must match.
pub fn parse_algebra<S: Scalar>(text: &str, limits: &Limits) -> Result<Arc<BoundQuiverAlgebra<S>>> {
    let parsed = AlgebraText::parse(text)?;
    if parsed.field != S::field() {
        return Err(Error::FieldMismatch {
            expected: S::field(),
            found: parsed.field,
        });
    }
    parsed.build(limits)
}

/// Parses a `.bq` file and builds it over `S`, ignoring its `field` line.
pub fn parse_algebra_with_field<S: Scalar>(
    text: &str,
    limits: &Limits,
) -> Result<Arc<BoundQuiverAlgebra<S>>> {
    AlgebraText::parse(text)?.build(limits)
}
