//! The `.rep` module format and matrix literals.
//!
//! ```text
//! algebra kron.bq
//! dim 1 1
//! matrix a: [[1]]
//! matrix b: [[0]]
//! ```
//!
//! Arrows without a `matrix` line are zero. Rational entries are written
//! `num/den`. `[]` is the matrix with no rows.

use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::Representation;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits `[[1,2],[3,4]]` into rows of entry texts.
pub fn parse_matrix_literal(text: &str) -> std::result::Result<Vec<Vec<String>>, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected `[[...], ...]`, got `{text}`"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| format!("expected `[` in `{text}`"))?;
        let close = body
            .find(']')
            .ok_or_else(|| format!("unclosed row in `{text}`"))?;
        let row = &body[..close];
        rows.push(if row.is_empty() {
            Vec::new()
        } else {
            row.split(',').map(str::to_string).collect()
        });
        rest = &body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| format!("expected `,` between rows in `{text}`"))?;
    }
    Ok(rows)
}

/// A matrix literal of the given shape over `S`.
pub fn parse_matrix<S: Scalar>(text: &str, rows: usize, cols: usize) -> std::result::Result<Matrix<S>, String> {
    let raw = parse_matrix_literal(text)?;
    // `[]` stands for any matrix without entries.
    if rows * cols == 0 && raw.iter().all(Vec::is_empty) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        let got_cols = raw.first().map_or(0, Vec::len);
        return Err(format!(
            "expected a {rows}x{cols} matrix, got {}x{got_cols}",
            raw.len()
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for entry in raw.iter().flatten() {
        data.push(S::parse_scalar(entry).ok_or_else(|| format!("bad entry `{entry}`"))?);
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

/// A parsed `.rep` file; matrices stay textual until an algebra is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepText {
    /// The `algebra` line, a path relative to the `.rep` file.
    pub algebra: Option<String>,
    pub dims: Vec<usize>,
    pub dims_line: usize,
    /// `(line, arrow name, matrix literal)`
    pub matrices: Vec<(usize, String, String)>,
}

impl RepText {
    pub fn parse(text: &str) -> Result<Self> {
        let mut algebra = None;
        let mut dims = None;
        let mut matrices = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match keyword {
                "algebra" => algebra = Some(rest.to_string()),
                "dim" => {
                    let d = rest
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<usize>().map_err(|_| err(line_no, format!("bad dimension `{s}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    dims = Some((line_no, d));
                }
                "matrix" => {
                    let (name, lit) = rest
                        .split_once(':')
                        .ok_or_else(|| err(line_no, "expected `matrix NAME: [[...]]`"))?;
                    matrices.push((line_no, name.trim().to_string(), lit.trim().to_string()));
                }
                other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        let (dims_line, dims) = dims.ok_or_else(|| err(0, "missing `dim` line"))?;
        Ok(RepText {
            algebra,
            dims,
            dims_line,
            matrices,
        })
    }

    pub fn build<S: Scalar>(&self, algebra: &Arc<BoundQuiverAlgebra<S>>) -> Result<Representation<S>> {
        let q = algebra.quiver();
        if self.dims.len() != q.vertex_count() {
            return Err(err(
                self.dims_line,
                format!(
                    "dimension vector has {} entries, the algebra has {} vertices",
                    self.dims.len(),
                    q.vertex_count()
                ),
            ));
        }
        let mut maps: Vec<Option<Matrix<S>>> = vec![None; q.arrows().len()];
        for (line_no, name, lit) in &self.matrices {
            let a = q
                .arrow_index(name)
                .ok_or_else(|| err(*line_no, format!("unknown arrow `{name}`")))?;
            if maps[a].is_some() {
                return Err(err(*line_no, format!("second matrix for arrow `{name}`")));
            }
            let arrow = q.arrow(a);
            let m = parse_matrix(lit, self.dims[arrow.target], self.dims[arrow.source])
                .map_err(|m| err(*line_no, format!("arrow `{name}`: {m}")))?;
            maps[a] = Some(m);
        }
        let maps = maps
            .into_iter()
            .zip(q.arrows())
            .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(self.dims[a.target], self.dims[a.source])))
            .collect();
        Representation::new(algebra.clone(), self.dims.clone(), maps)
    }
}

pub fn parse_rep<S: Scalar>(text: &str, algebra: &Arc<BoundQuiverAlgebra<S>>) -> Result<Representation<S>> {
    RepText::parse(text)?.build(algebra)
}

/// Writes `X` in the `.rep` format.
pub fn format_rep<S: Scalar>(x: &Representation<S>, algebra_path: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = algebra_path {
        out.push_str(&format!("algebra {p}\n"));
    }
    let dims: Vec<String> = x.dims().iter().map(usize::to_string).collect();
    out.push_str(&format!("dim {}\n", dims.join(" ")));
    for (a, m) in x.algebra().quiver().arrows().iter().zip(x.maps()) {
        out.push_str(&format!("matrix {}: {m}\n", a.name));
    }
    out
}
