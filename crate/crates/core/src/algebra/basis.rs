//! Layered elimination producing a monomial basis of `kQ/I`.
//!
//! For `L = 1, 2, ...` the ideal is spanned inside `kQ / R^(L+1)` by all
//! products `u * r * v` (relation `r`, paths `u`, `v`), truncated above
//! length `L`. Columns are ordered deglex-descending, so row reduction
//! eliminates leading terms and the free columns are the surviving
//! monomials. The first `L` at which every length-`L` path reduces to zero
//! certifies nilpotency; the basis and reduction table are read off there.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::Limits;

use super::quiver::{Path, Quiver};
use super::Relation;

#[derive(Clone, Debug)]
pub struct MonomialBasis<S> {
    /// Basis monomials in deglex-ascending order.
    pub paths: Vec<Path>,
    pub index: HashMap<Path, usize>,
    /// Normal forms of the non-basis paths of length below `nilpotency`.
    pub normal_forms: HashMap<Path, Vec<(usize, S)>>,
    /// Every path of this length or longer is zero.
    pub nilpotency: usize,
}

impl<S: Scalar> MonomialBasis<S> {
    pub fn reduce(&self, p: &Path) -> Vec<(usize, S)> {
        if let Some(&i) = self.index.get(p) {
            return vec![(i, S::one())];
        }
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }
}

pub fn monomial_basis<S: Scalar>(
    quiver: &Quiver,
    relations: &[Relation<S>],
    limits: &Limits,
) -> Result<MonomialBasis<S>> {
    let counts = quiver.path_counts(limits.max_path_length);
    for level in 1..=limits.max_path_length {
        let total: u64 = counts[..=level]
            .iter()
            .fold(0u64, |s, &c| s.saturating_add(c));
        if total > limits.max_paths as u64 {
            return Err(Error::cap(
                format!("paths of length <= {level} (possibly infinite-dimensional)"),
                total,
                limits.max_paths as u64,
            ));
        }
        if let Some(basis) = try_level(quiver, relations, level) {
            return Ok(basis);
        }
    }
    Err(Error::cap(
        "nilpotency layer (possibly infinite-dimensional)",
        format!("> {}", limits.max_path_length),
        limits.max_path_length as u64,
    ))
}

fn try_level<S: Scalar>(
    quiver: &Quiver,
    relations: &[Relation<S>],
    level: usize,
) -> Option<MonomialBasis<S>> {
    let layers: Vec<Vec<Path>> = (0..=level).map(|l| quiver.paths_of_length(l)).collect();

    // Columns: longest paths first, deglex-descending within a length.
    let mut columns: Vec<Path> = layers.iter().rev().flat_map(|l| l.iter().rev().cloned()).collect();
    columns.dedup();
    let col_of: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut rows: Vec<Vec<S>> = Vec::new();
    for rel in relations {
        let (s, t) = (rel.source(), rel.target(quiver));
        let room = match level.checked_sub(rel.min_len()) {
            Some(r) => r,
            None => continue,
        };
        for lu in 0..=room {
            for u in layers[lu].iter().filter(|u| quiver.path_target(u) == s) {
                for lv in 0..=(room - lu) {
                    for v in layers[lv].iter().filter(|v| v.source == t) {
                        let mut row = vec![S::zero(); columns.len()];
                        let mut any = false;
                        for (c, p) in &rel.terms {
                            let len = u.len() + p.len() + v.len();
                            if len > level {
                                continue;
                            }
                            let up = quiver.compose(u, p).expect("u ends at the relation source");
                            let upv = quiver.compose(&up, v).expect("v starts at the relation target");
                            let k = col_of[&upv];
                            row[k] = row[k].clone() + c.clone();
                            any = true;
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }

    let rref = if rows.is_empty() {
        Matrix::<S>::zeros(0, columns.len()).rref()
    } else {
        let n = rows.len();
        Matrix::from_vec(n, columns.len(), rows.into_iter().flatten().collect()).rref()
    };
    let mut pivot_row: HashMap<usize, usize> = HashMap::new();
    for (r, &c) in rref.pivots.iter().enumerate() {
        pivot_row.insert(c, r);
    }

    // Certificate: each length-`level` path must have a zero normal form.
    for p in &layers[level] {
        let c = col_of[p];
        let Some(&r) = pivot_row.get(&c) else {
            return None;
        };
        let row = rref.reduced.row(r);
        if row.iter().enumerate().any(|(j, x)| j != c && !x.is_zero()) {
            return None;
        }
    }

    // Free columns are the basis; list them deglex-ascending.
    let mut paths: Vec<Path> = columns
        .iter()
        .enumerate()
        .filter(|(c, _)| !pivot_row.contains_key(c))
        .map(|(_, p)| p.clone())
        .collect();
    paths.reverse();
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    let mut normal_forms = HashMap::new();
    for (&c, &r) in &pivot_row {
        let p = &columns[c];
        if p.len() >= level {
            continue;
        }
        let row = rref.reduced.row(r);
        let nf: Vec<(usize, S)> = row
            .iter()
            .enumerate()
            .filter(|(j, x)| *j != c && !x.is_zero())
            .map(|(j, x)| (index[&columns[j]], -x.clone()))
            .collect();
        normal_forms.insert(p.clone(), nf);
    }

    Some(MonomialBasis {
        paths,
        index,
        normal_forms,
        nilpotency: level,
    })
}
