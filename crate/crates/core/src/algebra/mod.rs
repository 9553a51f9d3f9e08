//! Bound quiver algebras `kQ/I` with a monomial basis.
//!
//! Paths compose left to right in diagram order: `a.b` traverses `a` first,
//! and acts on a representation as `X_b * X_a`.

mod basis;
pub mod fixtures;
mod modules;
mod parse;
mod quiver;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::Limits;

pub use basis::{monomial_basis, MonomialBasis};
pub use modules::{injective, projective, simple};
pub use parse::{parse_algebra, parse_algebra_with_field, AlgebraText};
pub use quiver::{Arrow, Path, Quiver};

/// A linear combination of paths sharing one source and one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<S> {
    pub terms: Vec<(S, Path)>,
}

impl<S: Scalar> Relation<S> {
    /// Merges repeated paths, drops zero coefficients and checks admissibility.
    pub fn new(quiver: &Quiver, terms: Vec<(S, Path)>) -> Result<Self> {
        let mut merged: Vec<(S, Path)> = Vec::new();
        for (c, p) in terms {
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc = acc.clone() + c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        let rel = Relation { terms: merged };
        let shown = rel.format(quiver);
        let not_admissible = |reason: &str| Error::NotAdmissible {
            relation: shown.clone(),
            reason: reason.to_string(),
        };
        let Some((_, first)) = rel.terms.first() else {
            return Err(not_admissible("no nonzero coefficient"));
        };
        let (s, t) = (first.source, quiver.path_target(first));
        for (_, p) in &rel.terms {
            if p.len() < 2 {
                return Err(not_admissible("contains a path of length < 2"));
            }
            if p.source != s || quiver.path_target(p) != t {
                return Err(not_admissible("paths have different endpoints"));
            }
        }
        Ok(rel)
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self, quiver: &Quiver) -> usize {
        quiver.path_target(&self.terms[0].1)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn format(&self, quiver: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{c}*{}", quiver.format_path(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `kQ/I` for an admissible ideal `I`, with a deglex monomial basis.
#[derive(Debug)]
pub struct BoundQuiverAlgebra<S> {
    quiver: Quiver,
    relations: Vec<Relation<S>>,
    basis: MonomialBasis<S>,
    warnings: Vec<String>,
}

impl<S: Scalar> BoundQuiverAlgebra<S> {
    pub fn new(quiver: Quiver, relations: Vec<Relation<S>>, limits: &Limits) -> Result<Arc<Self>> {
        let basis = monomial_basis(&quiver, &relations, limits)?;
        let mut warnings = Vec::new();
        if !quiver.is_connected() {
            warnings.push("quiver is not connected; the algebra is a direct product".to_string());
        }
        Ok(Arc::new(BoundQuiverAlgebra {
            quiver,
            relations,
            basis,
            warnings,
        }))
    }

    pub fn field(&self) -> FieldSpec {
        S::field()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<S>] {
        &self.relations
    }

    /// Number of vertices, i.e. the rank of the algebra.
    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.paths.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis.paths
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis.index.get(p).copied()
    }

    /// Smallest `L` such that every path of length `L` is zero in the algebra.
    pub fn nilpotency_index(&self) -> usize {
        self.basis.nilpotency
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// A path rewritten in the basis, as sparse `(basis index, coefficient)`.
    pub fn reduce_path(&self, p: &Path) -> Vec<(usize, S)> {
        self.basis.reduce(p)
    }

    /// Basis paths from `source` to `target`, as basis indices in basis order.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        self.basis
            .paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.source == source && self.quiver.path_target(p) == target)
            .map(|(i, _)| i)
            .collect()
    }

    /// Product `x * y` of basis combinations (dense coefficient vectors).
    pub fn multiply(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra elements must have {} coordinates",
                self.dim()
            )));
        }
        let mut out = vec![S::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let Some(pq) = self.quiver.compose(&self.basis.paths[i], &self.basis.paths[j])
                else {
                    continue;
                };
                for (k, c) in self.reduce_path(&pq) {
                    out[k] = out[k].clone() + xi.clone() * yj.clone() * c;
                }
            }
        }
        Ok(out)
    }

    /// Unit vector of a basis element.
    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    /// Per-vertex count of basis paths starting at that vertex.
    pub fn paths_from_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank()];
        for p in &self.basis.paths {
            counts[p.source] += 1;
        }
        counts
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self
            .basis
            .paths
            .iter()
            .map(|p| self.quiver.format_path(p))
            .collect();
        format!("dim {} over {}: {{{}}}", self.dim(), S::field(), names.join(", "))
    }

    /// Sparse combination of paths, reduced to a dense basis vector.
    pub fn reduce_combination(&self, terms: &[(S, Path)]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (c, p) in terms {
            for (k, v) in self.reduce_path(p) {
                out[k] = out[k].clone() + c.clone() * v;
            }
        }
        out
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || (self.quiver == other.quiver
                && self.relations == other.relations
                && self.basis.paths == other.basis.paths)
    }
}

impl<S: Scalar> BoundQuiverAlgebra<S> {
    /// Reduction table restricted to the paths it stores, for inspection.
    pub fn normal_forms(&self) -> &HashMap<Path, Vec<(usize, S)>> {
        &self.basis.normal_forms
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures;
    use crate::{F2, F3, Q};

    #[test]
    fn local_algebra_dimension_two() {
        let a = fixtures::local_dual_numbers::<F2>();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.describe(), "dim 2 over F_2: {e_1, a}");
    }

    #[test]
    fn a2_and_kronecker_dimensions() {
        assert_eq!(fixtures::a2::<Q>().dim(), 3);
        assert_eq!(fixtures::kronecker::<F3>().describe(), "dim 4 over F_3: {e_1, e_2, a, b}");
    }

    #[test]
    fn multiplication_rules() {
        let loc = fixtures::local_dual_numbers::<F3>();
        let x = loc.basis_vector(1);
        assert!(loc.multiply(&x, &x).unwrap().iter().all(|c| *c == F3::new(0)));

        let a2 = fixtures::a2::<F2>();
        for i in 0..2 {
            for j in 0..2 {
                let prod = a2.multiply(&a2.basis_vector(i), &a2.basis_vector(j)).unwrap();
                let expected = if i == j { a2.basis_vector(i) } else { vec![F2::new(0); 3] };
                assert_eq!(prod, expected);
            }
        }
        // e_1 * a = a: the source idempotent multiplies on the left.
        let a = a2.basis_vector(2);
        assert_eq!(a2.multiply(&a2.basis_vector(0), &a).unwrap(), a);
        assert!(a2.multiply(&a2.basis_vector(1), &a).unwrap().iter().all(|c| *c == F2::new(0)));
        assert_eq!(a2.multiply(&a, &a2.basis_vector(1)).unwrap(), a);
    }

    #[test]
    fn multiplication_is_associative_on_basis() {
        let sq = fixtures::commutative_square::<Q>();
        let n = sq.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (sq.basis_vector(i), sq.basis_vector(j), sq.basis_vector(k));
                    let left = sq.multiply(&sq.multiply(&x, &y).unwrap(), &z).unwrap();
                    let right = sq.multiply(&x, &sq.multiply(&y, &z).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn source_counts_sum_to_dimension() {
        let sq = fixtures::commutative_square::<F3>();
        assert_eq!(sq.paths_from_counts().iter().sum::<usize>(), sq.dim());
        assert_eq!(sq.paths_from_counts(), vec![4, 2, 2, 1]);
    }
}
