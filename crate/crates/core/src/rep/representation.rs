use std::fmt;
use std::sync::Arc;

use crate::algebra::{BoundQuiverAlgebra, Path};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A relation that does not evaluate to zero on a candidate representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: usize,
    pub text: String,
}

/// A representation of a bound quiver: one vector space per vertex (given by
/// its dimension) and one matrix per arrow, of shape `d_target x d_source`.
#[derive(Clone)]
pub struct Representation<S> {
    algebra: Arc<BoundQuiverAlgebra<S>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<S>>,
}

/// Checks arrow-matrix shapes, then evaluates every relation.
pub fn validate_rep<S: Scalar>(
    algebra: &BoundQuiverAlgebra<S>,
    dims: &[usize],
    maps: &[Matrix<S>],
) -> Result<Vec<RelationViolation>> {
    let q = algebra.quiver();
    if dims.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            dims.len(),
            q.vertex_count()
        )));
    }
    if maps.len() != q.arrows().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} arrow matrices for {} arrows",
            maps.len(),
            q.arrows().len()
        )));
    }
    for (a, m) in q.arrows().iter().zip(maps) {
        let want = (dims[a.target], dims[a.source]);
        if m.shape() != want {
            return Err(Error::DimensionMismatch(format!(
                "arrow `{}` needs a {}x{} matrix, got {}x{}",
                a.name,
                want.0,
                want.1,
                m.rows(),
                m.cols()
            )));
        }
    }
    let mut violations = Vec::new();
    for (i, rel) in algebra.relations().iter().enumerate() {
        let (s, t) = (rel.source(), rel.target(q));
        let mut total = Matrix::zeros(dims[t], dims[s]);
        for (c, p) in &rel.terms {
            total = &total + &path_action(dims, maps, p).scale(c);
        }
        if !total.is_zero() {
            violations.push(RelationViolation {
                relation: i,
                text: rel.format(q),
            });
        }
    }
    Ok(violations)
}

fn path_action<S: Scalar>(
    dims: &[usize],
    maps: &[Matrix<S>],
    p: &Path,
) -> Matrix<S> {
    let mut acc = Matrix::identity(dims[p.source]);
    for &a in &p.arrows {
        acc = &maps[a] * &acc;
    }
    acc
}

impl<S: Scalar> Representation<S> {
    /// Builds and validates a representation.
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra<S>>,
        dims: Vec<usize>,
        maps: Vec<Matrix<S>>,
    ) -> Result<Self> {
        let violations = validate_rep(&algebra, &dims, &maps)?;
        if let Some(v) = violations.first() {
            return Err(Error::InvalidRepresentation(format!(
                "relation `{}` does not vanish",
                v.text
            )));
        }
        Ok(Representation { algebra, dims, maps })
    }

    /// Skips relation checking; shapes are still asserted in debug builds.
    pub(crate) fn new_unchecked(
        algebra: Arc<BoundQuiverAlgebra<S>>,
        dims: Vec<usize>,
        maps: Vec<Matrix<S>>,
    ) -> Self {
        debug_assert!(validate_rep(&algebra, &dims, &maps).map_or(false, |v| v.is_empty()));
        Representation { algebra, dims, maps }
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra<S>>) -> Self {
        let n = algebra.rank();
        let maps = vec![Matrix::zeros(0, 0); algebra.quiver().arrows().len()];
        Representation {
            algebra,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra<S>> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix<S> {
        &self.maps[arrow]
    }

    pub fn map_by_name(&self, name: &str) -> Option<&Matrix<S>> {
        self.algebra.quiver().arrow_index(name).map(|a| &self.maps[a])
    }

    /// `X_p` for a path `p = a1.a2...ak`, i.e. `X_ak * ... * X_a1`.
    pub fn path_action(&self, p: &Path) -> Matrix<S> {
        path_action(&self.dims, &self.maps, p)
    }

    /// Action of a basis element of the algebra.
    pub fn basis_action(&self, i: usize) -> Matrix<S> {
        self.path_action(&self.algebra.basis()[i])
    }

    /// Action of a combination of basis paths from `source` to `target`.
    pub fn element_action(&self, coeffs: &[(usize, S)], source: usize, target: usize) -> Matrix<S> {
        let mut acc = Matrix::zeros(self.dims[target], self.dims[source]);
        for (i, c) in coeffs {
            acc = &acc + &self.basis_action(*i).scale(c);
        }
        acc
    }

    pub fn violations(&self) -> Vec<RelationViolation> {
        validate_rep(&self.algebra, &self.dims, &self.maps).unwrap_or_default()
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra)
    }

    pub(crate) fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dims,
            maps,
        })
    }

    /// `⊕ modules`; the zero module for an empty list.
    pub fn direct_sum_all(algebra: &Arc<BoundQuiverAlgebra<S>>, modules: &[Self]) -> Result<Self> {
        let mut acc = Self::zero(algebra.clone());
        for m in modules {
            acc = acc.direct_sum(m)?;
        }
        Ok(acc)
    }

    /// The isomorphic representation `g_t X_a g_s^-1` for invertible `g_v`.
    pub fn base_change(&self, g: &[Matrix<S>]) -> Result<Self> {
        if g.len() != self.dims.len() {
            return Err(Error::DimensionMismatch("one matrix per vertex".into()));
        }
        let mut inverses = Vec::with_capacity(g.len());
        for (v, m) in g.iter().enumerate() {
            if m.shape() != (self.dims[v], self.dims[v]) {
                return Err(Error::DimensionMismatch(format!("vertex {} change of basis", v + 1)));
            }
            inverses.push(
                m.inverse()
                    .ok_or_else(|| Error::DimensionMismatch(format!("vertex {} matrix is singular", v + 1)))?,
            );
        }
        let q = self.algebra.quiver();
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target] * m) * &inverses[a.source])
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            dims: self.dims.clone(),
            maps,
        })
    }

    /// Flattened arrow-matrix entries, arrow by arrow, row-major: the
    /// coordinates of this point of the representation space.
    pub fn point_coordinates(&self) -> Vec<S> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Restriction to arrow-stable subspaces given by full-column-rank
    /// basis matrices `bases[v]`; returns the subrepresentation.
    pub(crate) fn restrict(&self, bases: &[Matrix<S>]) -> Result<Self> {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            let image = m * &bases[a.source];
            let induced = bases[a.target].solve_matrix(&image)?.ok_or_else(|| {
                Error::InvalidRepresentation(format!("subspace is not stable under `{}`", a.name))
            })?;
            maps.push(induced);
        }
        Ok(Representation::new_unchecked(self.algebra.clone(), dims, maps))
    }

    /// Quotient by arrow-stable subspaces `bases[v]`. Returns the quotient
    /// and, per vertex, the projection matrix onto it.
    pub(crate) fn quotient(&self, bases: &[Matrix<S>]) -> Result<(Self, Vec<Matrix<S>>)> {
        let q = self.algebra.quiver();
        let mut projections = Vec::with_capacity(bases.len());
        let mut lifts = Vec::with_capacity(bases.len());
        for b in bases {
            let (proj, lift) = b.quotient_maps().ok_or_else(|| {
                Error::InvalidRepresentation("subspace basis is not independent".into())
            })?;
            projections.push(proj);
            lifts.push(lift);
        }
        let dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&projections[a.target] * m) * &lifts[a.source])
            .collect();
        Ok((
            Representation::new_unchecked(self.algebra.clone(), dims, maps),
            projections,
        ))
    }
}

impl<S: Scalar> PartialEq for Representation<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims == other.dims && self.maps == other.maps
    }
}

impl<S: Scalar> Eq for Representation<S> {}

impl<S: Scalar> fmt::Debug for Representation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.algebra.quiver();
        write!(f, "Rep(dim {:?}", self.dims)?;
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            write!(f, ", {}={}", a.name, m)?;
        }
        write!(f, ")")
    }
}
