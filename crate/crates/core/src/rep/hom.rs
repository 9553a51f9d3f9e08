//! Module homomorphisms and Hom spaces.
//!
//! `Hom_A(X, Y)` is the null space of one stacked linear system: for every
//! arrow `a: s -> t`, `Y_a * phi_s - phi_t * X_a = 0`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::Representation;

/// A tuple of vertex matrices `phi_v: X_v -> Y_v` commuting with the arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    components: Vec<Matrix<S>>,
}

impl<S: Scalar> ModuleMap<S> {
    /// Validates shapes and the intertwining equations.
    pub fn new(
        source: Representation<S>,
        target: Representation<S>,
        components: Vec<Matrix<S>>,
    ) -> Result<Self> {
        source.check_same_algebra(&target)?;
        let n = source.dims().len();
        if components.len() != n {
            return Err(Error::MalformedMap(format!(
                "{} vertex matrices for {n} vertices",
                components.len()
            )));
        }
        for (v, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::MalformedMap(format!(
                    "vertex {} needs a {}x{} matrix, got {}x{}",
                    v + 1,
                    target.dim(v),
                    source.dim(v),
                    c.rows(),
                    c.cols()
                )));
            }
        }
        let q = source.algebra().quiver();
        for (i, a) in q.arrows().iter().enumerate() {
            let lhs = target.map(i) * &components[a.source];
            let rhs = &components[a.target] * source.map(i);
            if lhs != rhs {
                return Err(Error::MalformedMap(format!(
                    "does not commute with arrow `{}`",
                    a.name
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            components,
        })
    }

    pub(crate) fn new_unchecked(
        source: Representation<S>,
        target: Representation<S>,
        components: Vec<Matrix<S>>,
    ) -> Self {
        debug_assert!(ModuleMap::new(source.clone(), target.clone(), components.clone()).is_ok());
        ModuleMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(x: &Representation<S>) -> Self {
        let components = x.dims().iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn zero(x: &Representation<S>, y: &Representation<S>) -> Self {
        let components = x
            .dims()
            .iter()
            .zip(y.dims())
            .map(|(&d, &e)| Matrix::zeros(e, d))
            .collect();
        ModuleMap {
            source: x.clone(),
            target: y.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Representation<S> {
        &self.source
    }

    pub fn target(&self) -> &Representation<S> {
        &self.target
    }

    pub fn components(&self) -> &[Matrix<S>] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &Matrix<S> {
        &self.components[v]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Per-vertex ranks; their sum is the dimension of the image.
    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }

    pub fn image_dim(&self) -> usize {
        self.ranks().iter().sum()
    }

    pub fn is_injective(&self) -> bool {
        self.ranks().iter().zip(self.source.dims()).all(|(r, d)| r == d)
    }

    pub fn is_surjective(&self) -> bool {
        self.ranks().iter().zip(self.target.dims()).all(|(r, d)| r == d)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(Matrix::is_invertible)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap<S>) -> Result<ModuleMap<S>> {
        if self.target != other.source {
            return Err(Error::MalformedMap("composition of non-matching maps".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| g * f)
            .collect();
        Ok(ModuleMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }

    /// The image as a subrepresentation of the target, with the inclusion
    /// into the target and the corestriction from the source.
    pub fn image(&self) -> Result<MapImage<S>> {
        let bases: Vec<Matrix<S>> = self.components.iter().map(Matrix::column_space).collect();
        let image = self.target.restrict(&bases)?;
        let mut corestriction = Vec::with_capacity(bases.len());
        for (b, f) in bases.iter().zip(&self.components) {
            let c = b
                .solve_matrix(f)?
                .expect("every column of f lies in its column space");
            corestriction.push(c);
        }
        let inclusion = ModuleMap::new_unchecked(image.clone(), self.target.clone(), bases);
        let surjection = ModuleMap::new_unchecked(self.source.clone(), image.clone(), corestriction);
        Ok(MapImage {
            image,
            inclusion,
            surjection,
        })
    }

    /// The kernel as a subrepresentation of the source, with its inclusion.
    pub fn kernel(&self) -> Result<(Representation<S>, ModuleMap<S>)> {
        let bases: Vec<Matrix<S>> = self.components.iter().map(Matrix::kernel_matrix).collect();
        let kernel = self.source.restrict(&bases)?;
        let inclusion = ModuleMap::new_unchecked(kernel.clone(), self.source.clone(), bases);
        Ok((kernel, inclusion))
    }

    /// The cokernel as a quotient of the target, with the projection.
    pub fn cokernel(&self) -> Result<(Representation<S>, ModuleMap<S>)> {
        let bases: Vec<Matrix<S>> = self.components.iter().map(Matrix::column_space).collect();
        let (quotient, projections) = self.target.quotient(&bases)?;
        let projection = ModuleMap::new_unchecked(self.target.clone(), quotient.clone(), projections);
        Ok((quotient, projection))
    }
}

/// Result of [`map_image`].
#[derive(Clone, Debug)]
pub struct MapImage<S: Scalar> {
    pub image: Representation<S>,
    /// Image into the target of the map.
    pub inclusion: ModuleMap<S>,
    /// Source of the map onto the image.
    pub surjection: ModuleMap<S>,
}

pub fn map_image<S: Scalar>(f: &ModuleMap<S>) -> Result<MapImage<S>> {
    f.image()
}

/// A basis of `Hom_A(X, Y)`.
#[derive(Clone, Debug)]
pub struct HomBasis<S: Scalar> {
    source: Representation<S>,
    target: Representation<S>,
    maps: Vec<ModuleMap<S>>,
}

impl<S: Scalar> HomBasis<S> {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[ModuleMap<S>] {
        &self.maps
    }

    pub fn source(&self) -> &Representation<S> {
        &self.source
    }

    pub fn target(&self) -> &Representation<S> {
        &self.target
    }

    /// `Σ coeffs[i] * maps[i]`.
    pub fn combine(&self, coeffs: &[S]) -> ModuleMap<S> {
        assert_eq!(coeffs.len(), self.maps.len(), "one coefficient per basis map");
        let mut components: Vec<Matrix<S>> = self
            .source
            .dims()
            .iter()
            .zip(self.target.dims())
            .map(|(&d, &e)| Matrix::zeros(e, d))
            .collect();
        for (c, m) in coeffs.iter().zip(&self.maps) {
            if c.is_zero() {
                continue;
            }
            for (acc, comp) in components.iter_mut().zip(m.components()) {
                *acc = &*acc + &comp.scale(c);
            }
        }
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        }
    }
}

/// Offsets of each vertex block inside the flattened unknown vector.
fn offsets(x: &Representation<impl Scalar>, y: &Representation<impl Scalar>) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(x.dims().len());
    let mut total = 0;
    for (&d, &e) in x.dims().iter().zip(y.dims()) {
        off.push(total);
        total += d * e;
    }
    (off, total)
}

/// The intertwining system whose null space is `Hom_A(X, Y)`. Unknowns are
/// the entries of `phi_v`, vertex by vertex, row-major.
pub(crate) fn intertwining_system<S: Scalar>(
    x: &Representation<S>,
    y: &Representation<S>,
) -> (Matrix<S>, Vec<usize>) {
    let q = x.algebra().quiver();
    let (off, unknowns) = offsets(x, y);
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (xa, ya) = (x.map(i), y.map(i));
        // Entry (r, c) of Y_a phi_s - phi_t X_a.
        for r in 0..y.dim(t) {
            for c in 0..x.dim(s) {
                let mut row = vec![S::zero(); unknowns];
                for k in 0..y.dim(s) {
                    let coef = ya[(r, k)].clone();
                    if !coef.is_zero() {
                        let idx = off[s] + k * x.dim(s) + c;
                        row[idx] = row[idx].clone() + coef;
                    }
                }
                for k in 0..x.dim(t) {
                    let coef = xa[(k, c)].clone();
                    if !coef.is_zero() {
                        let idx = off[t] + r * x.dim(t) + k;
                        row[idx] = row[idx].clone() - coef;
                    }
                }
                rows.push(row);
            }
        }
    }
    let n = rows.len();
    let system = Matrix::from_vec(n, unknowns, rows.into_iter().flatten().collect());
    (system, off)
}

/// `Hom_A(X, Y)` via a single null-space computation.
pub fn hom_basis<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<HomBasis<S>> {
    x.check_same_algebra(y)?;
    let (system, off) = intertwining_system(x, y);
    let maps = system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let components = (0..x.dims().len())
                .map(|vert| {
                    let (d, e) = (x.dim(vert), y.dim(vert));
                    Matrix::from_vec(e, d, v[off[vert]..off[vert] + d * e].to_vec())
                })
                .collect();
            ModuleMap {
                source: x.clone(),
                target: y.clone(),
                components,
            }
        })
        .collect();
    Ok(HomBasis {
        source: x.clone(),
        target: y.clone(),
        maps,
    })
}

/// `dim Hom_A(X, Y)` without materialising the basis.
pub fn hom_dim<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<usize> {
    x.check_same_algebra(y)?;
    let (system, _) = intertwining_system(x, y);
    Ok(system.cols() - system.rank())
}
