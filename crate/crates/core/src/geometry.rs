//! Orbits and tangent spaces in `rep(A, d)`, Zwara exact-sequence
//! certificates for degenerations, and the generic number of parameters.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::census::{ambient_dim, rep_points};
use crate::error::{Error, Result};
use crate::homology::{ext1_dim, is_tau_rigid, projective_dimension, ProjectiveDimension};
use crate::linalg::Matrix;
use crate::rep::{automorphism_count, end_dim, ModuleMap, Representation};
use crate::scalar::Scalar;

/// `dim O_X = Σ d_i^2 - dim End(X)`.
pub fn orbit_dim<S: Scalar>(x: &Representation<S>) -> Result<usize> {
    let gl: usize = x.dims().iter().map(|d| d * d).sum();
    Ok(gl - end_dim(x)?)
}

/// The linearised relation equations at `X`: one row per entry of each
/// relation, one column per arrow-matrix entry (arrow by arrow, row-major).
fn linearised_relations<S: Scalar>(x: &Representation<S>) -> Matrix<S> {
    let algebra = x.algebra();
    let q = algebra.quiver();
    let dims = x.dims();
    let mut col_offset = Vec::with_capacity(q.arrows().len());
    let mut cols = 0;
    for a in q.arrows() {
        col_offset.push(cols);
        cols += dims[a.source] * dims[a.target];
    }
    let mut rows: Vec<Vec<S>> = Vec::new();
    for rel in algebra.relations() {
        let (s, t) = (rel.source(), rel.target(q));
        let mut block = vec![vec![S::zero(); cols]; dims[t] * dims[s]];
        for (c, p) in &rel.terms {
            // d(X_ak ... X_a1) = Σ_j X_ak..X_a(j+1) · dX_aj · X_a(j-1)..X_a1
            for (j, &aj) in p.arrows.iter().enumerate() {
                let arrow = q.arrow(aj);
                let mut right = Matrix::identity(dims[s]);
                for &b in &p.arrows[..j] {
                    right = x.map(b) * &right;
                }
                let mut left = Matrix::identity(dims[arrow.target]);
                for &b in &p.arrows[j + 1..] {
                    left = x.map(b) * &left;
                }
                let width = dims[arrow.source];
                for r in 0..dims[t] {
                    for cc in 0..dims[s] {
                        let row = &mut block[r * dims[s] + cc];
                        for u in 0..dims[arrow.target] {
                            if left[(r, u)].is_zero() {
                                continue;
                            }
                            for w in 0..width {
                                let coef = c.clone() * left[(r, u)].clone() * right[(w, cc)].clone();
                                if !coef.is_zero() {
                                    let k = col_offset[aj] + u * width + w;
                                    row[k] = row[k].clone() + coef;
                                }
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block);
    }
    let n = rows.len();
    Matrix::from_vec(n, cols, rows.into_iter().flatten().collect())
}

/// Dimension of the scheme-theoretic tangent space of `rep(A, d)` at `X`:
/// the kernel of the linearised relations.
pub fn tangent_dim<S: Scalar>(x: &Representation<S>) -> usize {
    let m = linearised_relations(x);
    m.cols() - m.rank()
}

/// Orders of the finite general linear groups `∏ |GL(d_v, F_q)|`.
fn gl_order(q: u64, dims: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    for &d in dims {
        let qd = (q as u128).checked_pow(d as u32)?;
        for i in 0..d {
            total = total.checked_mul(qd - (q as u128).pow(i as u32))?;
        }
    }
    Some(total)
}

/// Whether the `F_q`-points of `rep(A, d)` form the single orbit of `X`:
/// `#rep(A, d)(F_q) = |GL(d)| / |Aut X|`.
pub fn single_orbit_points<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<bool> {
    let q = S::order().ok_or(Error::RationalFieldUnsupported("orbit point count"))?;
    let points = rep_points(x.algebra(), x.dims(), cap)?.len() as u128;
    let aut = automorphism_count(x, cap)? as u128;
    let gl = gl_order(q, x.dims()).ok_or_else(|| Error::cap("orbit point count: |GL(d)|", "overflow", cap))?;
    Ok(points * aut == gl)
}

/// For bricks of projective dimension at most one: either `X` is τ-rigid,
/// or the bricks of its dimension form an infinite family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityDichotomy {
    pub tau_rigid: bool,
    pub tangent_equals_orbit: bool,
    /// `tau_rigid == tangent_equals_orbit`.
    pub consistent: bool,
    /// Not τ-rigid, so bricks of this dimension come in an infinite family.
    pub infinite_brick_family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub orbit_dim: usize,
    /// Scheme-theoretic tangent dimension (linearised relations).
    pub tangent_dim: usize,
    pub ext1_self: usize,
    /// `dim rep(A, d)` when the algebra has no relations (an affine space).
    pub ambient_dim: Option<usize>,
    pub is_brick: bool,
    pub projective_dimension: ProjectiveDimension,
    /// `tangent - orbit <= dim Ext^1(X, X)`.
    pub tangent_bound_holds: bool,
    /// `Ext^1(X, X) = 0` implies `tangent = orbit`.
    pub rigid_orbit_open: bool,
    pub dichotomy: Option<RigidityDichotomy>,
    /// Tangent dimension of the reduced variety at `X`, known when the
    /// finite-field points of `rep(A, d)` are exactly the orbit of `X`; the
    /// reduced variety is then that orbit and its tangent space has the
    /// orbit's dimension. Only computed for algebras with relations.
    pub variety_tangent_dim: Option<usize>,
}

impl GeometryReport {
    /// `tangent - orbit < Ext^1` at the level of the reduced variety.
    pub fn variety_bound_strict(&self) -> Option<bool> {
        self.variety_tangent_dim
            .map(|t| t.saturating_sub(self.orbit_dim) < self.ext1_self)
    }
}

pub fn geometry_report<S: Scalar>(x: &Representation<S>, resolution_cap: usize, cap: u64) -> Result<GeometryReport> {
    let end = end_dim(x)?;
    let orbit = orbit_dim(x)?;
    let tangent = tangent_dim(x);
    let ext1 = ext1_dim(x, x)?;
    let hereditary = x.algebra().is_hereditary();
    let is_brick = end == 1;
    let pd = if x.is_zero() {
        ProjectiveDimension::Exactly(0)
    } else {
        projective_dimension(x, resolution_cap)?
    };
    let dichotomy = if is_brick && pd.at_most(1) {
        let tau_rigid = is_tau_rigid(x)?;
        let tangent_equals_orbit = tangent == orbit;
        Some(RigidityDichotomy {
            tau_rigid,
            tangent_equals_orbit,
            consistent: tau_rigid == tangent_equals_orbit,
            infinite_brick_family: !tau_rigid,
        })
    } else {
        None
    };
    let variety_tangent_dim = if !hereditary && S::order().is_some() {
        match single_orbit_points(x, cap) {
            Ok(true) => Some(orbit),
            Ok(false) | Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(GeometryReport {
        dims: x.dims().to_vec(),
        end_dim: end,
        orbit_dim: orbit,
        tangent_dim: tangent,
        ext1_self: ext1,
        ambient_dim: hereditary.then(|| ambient_dim(x.algebra(), x.dims())),
        is_brick,
        projective_dimension: pd,
        tangent_bound_holds: tangent <= orbit + ext1,
        rigid_orbit_open: ext1 != 0 || tangent == orbit,
        dichotomy,
        variety_tangent_dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZwaraShape {
    /// `0 -> N -> M ⊕ Z -> Z -> 0`
    #[serde(rename = "2")]
    SubFirst,
    /// `0 -> Z -> M ⊕ Z -> N -> 0`
    #[serde(rename = "3")]
    SubLast,
}

impl std::str::FromStr for ZwaraShape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "2" => Ok(ZwaraShape::SubFirst),
            "3" => Ok(ZwaraShape::SubLast),
            other => Err(format!("shape must be 2 or 3, got `{other}`")),
        }
    }
}

/// Explicit maps of a short exact sequence exhibiting `M` degenerating to
/// `N`. The middle term is `M ⊕ Z` with the `M` coordinates first.
#[derive(Clone, Debug)]
pub struct ZwaraCertificate<S: Scalar> {
    pub shape: ZwaraShape,
    pub n: Representation<S>,
    pub m: Representation<S>,
    pub z: Representation<S>,
    pub alpha: Vec<Matrix<S>>,
    pub beta: Vec<Matrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZwaraReport {
    pub exact: bool,
    pub dims_match: bool,
    /// What failed, empty when the sequence is exact.
    pub failures: Vec<String>,
    pub end_dim_n: usize,
    pub end_dim_m: usize,
    /// Exact, equal dimension vectors and `N ≇ M`. For an exact sequence
    /// `N` lies in the orbit closure of `M`, so `N ≇ M` is equivalent to the
    /// smaller orbit, i.e. `dim End N > dim End M`.
    pub degenerates: bool,
}

fn check_shapes<S: Scalar>(
    name: &str,
    maps: &[Matrix<S>],
    from: &Representation<S>,
    to: &Representation<S>,
) -> Result<()> {
    if maps.len() != from.dims().len() {
        return Err(Error::MalformedMap(format!(
            "{name}: {} vertex matrices for {} vertices",
            maps.len(),
            from.dims().len()
        )));
    }
    for (v, m) in maps.iter().enumerate() {
        if m.shape() != (to.dim(v), from.dim(v)) {
            return Err(Error::MalformedMap(format!(
                "{name} at vertex {}: expected {}x{}, got {}x{}",
                v + 1,
                to.dim(v),
                from.dim(v),
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// Checks exactness of the certificate's sequence by linear algebra.
pub fn zwara_verify<S: Scalar>(cert: &ZwaraCertificate<S>) -> Result<ZwaraReport> {
    cert.n.check_same_algebra(&cert.m)?;
    cert.n.check_same_algebra(&cert.z)?;
    let middle = cert.m.direct_sum(&cert.z)?;
    let (first, last) = match cert.shape {
        ZwaraShape::SubFirst => (&cert.n, &cert.z),
        ZwaraShape::SubLast => (&cert.z, &cert.n),
    };
    check_shapes("alpha", &cert.alpha, first, &middle)?;
    check_shapes("beta", &cert.beta, &middle, last)?;

    let mut failures = Vec::new();
    let alpha = ModuleMap::new(first.clone(), middle.clone(), cert.alpha.clone());
    let beta = ModuleMap::new(middle.clone(), last.clone(), cert.beta.clone());
    if let Err(e) = &alpha {
        failures.push(format!("alpha is not a module map: {e}"));
    }
    if let Err(e) = &beta {
        failures.push(format!("beta is not a module map: {e}"));
    }
    if let (Ok(alpha), Ok(beta)) = (&alpha, &beta) {
        if !alpha.is_injective() {
            failures.push("alpha is not injective".into());
        }
        if !beta.is_surjective() {
            failures.push("beta is not surjective".into());
        }
        if !alpha.then(beta)?.is_zero() {
            failures.push("beta after alpha is not zero".into());
        }
        for (v, (ra, rb)) in alpha.ranks().iter().zip(beta.ranks()).enumerate() {
            if ra + rb != middle.dim(v) {
                failures.push(format!("image of alpha differs from kernel of beta at vertex {}", v + 1));
            }
        }
    }
    let exact = failures.is_empty();
    let dims_match = cert.n.dims() == cert.m.dims();
    let end_dim_n = end_dim(&cert.n)?;
    let end_dim_m = end_dim(&cert.m)?;
    Ok(ZwaraReport {
        exact,
        dims_match,
        failures,
        end_dim_n,
        end_dim_m,
        degenerates: exact && dims_match && end_dim_n > end_dim_m,
    })
}

/// `dim rep(A, d) - max dim O_X` over the `F_q`-points, for algebras
/// without relations (where `rep(A, d)` is an affine space).
pub fn generic_param_estimate<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    cap: u64,
) -> Result<usize> {
    if !algebra.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let points = rep_points(algebra, dims, cap)?;
    let mut max_orbit = 0;
    for x in &points {
        max_orbit = max_orbit.max(orbit_dim(x)?);
    }
    Ok(ambient_dim(algebra, dims) - max_orbit)
}
