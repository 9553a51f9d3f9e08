//! Projective covers, minimal presentations, `Ext^1`, the AR translate
//! `tau = D Tr`, stability weights and projective dimension.
//!
//! A map `P_j -> P_i` between indecomposable projectives is right
//! multiplication by an element of `e_i A e_j`, i.e. a combination of paths
//! `i -> j`. A map between sums of such projectives is a matrix of these
//! combinations, which is what the transpose and the Hom complexes use.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{projective, BoundQuiverAlgebra, Path};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{hom_dim, ModuleMap, Representation};
use crate::scalar::Scalar;

/// An element of the Grothendieck group of projectives in the basis
/// `[P_1], ..., [P_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `θ · dims`.
    pub fn eval(&self, dims: &[usize]) -> Result<i64> {
        if dims.len() != self.0.len() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} entries, dimension vector has {}",
                self.0.len(),
                dims.len()
            )));
        }
        Ok(self.0.iter().zip(dims).map(|(t, &d)| t * d as i64).sum())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|t| t * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = String;

    /// `1,-1` or `(1,-1)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad weight entry `{}`", t.trim())))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
    }
}

/// `⊕ P_v` over the summand list, in order.
fn projective_sum<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, summands: &[usize]) -> Representation<S> {
    let parts: Vec<_> = summands.iter().map(|&v| projective(algebra, v)).collect();
    Representation::direct_sum_all(algebra, &parts).expect("same algebra")
}

/// Start of each summand's block inside `(⊕ P_v)_w`.
fn block_offsets<S: Scalar>(algebra: &BoundQuiverAlgebra<S>, summands: &[usize], w: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(summands.len());
    let mut acc = 0;
    for &v in summands {
        out.push(acc);
        acc += algebra.basis_between(v, w).len();
    }
    out
}

/// Vertex-wise bases of `rad X = Σ_a im X_a`.
pub fn radical<S: Scalar>(x: &Representation<S>) -> Vec<Matrix<S>> {
    let q = x.algebra().quiver();
    (0..x.dims().len())
        .map(|v| {
            let mut span = Matrix::zeros(x.dim(v), 0);
            for (i, a) in q.arrows().iter().enumerate() {
                if a.target == v {
                    span = span.hstack(x.map(i)).expect("rows agree");
                }
            }
            span.column_space()
        })
        .collect()
}

/// Dimension vector of `top X = X / rad X`.
pub fn top_dims<S: Scalar>(x: &Representation<S>) -> Vec<usize> {
    radical(x)
        .iter()
        .zip(x.dims())
        .map(|(r, d)| d - r.cols())
        .collect()
}

/// `P_0 -> X` with `P_0 = ⊕ P_v^{m_v}` and `m = dim top X`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<S: Scalar> {
    /// The vertex of each indecomposable summand, in order.
    pub summands: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub projective: Representation<S>,
    pub epi: ModuleMap<S>,
}

/// Cover of a possibly zero module.
fn cover<S: Scalar>(x: &Representation<S>) -> ProjectiveCover<S> {
    let algebra = x.algebra();
    let n = x.dims().len();
    let rad = radical(x);
    let mut summands = Vec::new();
    let mut generators: Vec<Vec<S>> = Vec::new();
    for v in 0..n {
        for j in rad[v].complement_indices() {
            let mut g = vec![S::zero(); x.dim(v)];
            g[j] = S::one();
            summands.push(v);
            generators.push(g);
        }
    }
    let mut multiplicities = vec![0; n];
    for &v in &summands {
        multiplicities[v] += 1;
    }
    let p0 = projective_sum(algebra, &summands);
    let components = (0..n)
        .map(|w| {
            let mut columns = Vec::new();
            for (&v, g) in summands.iter().zip(&generators) {
                for i in algebra.basis_between(v, w) {
                    columns.push(x.path_action(&algebra.basis()[i]).mul_vec(g));
                }
            }
            Matrix::from_columns(x.dim(w), &columns)
        })
        .collect();
    let epi = ModuleMap::new_unchecked(p0.clone(), x.clone(), components);
    ProjectiveCover {
        summands,
        multiplicities,
        projective: p0,
        epi,
    }
}

pub fn projective_cover<S: Scalar>(x: &Representation<S>) -> Result<ProjectiveCover<S>> {
    if x.is_zero() {
        return Err(Error::ZeroModule("projective cover"));
    }
    Ok(cover(x))
}

/// `[l][k]`: the combination of basis paths `i_k -> j_l` (as basis indices)
/// by which the `l`-th summand `P_{j_l}` of the source maps to the `k`-th
/// summand `P_{i_k}` of the target.
pub type PathMatrix<S> = Vec<Vec<Vec<(usize, S)>>>;

fn path_matrix<S: Scalar>(map: &ModuleMap<S>, from: &[usize], to: &[usize]) -> PathMatrix<S> {
    let algebra = map.source().algebra();
    from.iter()
        .enumerate()
        .map(|(l, &j)| {
            let col_offsets = block_offsets(algebra, from, j);
            let trivial = Path::trivial(j);
            let e_j = algebra.basis_index(&trivial).expect("trivial paths are basis elements");
            let local = algebra
                .basis_between(j, j)
                .iter()
                .position(|&b| b == e_j)
                .expect("e_j is a path j -> j");
            let column = map.component(j).column(col_offsets[l] + local);
            let row_offsets = block_offsets(algebra, to, j);
            to.iter()
                .enumerate()
                .map(|(k, &i)| {
                    algebra
                        .basis_between(i, j)
                        .into_iter()
                        .enumerate()
                        .filter_map(|(r, b)| {
                            let c = column[row_offsets[k] + r].clone();
                            (!c.is_zero()).then_some((b, c))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// The matrix of `Hom(⊕ P_{to}, Y) -> Hom(⊕ P_{from}, Y)` induced by a map
/// with path matrix `w`, using `Hom(P_i, Y) = Y_i`.
fn hom_matrix<S: Scalar>(w: &PathMatrix<S>, from: &[usize], to: &[usize], y: &Representation<S>) -> Matrix<S> {
    let rows: usize = from.iter().map(|&j| y.dim(j)).sum();
    let cols: usize = to.iter().map(|&i| y.dim(i)).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for (l, &j) in from.iter().enumerate() {
        let mut c0 = 0;
        for (k, &i) in to.iter().enumerate() {
            m.set_block(r0, c0, &y.element_action(&w[l][k], i, j));
            c0 += y.dim(i);
        }
        r0 += y.dim(j);
    }
    m
}

/// `P_1 -> P_0 -> M -> 0`, both covers minimal.
#[derive(Clone, Debug)]
pub struct PresentationData<S: Scalar> {
    pub module: Representation<S>,
    /// `P_0 -> M`.
    pub p0: ProjectiveCover<S>,
    /// `P_1 -> ker(P_0 -> M)`.
    pub p1: ProjectiveCover<S>,
    pub kernel: Representation<S>,
    pub p1_to_p0: ModuleMap<S>,
    pub path_matrix: PathMatrix<S>,
}

impl<S: Scalar> PresentationData<S> {
    pub fn p0_multiplicities(&self) -> &[usize] {
        &self.p0.multiplicities
    }

    pub fn p1_multiplicities(&self) -> &[usize] {
        &self.p1.multiplicities
    }

    /// `[P_0] - [P_1]`.
    pub fn weight(&self) -> Weight {
        Weight(
            self.p0
                .multiplicities
                .iter()
                .zip(&self.p1.multiplicities)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        )
    }
}

fn presentation<S: Scalar>(x: &Representation<S>) -> Result<PresentationData<S>> {
    let p0 = cover(x);
    let (kernel, incl) = p0.epi.kernel()?;
    let p1 = cover(&kernel);
    let p1_to_p0 = p1.epi.then(&incl)?;
    let path_matrix = path_matrix(&p1_to_p0, &p1.summands, &p0.summands);
    Ok(PresentationData {
        module: x.clone(),
        p0,
        p1,
        kernel,
        p1_to_p0,
        path_matrix,
    })
}

pub fn minimal_presentation<S: Scalar>(x: &Representation<S>) -> Result<PresentationData<S>> {
    if x.is_zero() {
        return Err(Error::ZeroModule("minimal presentation"));
    }
    presentation(x)
}

/// The stability weight `θ_X = [P_0] - [P_1]` of the minimal presentation.
pub fn theta_of<S: Scalar>(x: &Representation<S>) -> Result<Weight> {
    Ok(minimal_presentation(x)?.weight())
}

/// The two `Ext^1` counts for `X` against `Y`: the true one, from
/// `Hom(P_0,Y) -> Hom(P_1,Y) -> Hom(P_2,Y)`, and the one that drops the
/// `P_2` term (an upper bound, exact when `pd X <= 1`).
pub(crate) fn ext1_pair<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<(usize, usize)> {
    x.check_same_algebra(y)?;
    let pres = presentation(x)?;
    let (k1, incl1) = pres.p1.epi.kernel()?;
    let p2 = cover(&k1);
    let p2_to_p1 = p2.epi.then(&incl1)?;
    let w2 = path_matrix(&p2_to_p1, &p2.summands, &pres.p1.summands);
    let d0 = hom_matrix(&pres.path_matrix, &pres.p1.summands, &pres.p0.summands, y);
    let d1 = hom_matrix(&w2, &p2.summands, &pres.p1.summands, y);
    debug_assert!((&d1 * &d0).is_zero());
    let hom_p1: usize = pres.p1.summands.iter().map(|&j| y.dim(j)).sum();
    let r0 = d0.rank();
    Ok((hom_p1 - d1.rank() - r0, hom_p1 - r0))
}

/// `dim Ext^1_A(X, Y)`.
pub fn ext1_dim<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<usize> {
    Ok(ext1_pair(x, y)?.0)
}

/// `τX = D Tr X`.
///
/// `Hom_A(-, A)` turns `P_i` into the right projective whose vertex-`v`
/// part is spanned by the paths `v -> i`, and turns the presentation map
/// into `q ↦ Σ_l q·w_lk`. `Tr X` is the cokernel of that map; dualising
/// transposes every arrow matrix.
pub fn tau<S: Scalar>(x: &Representation<S>) -> Result<Representation<S>> {
    if x.is_zero() {
        return Err(Error::ZeroModule("AR translate"));
    }
    let pres = presentation(x)?;
    let algebra = x.algebra();
    let quiver = algebra.quiver();
    let n = x.dims().len();
    let (p0, p1) = (&pres.p0.summands, &pres.p1.summands);

    let mut projections = Vec::with_capacity(n);
    let mut lifts = Vec::with_capacity(n);
    for v in 0..n {
        let dom: Vec<Vec<usize>> = p0.iter().map(|&i| algebra.basis_between(v, i)).collect();
        let cod: Vec<Vec<usize>> = p1.iter().map(|&j| algebra.basis_between(v, j)).collect();
        let cod_offsets: Vec<usize> = cod
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.len();
                Some(o)
            })
            .collect();
        let rows: usize = cod.iter().map(Vec::len).sum();
        let mut columns = Vec::new();
        for (k, paths) in dom.iter().enumerate() {
            for &qi in paths {
                let mut col = vec![S::zero(); rows];
                for (l, row_paths) in cod.iter().enumerate() {
                    for (b, c) in &pres.path_matrix[l][k] {
                        let Some(qp) = quiver.compose(&algebra.basis()[qi], &algebra.basis()[*b]) else {
                            continue;
                        };
                        for (r, coef) in algebra.reduce_path(&qp) {
                            let pos = row_paths
                                .iter()
                                .position(|&x| x == r)
                                .expect("q.w runs from v to j_l");
                            let slot = &mut col[cod_offsets[l] + pos];
                            *slot = slot.clone() + c.clone() * coef;
                        }
                    }
                }
                columns.push(col);
            }
        }
        let image = Matrix::from_columns(rows, &columns).column_space();
        let (proj, lift) = image.quotient_maps().expect("column space has full rank");
        projections.push(proj);
        lifts.push(lift);
    }

    let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
    let maps = (0..quiver.arrows().len())
        .map(|a| {
            let arrow = quiver.arrow(a);
            // Left extension by `a`, from paths t(a) -> j_l to paths s(a) -> j_l.
            let mut ext = Matrix::zeros(0, 0);
            for &j in p1 {
                ext = ext.block_diag(&algebra.left_extension(j, a));
            }
            let on_tr = &(&projections[arrow.source] * &ext) * &lifts[arrow.target];
            on_tr.transpose()
        })
        .collect();
    Representation::new(algebra.clone(), dims, maps)
}

/// `Hom_A(X, τX) = 0`.
pub fn is_tau_rigid<S: Scalar>(x: &Representation<S>) -> Result<bool> {
    let t = tau(x)?;
    Ok(hom_dim(x, &t)? == 0)
}

/// `pd X`, or a lower bound when the resolution does not stop within the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectiveDimension {
    Exactly(usize),
    AtLeast(usize),
}

impl ProjectiveDimension {
    pub fn at_most(&self, k: usize) -> bool {
        matches!(self, ProjectiveDimension::Exactly(d) if *d <= k)
    }
}

impl fmt::Display for ProjectiveDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveDimension::Exactly(d) => write!(f, "{d}"),
            ProjectiveDimension::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// Walks the minimal resolution; step `i` covers the `i`-th syzygy and stops
/// as soon as a cover is injective.
pub fn projective_dimension<S: Scalar>(x: &Representation<S>, cap: usize) -> Result<ProjectiveDimension> {
    if x.is_zero() {
        return Err(Error::ZeroModule("projective dimension"));
    }
    let mut current = x.clone();
    for i in 0..cap {
        let c = cover(&current);
        let (kernel, _) = c.epi.kernel()?;
        if kernel.is_zero() {
            return Ok(ProjectiveDimension::Exactly(i));
        }
        current = kernel;
    }
    Ok(ProjectiveDimension::AtLeast(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{self, kronecker_point};
    use crate::algebra::{injective, simple};
    use crate::rep::is_isomorphic;
    use crate::{F2, F3, F5, Q};

    const CAP: u64 = 1 << 20;

    #[test]
    fn weights_parse_and_evaluate() {
        let w: Weight = "1,-1".parse().unwrap();
        assert_eq!(w, Weight(vec![1, -1]));
        assert_eq!("(2, 0)".parse::<Weight>().unwrap(), Weight(vec![2, 0]));
        assert_eq!(w.eval(&[0, 1]).unwrap(), -1);
        assert_eq!(w.eval(&[1, 1]).unwrap(), 0);
        assert!(w.eval(&[1]).is_err());
        assert_eq!(w.to_string(), "(1,-1)");
    }

    #[test]
    fn covers() {
        let a2 = fixtures::a2::<F2>();
        let c = projective_cover(&simple(&a2, 0)).unwrap();
        assert_eq!(c.multiplicities, vec![1, 0]);
        assert_eq!(c.projective.dims(), &[1, 1]);
        assert!(c.epi.is_surjective());

        let k = fixtures::kronecker::<F3>();
        let c = projective_cover(&kronecker_point(&k, 1, 2)).unwrap();
        assert_eq!(c.multiplicities, vec![1, 0]);
        assert_eq!(c.epi.kernel().unwrap().0.dims(), &[0, 1]);

        let p = projective(&k, 0);
        let c = projective_cover(&p).unwrap();
        assert!(c.epi.kernel().unwrap().0.is_zero());
        assert!(projective_cover(&Representation::zero(k)).is_err());
    }

    #[test]
    fn presentations() {
        let k = fixtures::kronecker::<F5>();
        for l in 0..5 {
            let p = minimal_presentation(&kronecker_point(&k, 1, l)).unwrap();
            assert_eq!(p.p0.projective.dims(), &[1, 2]);
            assert_eq!(p.p1.projective.dims(), &[0, 1]);
            assert!(p.p1_to_p0.then(&p.p0.epi).unwrap().is_zero());
        }
        let a2 = fixtures::a2::<F2>();
        let p = minimal_presentation(&simple(&a2, 0)).unwrap();
        assert_eq!((p.p0_multiplicities(), p.p1_multiplicities()), (&[1, 0][..], &[0, 1][..]));
        let p = minimal_presentation(&projective(&a2, 1)).unwrap();
        assert!(p.p1.summands.is_empty());
    }

    #[test]
    fn theta_examples() {
        let k = fixtures::kronecker::<F3>();
        assert_eq!(theta_of(&kronecker_point(&k, 1, 1)).unwrap(), Weight(vec![1, -1]));
        assert_eq!(theta_of(&kronecker_point(&k, 0, 1)).unwrap(), Weight(vec![1, -1]));
        let a2 = fixtures::a2::<Q>();
        assert_eq!(theta_of(&simple(&a2, 0)).unwrap(), Weight(vec![1, -1]));
        assert_eq!(theta_of(&projective(&a2, 1)).unwrap(), Weight(vec![0, 1]));
        let loc = fixtures::local_dual_numbers::<F2>();
        assert_eq!(theta_of(&simple(&loc, 0)).unwrap(), Weight(vec![0]));
    }

    #[test]
    fn ext_examples() {
        let loc = fixtures::local_dual_numbers::<F2>();
        let s = simple(&loc, 0);
        assert_eq!(ext1_dim(&s, &s).unwrap(), 1);

        let k = fixtures::kronecker::<F3>();
        let r = kronecker_point(&k, 1, 2);
        assert_eq!(ext1_dim(&r, &r).unwrap(), 1);

        let a2 = fixtures::a2::<F2>();
        let (s1, s2) = (simple(&a2, 0), simple(&a2, 1));
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&projective(&a2, 0), &s2).unwrap(), 0);
    }

    #[test]
    fn tau_examples() {
        let a2 = fixtures::a2::<F2>();
        assert_eq!(tau(&simple(&a2, 0)).unwrap(), simple(&a2, 1));
        for i in 0..2 {
            assert!(tau(&projective(&a2, i)).unwrap().is_zero());
        }
        let k = fixtures::kronecker::<F3>();
        for (a, b) in [(1, 0), (1, 1), (1, 2), (0, 1)] {
            let r = kronecker_point(&k, a, b);
            assert!(is_isomorphic(&tau(&r).unwrap(), &r, CAP).unwrap());
        }
        // I_1 = S_1; the Coxeter transformation sends (1, 0) to (3, 2).
        let i1 = injective(&k, 0);
        assert_eq!(i1.dims(), &[1, 0]);
        assert_eq!(tau(&i1).unwrap().dims(), &[3, 2]);
    }

    #[test]
    fn tau_rigidity() {
        let a2 = fixtures::a2::<F2>();
        assert!(is_tau_rigid(&projective(&a2, 0)).unwrap());
        assert!(is_tau_rigid(&simple(&a2, 0)).unwrap());
        let k = fixtures::kronecker::<F2>();
        assert!(!is_tau_rigid(&kronecker_point(&k, 1, 1)).unwrap());
    }

    #[test]
    fn projective_dimensions() {
        let a2 = fixtures::a2::<F2>();
        assert_eq!(projective_dimension(&simple(&a2, 0), 32).unwrap(), ProjectiveDimension::Exactly(1));
        assert_eq!(projective_dimension(&simple(&a2, 1), 32).unwrap(), ProjectiveDimension::Exactly(0));
        let k = fixtures::kronecker::<F3>();
        assert_eq!(
            projective_dimension(&kronecker_point(&k, 1, 1), 32).unwrap(),
            ProjectiveDimension::Exactly(1)
        );
        let loc = fixtures::local_dual_numbers::<F2>();
        for cap in [0, 1, 5, 32] {
            assert_eq!(
                projective_dimension(&simple(&loc, 0), cap).unwrap(),
                ProjectiveDimension::AtLeast(cap)
            );
        }
    }

    #[test]
    fn theta_on_itself_matches_hom_difference() {
        let mut cases: Vec<Representation<F2>> = Vec::new();
        let a2 = fixtures::a2::<F2>();
        cases.extend([simple(&a2, 0), simple(&a2, 1), projective(&a2, 0)]);
        let k = fixtures::kronecker::<F2>();
        cases.extend([kronecker_point(&k, 1, 0), kronecker_point(&k, 0, 1), projective(&k, 0)]);
        let loc = fixtures::local_dual_numbers::<F2>();
        cases.extend([simple(&loc, 0), projective(&loc, 0)]);
        for x in cases {
            let lhs = theta_of(&x).unwrap().eval(x.dims()).unwrap();
            let t = tau(&x).unwrap();
            let rhs = hom_dim(&x, &x).unwrap() as i64 - hom_dim(&x, &t).unwrap() as i64;
            assert_eq!(lhs, rhs, "{x:?}");
        }
    }
}
