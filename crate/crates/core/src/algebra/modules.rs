//! Indecomposable projectives, simples and injectives.

use std::sync::Arc;

use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::scalar::Scalar;

use super::quiver::Path;
use super::BoundQuiverAlgebra;

impl<S: Scalar> BoundQuiverAlgebra<S> {
    fn arrow_path(&self, a: usize) -> Path {
        Path {
            source: self.quiver().arrow(a).source,
            arrows: vec![a],
        }
    }

    /// Matrix of `p -> p.a` from paths `from -> s(a)` to paths `from -> t(a)`.
    pub(crate) fn right_extension(&self, from: usize, a: usize) -> Matrix<S> {
        let arrow = self.quiver().arrow(a);
        let dom = self.basis_between(from, arrow.source);
        let cod = self.basis_between(from, arrow.target);
        self.path_map(&dom, &cod, |p| self.quiver().compose(p, &self.arrow_path(a)))
    }

    /// Matrix of `q -> a.q` from paths `t(a) -> to` to paths `s(a) -> to`.
    pub(crate) fn left_extension(&self, to: usize, a: usize) -> Matrix<S> {
        let arrow = self.quiver().arrow(a);
        let dom = self.basis_between(arrow.target, to);
        let cod = self.basis_between(arrow.source, to);
        self.path_map(&dom, &cod, |q| self.quiver().compose(&self.arrow_path(a), q))
    }

    fn path_map(
        &self,
        dom: &[usize],
        cod: &[usize],
        f: impl Fn(&Path) -> Option<Path>,
    ) -> Matrix<S> {
        let mut m = Matrix::zeros(cod.len(), dom.len());
        for (c, &i) in dom.iter().enumerate() {
            let Some(image) = f(&self.basis()[i]) else { continue };
            for (k, coef) in self.reduce_path(&image) {
                let r = cod
                    .iter()
                    .position(|&j| j == k)
                    .expect("reduced path has the expected endpoints");
                m[(r, c)] = coef;
            }
        }
        m
    }
}

/// `P_i`: at vertex `v`, the basis paths `i -> v`; arrows extend paths.
pub fn projective<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, i: usize) -> Representation<S> {
    let n = algebra.rank();
    let dims = (0..n).map(|v| algebra.basis_between(i, v).len()).collect();
    let maps = (0..algebra.quiver().arrows().len())
        .map(|a| algebra.right_extension(i, a))
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

/// `S_i`: one-dimensional at `i`, all arrows zero.
pub fn simple<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, i: usize) -> Representation<S> {
    let n = algebra.rank();
    let dims: Vec<usize> = (0..n).map(|v| usize::from(v == i)).collect();
    let maps = algebra
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

/// `I_i`: the dual of the paths ending at `i`, arrows acting by the
/// transpose of left extension.
pub fn injective<S: Scalar>(algebra: &Arc<BoundQuiverAlgebra<S>>, i: usize) -> Representation<S> {
    let n = algebra.rank();
    let dims = (0..n).map(|v| algebra.basis_between(v, i).len()).collect();
    let maps = (0..algebra.quiver().arrows().len())
        .map(|a| algebra.left_extension(i, a).transpose())
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::{F2, F3, Q};

    #[test]
    fn a2_standard_modules() {
        let a = fixtures::a2::<F2>();
        assert_eq!(projective(&a, 0).dims(), &[1, 1]);
        assert_eq!(projective(&a, 1).dims(), &[0, 1]);
        assert_eq!(projective(&a, 1), simple(&a, 1));
        assert_eq!(injective(&a, 0).dims(), &[1, 0]);
        assert_eq!(injective(&a, 0), simple(&a, 0));
        assert_eq!(injective(&a, 1).dims(), &[1, 1]);
        assert_eq!(projective(&a, 0).map(0), &Matrix::from_vec(1, 1, vec![F2::new(1)]));
    }

    #[test]
    fn kronecker_projectives() {
        let k = fixtures::kronecker::<F3>();
        assert_eq!(projective(&k, 0).dims(), &[1, 2]);
        assert_eq!(projective(&k, 1).dims(), &[0, 1]);
    }

    #[test]
    fn local_regular_module_is_a_jordan_block() {
        let loc = fixtures::local_dual_numbers::<Q>();
        let p = projective(&loc, 0);
        assert_eq!(p.dims(), &[2]);
        let expected = Matrix::from_vec(
            2,
            2,
            vec![Q::from_i64(0), Q::from_i64(0), Q::from_i64(1), Q::from_i64(0)],
        );
        assert_eq!(p.map(0), &expected);
    }

    #[test]
    fn standard_modules_satisfy_relations() {
        let sq = fixtures::commutative_square::<Q>();
        for i in 0..sq.rank() {
            for m in [projective(&sq, i), simple(&sq, i), injective(&sq, i)] {
                assert!(m.violations().is_empty(), "{m:?}");
            }
            assert_eq!(projective(&sq, i).total_dim(), sq.paths_from_counts()[i]);
        }
        let loc = fixtures::local_dual_numbers::<F2>();
        assert!(injective(&loc, 0).violations().is_empty());
    }
}
