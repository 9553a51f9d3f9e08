//! Exhaustive search over finite-dimensional spaces over a finite field.
//!
//! Vectors of length `n` over `F_q` are indexed by `0..q^n`; index `i` has
//! the base-`q` digits of `i` as coordinates, most significant first, so
//! index order is lexicographic order on coordinate tuples.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::hom::{hom_basis, ModuleMap};
use super::Representation;

/// `q^len`, refusing infinite fields and sizes above `cap`.
pub fn space_size<S: Scalar>(what: &'static str, len: usize, cap: u64) -> Result<u64> {
    let q = S::order().ok_or(Error::RationalFieldUnsupported(what))?;
    let mut total: u64 = 1;
    for _ in 0..len {
        total = match total.checked_mul(q) {
            Some(t) if t <= cap => t,
            _ => return Err(Error::cap(what, format!("{q}^{len}"), cap)),
        };
    }
    if total > cap {
        return Err(Error::cap(what, format!("{q}^{len}"), cap));
    }
    Ok(total)
}

/// Coordinates of the vector with the given index.
pub fn vector_at<S: Scalar>(index: u64, len: usize) -> Vec<S> {
    let q = S::order().expect("finite field");
    let mut out = vec![S::zero(); len];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = S::from_index(rest % q).expect("digit below q");
        rest /= q;
    }
    out
}

/// First index in `0..total` satisfying `pred`, searched in parallel.
pub fn find_first<F>(total: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..total).into_par_iter().find_first(|&i| pred(i))
}

/// All indices in `0..total` satisfying `pred`, in order.
pub fn filter_indices<F>(total: u64, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..total).into_par_iter().filter(|&i| pred(i)).collect()
}

/// An invertible element of `Hom(X, Y)`, if any: the first one in enumeration
/// order of coefficient vectors.
pub fn iso_test<S: Scalar>(
    x: &Representation<S>,
    y: &Representation<S>,
    cap: u64,
) -> Result<Option<ModuleMap<S>>> {
    x.check_same_algebra(y)?;
    if S::order().is_none() {
        return Err(Error::RationalFieldUnsupported("isomorphism test"));
    }
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let hb = hom_basis(x, y)?;
    let total = space_size::<S>("isomorphism test: Hom space size", hb.dim(), cap)?;
    let found = find_first(total, |i| {
        hb.combine(&vector_at(i, hb.dim())).is_isomorphism()
    });
    Ok(found.map(|i| hb.combine(&vector_at(i, hb.dim()))))
}

pub fn is_isomorphic<S: Scalar>(x: &Representation<S>, y: &Representation<S>, cap: u64) -> Result<bool> {
    Ok(iso_test(x, y, cap)?.is_some())
}

/// No idempotent endomorphism besides 0 and 1. Zero modules are not
/// indecomposable.
pub fn is_indecomposable<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<bool> {
    if S::order().is_none() {
        return Err(Error::RationalFieldUnsupported("indecomposability test"));
    }
    if x.is_zero() {
        return Ok(false);
    }
    let end = hom_basis(x, x)?;
    let total = space_size::<S>("indecomposability test: End size", end.dim(), cap)?;
    let id = ModuleMap::identity(x);
    let nontrivial = find_first(total, |i| {
        let e = end.combine(&vector_at(i, end.dim()));
        if e.is_zero() || e == id {
            return false;
        }
        e.then(&e).map_or(false, |ee| ee == e)
    });
    Ok(nontrivial.is_none())
}

/// Number of invertible endomorphisms, `|Aut(X)|`.
pub fn automorphism_count<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<u64> {
    let end = hom_basis(x, x)?;
    let total = space_size::<S>("automorphism count: End size", end.dim(), cap)?;
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| end.combine(&vector_at(i, end.dim())).is_isomorphism())
        .count() as u64)
}

/// Every subspace of `F_q^d`, as full-column-rank basis matrices, ordered by
/// dimension and then by their reduced echelon form.
pub fn subspaces<S: Scalar>(d: usize) -> Vec<Matrix<S>> {
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // Free entries: row r, columns after its pivot that are not pivots.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    ((p + 1)..d)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = S::order()
                .expect("finite field")
                .pow(free.len() as u32);
            for idx in 0..count {
                let vals: Vec<S> = vector_at(idx, free.len());
                let mut rows = Matrix::zeros(k, d);
                for (r, &p) in pivots.iter().enumerate() {
                    rows[(r, p)] = S::one();
                }
                for (&(r, c), v) in free.iter().zip(vals) {
                    rows[(r, c)] = v;
                }
                out.push(rows.transpose());
            }
        }
    }
    out
}

/// Number of subspaces of `F_q^d` (sum of Gaussian binomials), saturating.
pub fn subspace_count(q: u64, d: usize) -> u64 {
    let mut total: u64 = 0;
    for k in 0..=d {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num = num.saturating_mul((q as u128).pow((d - i) as u32) - 1);
            den = den.saturating_mul((q as u128).pow((i + 1) as u32) - 1);
        }
        total = total.saturating_add(u64::try_from(num / den).unwrap_or(u64::MAX));
    }
    total
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fixtures, projective, simple};
    use crate::{F2, F3, Q};

    const CAP: u64 = 1 << 20;

    fn point<S: Scalar>(a: i64, b: i64) -> Representation<S> {
        fixtures::kronecker_point(&fixtures::kronecker::<S>(), a, b)
    }

    #[test]
    fn vectors_are_lexicographic() {
        let all: Vec<Vec<F3>> = (0..9).map(|i| vector_at(i, 2)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(vector_at::<F3>(5, 2), vec![F3::new(1), F3::new(2)]);
    }

    #[test]
    fn space_size_respects_cap() {
        assert_eq!(space_size::<F2>("t", 10, CAP).unwrap(), 1024);
        assert!(matches!(space_size::<F2>("t", 21, CAP), Err(Error::CapExceeded { .. })));
        assert!(matches!(space_size::<Q>("t", 1, CAP), Err(Error::RationalFieldUnsupported(_))));
    }

    #[test]
    fn iso_test_examples() {
        // (a,b) = (1,1) and (2,2) over F_3 differ by the scalar 2 at one vertex.
        let w = iso_test(&point::<F3>(1, 1), &point::<F3>(2, 2), CAP).unwrap().unwrap();
        assert!(w.is_isomorphism());
        assert!(iso_test(&point::<F3>(1, 1), &point::<F3>(1, 2), CAP).unwrap().is_none());

        let a2 = fixtures::a2::<F2>();
        let sum = simple(&a2, 0).direct_sum(&simple(&a2, 1)).unwrap();
        assert!(iso_test(&projective(&a2, 0), &sum, CAP).unwrap().is_none());
        assert!(iso_test(&simple(&a2, 0), &simple(&a2, 1), CAP).unwrap().is_none());
    }

    #[test]
    fn indecomposability_examples() {
        let a2 = fixtures::a2::<F2>();
        let sum = simple(&a2, 0).direct_sum(&simple(&a2, 1)).unwrap();
        assert!(!is_indecomposable(&sum, CAP).unwrap());
        assert!(is_indecomposable(&projective(&a2, 0), CAP).unwrap());
        let loc = fixtures::local_dual_numbers::<F2>();
        assert!(is_indecomposable(&projective(&loc, 0), CAP).unwrap());
        let loc_q = fixtures::local_dual_numbers::<Q>();
        assert!(is_indecomposable(&projective(&loc_q, 0), CAP).is_err());
    }

    #[test]
    fn subspace_enumeration_counts() {
        for d in 0..4 {
            assert_eq!(subspaces::<F2>(d).len() as u64, subspace_count(2, d));
            assert_eq!(subspaces::<F3>(d).len() as u64, subspace_count(3, d));
        }
        // F_2^2 has 0, three lines, and the whole plane.
        assert_eq!(subspace_count(2, 2), 5);
        for u in subspaces::<F3>(3) {
            assert_eq!(u.rank(), u.cols());
        }
    }

    #[test]
    fn automorphisms_of_small_modules() {
        let a2 = fixtures::a2::<F3>();
        assert_eq!(automorphism_count(&projective(&a2, 0), CAP).unwrap(), 2);
        let sum = simple(&a2, 0).direct_sum(&simple(&a2, 1)).unwrap();
        assert_eq!(automorphism_count(&sum, CAP).unwrap(), 4);
    }
}
