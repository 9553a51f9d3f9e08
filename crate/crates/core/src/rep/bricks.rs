//! Bricks, Hom-orthogonality, semibricks, and brick extraction by
//! minimal-image endomorphisms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::enumerate::{space_size, vector_at};
use super::hom::{hom_basis, hom_dim, ModuleMap};
use super::Representation;

pub fn end_dim<S: Scalar>(x: &Representation<S>) -> Result<usize> {
    hom_dim(x, x)
}

/// `End_A(X)` is one-dimensional.
pub fn is_brick<S: Scalar>(x: &Representation<S>) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroModule("brick test"));
    }
    Ok(end_dim(x)? == 1)
}

/// `Hom_A(X, Y) = Hom_A(Y, X) = 0`.
pub fn is_hom_orthogonal<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> Result<bool> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroModule("Hom-orthogonality test"));
    }
    Ok(hom_dim(x, y)? == 0 && hom_dim(y, x)? == 0)
}

/// A verified semibrick: `hom_table[i][j] = dim Hom(X_i, X_j)` is 1 on the
/// diagonal and 0 elsewhere. Distinct members are non-isomorphic because a
/// nonzero module has a nonzero identity map, so a vanishing Hom space rules
/// out any isomorphism; `non_isomorphic` lists the attested pairs.
#[derive(Clone, Debug)]
pub struct SemibrickCertificate<S: Scalar> {
    pub modules: Vec<Representation<S>>,
    pub end_dims: Vec<usize>,
    pub hom_table: Vec<Vec<usize>>,
    pub non_isomorphic: Vec<(usize, usize)>,
}

impl<S: Scalar> SemibrickCertificate<S> {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Recomputes every recorded dimension.
    pub fn verify(&self) -> Result<bool> {
        let table = hom_table(&self.modules)?;
        let shape_ok = table.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &h)| h == usize::from(i == j))
        });
        let ends: Vec<usize> = (0..table.len()).map(|i| table[i][i]).collect();
        Ok(shape_ok && table == self.hom_table && ends == self.end_dims)
    }
}

/// Why a list of modules is not a semibrick.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SemibrickFailure {
    NotBrick { index: usize, end_dim: usize },
    NotOrthogonal { i: usize, j: usize, hom_ij: usize, hom_ji: usize },
}

impl std::fmt::Display for SemibrickFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SemibrickFailure::NotBrick { index, end_dim } => {
                write!(f, "module {} is not a brick (dim End = {end_dim})", index + 1)
            }
            SemibrickFailure::NotOrthogonal { i, j, hom_ij, hom_ji } => write!(
                f,
                "modules {} and {} are not Hom-orthogonal (dim Hom = {hom_ij}, {hom_ji})",
                i + 1,
                j + 1
            ),
        }
    }
}

/// `dim Hom(X_i, X_j)` for all ordered pairs.
pub fn hom_table<S: Scalar>(modules: &[Representation<S>]) -> Result<Vec<Vec<usize>>> {
    modules
        .iter()
        .map(|x| modules.iter().map(|y| hom_dim(x, y)).collect())
        .collect()
}

pub fn is_semibrick<S: Scalar>(
    modules: &[Representation<S>],
) -> Result<std::result::Result<SemibrickCertificate<S>, SemibrickFailure>> {
    if modules.is_empty() {
        return Err(Error::EmptyInput("semibrick test needs at least one module"));
    }
    if modules.iter().any(Representation::is_zero) {
        return Err(Error::ZeroModule("semibrick test"));
    }
    let table = hom_table(modules)?;
    for (i, row) in table.iter().enumerate() {
        if row[i] != 1 {
            return Ok(Err(SemibrickFailure::NotBrick {
                index: i,
                end_dim: row[i],
            }));
        }
    }
    let mut non_isomorphic = Vec::new();
    for i in 0..modules.len() {
        for j in (i + 1)..modules.len() {
            if table[i][j] != 0 || table[j][i] != 0 {
                return Ok(Err(SemibrickFailure::NotOrthogonal {
                    i,
                    j,
                    hom_ij: table[i][j],
                    hom_ji: table[j][i],
                }));
            }
            non_isomorphic.push((i, j));
        }
    }
    Ok(Ok(SemibrickCertificate {
        modules: modules.to_vec(),
        end_dims: (0..modules.len()).map(|i| table[i][i]).collect(),
        hom_table: table,
        non_isomorphic,
    }))
}

/// A brick `B` cut out of `X` as the image of an endomorphism `f` of minimal
/// nonzero rank. `B` is a quotient of `X` through `surjection` and a
/// submodule of `X` through `inclusion`.
#[derive(Clone, Debug)]
pub struct BrickExtraction<S: Scalar> {
    pub brick: Representation<S>,
    pub witness: ModuleMap<S>,
    pub inclusion: ModuleMap<S>,
    pub surjection: ModuleMap<S>,
}

/// Enumerates every nonzero endomorphism of `X` and keeps the first one (in
/// coefficient order) whose image has the least dimension.
///
/// The image of such an endomorphism has an endomorphism ring in which every
/// nonzero element is invertible. Over a finite field this is a finite field
/// extension, which can be bigger than the ground field; that case has no
/// brick to report and yields [`Error::NotBrick`].
pub fn extract_brick<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<BrickExtraction<S>> {
    if S::order().is_none() {
        return Err(Error::RationalFieldUnsupported("brick extraction"));
    }
    if x.is_zero() {
        return Err(Error::ZeroModule("brick extraction"));
    }
    let end = hom_basis(x, x)?;
    let total = space_size::<S>("brick extraction: End size", end.dim(), cap)?;
    let (_, index) = (1..total)
        .into_par_iter()
        .map(|i| (end.combine(&vector_at(i, end.dim())).image_dim(), i))
        .min()
        .expect("End of a nonzero module contains the identity");
    let witness = end.combine(&vector_at(index, end.dim()));
    let image = witness.image()?;
    let d = end_dim(&image.image)?;
    if d != 1 {
        return Err(Error::NotBrick(d));
    }
    Ok(BrickExtraction {
        brick: image.image,
        witness,
        inclusion: image.inclusion,
        surjection: image.surjection,
    })
}

/// Result of [`extract_semibrick`]: one extraction per input module and the
/// certificate for the extracted bricks.
#[derive(Clone, Debug)]
pub struct SemibrickExtraction<S: Scalar> {
    pub extractions: Vec<BrickExtraction<S>>,
    pub certificate: SemibrickCertificate<S>,
}

/// Turns a Hom-orthogonal family of nonzero modules into a semibrick of the
/// same size, brick by brick.
pub fn extract_semibrick<S: Scalar>(
    modules: &[Representation<S>],
    cap: u64,
) -> Result<SemibrickExtraction<S>> {
    if modules.is_empty() {
        return Err(Error::EmptyInput("semibrick extraction needs at least one module"));
    }
    for i in 0..modules.len() {
        for j in (i + 1)..modules.len() {
            if !is_hom_orthogonal(&modules[i], &modules[j])? {
                return Err(Error::NotHomOrthogonal(format!(
                    "modules {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let extractions = modules
        .iter()
        .map(|x| extract_brick(x, cap))
        .collect::<Result<Vec<_>>>()?;
    let bricks: Vec<_> = extractions.iter().map(|e| e.brick.clone()).collect();
    let certificate = match is_semibrick(&bricks)? {
        Ok(c) => c,
        Err(failure) => {
            return Err(Error::NotHomOrthogonal(format!(
                "extracted bricks fail the semibrick test: {failure}"
            )))
        }
    };
    Ok(SemibrickExtraction {
        extractions,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{self, kronecker_point};
    use crate::algebra::{projective, simple};
    use crate::linalg::Matrix;
    use crate::rep::is_isomorphic;
    use crate::{F2, F3};

    const CAP: u64 = 1 << 20;

    #[test]
    fn brick_examples() {
        let a2 = fixtures::a2::<F2>();
        for m in [projective(&a2, 0), simple(&a2, 0), simple(&a2, 1)] {
            assert!(is_brick(&m).unwrap());
        }
        let sum = simple(&a2, 0).direct_sum(&simple(&a2, 1)).unwrap();
        assert!(!is_brick(&sum).unwrap());
        let loc = fixtures::local_dual_numbers::<F2>();
        assert!(!is_brick(&projective(&loc, 0)).unwrap());
        assert!(is_brick(&Representation::zero(a2)).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        let loc = fixtures::local_dual_numbers::<F2>();
        assert!(!is_hom_orthogonal(&simple(&loc, 0), &projective(&loc, 0)).unwrap());
        let a2 = fixtures::a2::<F2>();
        assert!(is_hom_orthogonal(&simple(&a2, 0), &simple(&a2, 1)).unwrap());
        let k = fixtures::kronecker::<F2>();
        assert!(is_hom_orthogonal(&kronecker_point(&k, 1, 0), &kronecker_point(&k, 1, 1)).unwrap());
    }

    #[test]
    fn semibrick_examples() {
        let a2 = fixtures::a2::<F2>();
        let cert = is_semibrick(&[simple(&a2, 0), simple(&a2, 1)]).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert!(cert.verify().unwrap());

        let k = fixtures::kronecker::<F2>();
        let family = [
            kronecker_point(&k, 1, 0),
            kronecker_point(&k, 1, 1),
            kronecker_point(&k, 0, 1),
        ];
        let cert = is_semibrick(&family).unwrap().unwrap();
        assert_eq!(cert.len(), 3);
        assert_eq!(cert.non_isomorphic.len(), 3);

        let failure = is_semibrick(&[projective(&a2, 0), simple(&a2, 0)]).unwrap().unwrap_err();
        assert!(matches!(failure, SemibrickFailure::NotOrthogonal { hom_ij: 1, .. }));
    }

    #[test]
    fn extract_from_local_regular_module() {
        let loc = fixtures::local_dual_numbers::<F2>();
        let a = projective(&loc, 0);
        let e = extract_brick(&a, CAP).unwrap();
        assert!(is_isomorphic(&e.brick, &simple(&loc, 0), CAP).unwrap());
        assert_eq!(e.witness.component(0), a.map(0));
        assert!(e.inclusion.is_injective() && e.surjection.is_surjective());
    }

    #[test]
    fn extract_from_brick_is_identity_up_to_scalar() {
        let k = fixtures::kronecker::<F3>();
        let r = kronecker_point(&k, 1, 2);
        let e = extract_brick(&r, CAP).unwrap();
        assert_eq!(e.brick.dims(), r.dims());
        assert!(e.witness.is_isomorphism());
    }

    #[test]
    fn extract_from_doubled_simple() {
        let a2 = fixtures::a2::<F2>();
        let s1 = simple(&a2, 0);
        let x = s1.direct_sum(&s1).unwrap();
        let e = extract_brick(&x, CAP).unwrap();
        assert_eq!(e.brick, s1);
    }

    #[test]
    fn extract_semibrick_examples() {
        let k = fixtures::kronecker::<F2>();
        let family = vec![
            kronecker_point(&k, 1, 0),
            kronecker_point(&k, 1, 1),
            kronecker_point(&k, 0, 1),
        ];
        let out = extract_semibrick(&family, CAP).unwrap();
        for (x, e) in family.iter().zip(&out.extractions) {
            assert!(is_isomorphic(x, &e.brick, CAP).unwrap());
        }

        let loc = fixtures::local_dual_numbers::<F2>();
        let out = extract_semibrick(&[projective(&loc, 0)], CAP).unwrap();
        assert_eq!(out.certificate.modules[0].dims(), &[1]);

        let prod = fixtures::a2_x_a2::<F2>();
        let p1 = projective(&prod, 0);
        let s3 = simple(&prod, 2);
        let out = extract_semibrick(&[p1.clone(), s3.direct_sum(&s3).unwrap()], CAP).unwrap();
        assert_eq!(out.certificate.len(), 2);
        assert_eq!(out.certificate.modules[0], p1);
        assert_eq!(out.certificate.modules[1], s3);
    }

    #[test]
    fn extraction_rejects_non_orthogonal_input() {
        let a2 = fixtures::a2::<F2>();
        assert!(matches!(
            extract_semibrick(&[projective(&a2, 0), simple(&a2, 0)], CAP),
            Err(Error::NotHomOrthogonal(_))
        ));
    }

    #[test]
    fn non_split_regular_kronecker_module_has_no_brick_over_the_ground_field() {
        // a = 1, b = companion matrix of x^2 + x + 1, irreducible over F_2:
        // End is F_4, so no endomorphism has a proper nonzero image.
        let k = fixtures::kronecker::<F2>();
        let one = Matrix::identity(2);
        let c = Matrix::from_vec(2, 2, vec![F2::new(0), F2::new(1), F2::new(1), F2::new(1)]);
        let x = Representation::new(k, vec![2, 2], vec![one, c]).unwrap();
        assert_eq!(end_dim(&x).unwrap(), 2);
        assert_eq!(extract_brick(&x, CAP).unwrap_err(), Error::NotBrick(2));
    }
}
