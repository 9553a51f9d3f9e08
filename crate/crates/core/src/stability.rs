//! King stability: evaluating weights, enumerating submodule dimension
//! vectors over a finite field, and the stability checks built on them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{tau, theta_of, Weight};
use crate::linalg::Matrix;
use crate::rep::{end_dim, iso_test, subspace_count, subspaces, Representation};
use crate::scalar::Scalar;

/// `θ · dim N`.
pub fn theta_eval<S: Scalar>(theta: &Weight, n: &Representation<S>) -> Result<i64> {
    theta.eval(n.dims())
}

/// Dimension vectors of all submodules of `X`, each with the first
/// subspace tuple (in enumeration order) realising it.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice<S: Scalar> {
    pub module: Representation<S>,
    pub witnesses: BTreeMap<Vec<usize>, Vec<Matrix<S>>>,
}

impl<S: Scalar> SubmoduleLattice<S> {
    pub fn dim_vectors(&self) -> BTreeSet<Vec<usize>> {
        self.witnesses.keys().cloned().collect()
    }

    /// Dimension vectors of nonzero proper submodules.
    pub fn proper(&self) -> Vec<Vec<usize>> {
        let full = self.module.dims();
        self.witnesses
            .keys()
            .filter(|d| d.iter().any(|&x| x > 0) && d.as_slice() != full)
            .cloned()
            .collect()
    }
}

fn is_stable_tuple<S: Scalar>(x: &Representation<S>, tuple: &[&Matrix<S>]) -> bool {
    let q = x.algebra().quiver();
    q.arrows().iter().enumerate().all(|(i, a)| {
        let u_t = tuple[a.target];
        let image = x.map(i) * tuple[a.source];
        u_t.hstack(&image).expect("rows agree").rank() == u_t.cols()
    })
}

/// Brute force over all tuples of vertex subspaces.
pub fn submodule_dim_vectors<S: Scalar>(x: &Representation<S>, cap: u64) -> Result<SubmoduleLattice<S>> {
    let q = S::order().ok_or(Error::RationalFieldUnsupported("submodule enumeration"))?;
    let mut total: u64 = 1;
    for &d in x.dims() {
        total = total.saturating_mul(subspace_count(q, d));
    }
    if total > cap {
        return Err(Error::cap("submodule enumeration: subspace tuples", total, cap));
    }
    let per_vertex: Vec<Vec<Matrix<S>>> = x.dims().iter().map(|&d| subspaces(d)).collect();
    let radices: Vec<u64> = per_vertex.iter().map(|s| s.len() as u64).collect();
    let decode = |idx: u64| -> Vec<usize> {
        let mut rest = idx;
        let mut choice = vec![0; radices.len()];
        for (v, &r) in radices.iter().enumerate().rev() {
            choice[v] = (rest % r) as usize;
            rest /= r;
        }
        choice
    };
    let found: Vec<(u64, Vec<usize>)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let tuple: Vec<&Matrix<S>> = decode(idx)
                .into_iter()
                .enumerate()
                .map(|(v, c)| &per_vertex[v][c])
                .collect();
            is_stable_tuple(x, &tuple).then(|| (idx, tuple.iter().map(|u| u.cols()).collect()))
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    for (idx, dims) in found {
        witnesses.entry(dims).or_insert_with(|| {
            decode(idx)
                .into_iter()
                .enumerate()
                .map(|(v, c)| per_vertex[v][c].clone())
                .collect()
        });
    }
    Ok(SubmoduleLattice {
        module: x.clone(),
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    /// `θ(dim X)`.
    pub theta_of_module: i64,
    /// A nonzero proper submodule dimension vector with `θ >= 0`, if any.
    pub violating: Option<Vec<usize>>,
}

/// `θ(X) = 0` and `θ(Y) < 0` for every nonzero proper submodule `Y`.
pub fn is_theta_stable<S: Scalar>(x: &Representation<S>, theta: &Weight, cap: u64) -> Result<StabilityVerdict> {
    if x.is_zero() {
        return Err(Error::ZeroModule("stability test"));
    }
    let value = theta_eval(theta, x)?;
    if value != 0 {
        return Ok(StabilityVerdict {
            stable: false,
            theta_of_module: value,
            violating: None,
        });
    }
    let lattice = submodule_dim_vectors(x, cap)?;
    let mut violating = None;
    for d in lattice.proper() {
        if theta.eval(&d)? >= 0 {
            violating = Some(d);
            break;
        }
    }
    Ok(StabilityVerdict {
        stable: violating.is_none(),
        theta_of_module: value,
        violating,
    })
}

/// For a brick `X` with `τX ≅ X`: the weight `θ_X` of its minimal
/// presentation and the verdict of the stability test against it.
pub fn homogeneous_stability_witness<S: Scalar>(
    x: &Representation<S>,
    cap: u64,
) -> Result<(Weight, StabilityVerdict)> {
    if x.is_zero() {
        return Err(Error::ZeroModule("homogeneous stability witness"));
    }
    let e = end_dim(x)?;
    if e != 1 {
        return Err(Error::NotBrick(e));
    }
    if iso_test(&tau(x)?, x, cap)?.is_none() {
        return Err(Error::NotHomogeneous);
    }
    let theta = theta_of(x)?;
    let verdict = is_theta_stable(x, &theta, cap)?;
    Ok((theta, verdict))
}

/// `θ = θ_{X_1 ⊕ ... ⊕ X_r}` and the stability verdict for `X_r`. The
/// hypotheses on the chain are the caller's; only the conclusion is checked.
pub fn coray_theta<S: Scalar>(modules: &[Representation<S>], cap: u64) -> Result<(Weight, StabilityVerdict)> {
    let last = modules
        .last()
        .ok_or(Error::EmptyInput("coray weight needs at least one module"))?;
    if modules.iter().any(Representation::is_zero) {
        return Err(Error::ZeroModule("coray weight"));
    }
    let sum = Representation::direct_sum_all(last.algebra(), modules)?;
    let theta = theta_of(&sum)?;
    let verdict = is_theta_stable(last, &theta, cap)?;
    Ok((theta, verdict))
}
