#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semibrick::census::rep_points;
use semibrick::{BoundQuiverAlgebra, Matrix, Representation, Scalar};

pub const CAP: u64 = 1 << 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let q = S::order().expect("finite field");
    S::from_index(rng.gen_range(0..q)).unwrap()
}

pub fn random_matrix<S: Scalar>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<S> {
    Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| random_scalar(rng)).collect())
}

pub fn random_invertible<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> Matrix<S> {
    loop {
        let m = random_matrix(n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A uniformly random `F_q`-point of `rep(A, d)`.
pub fn random_point<S: Scalar>(
    algebra: &Arc<BoundQuiverAlgebra<S>>,
    dims: &[usize],
    rng: &mut ChaCha8Rng,
) -> Representation<S> {
    if algebra.is_hereditary() {
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| random_matrix(dims[a.target], dims[a.source], rng))
            .collect();
        return Representation::new(algebra.clone(), dims.to_vec(), maps).unwrap();
    }
    match rep_points(algebra, dims, CAP) {
        Ok(points) => points[rng.gen_range(0..points.len())].clone(),
        // Too many points to list: rejection sampling is still uniform.
        Err(_) => loop {
            let maps = algebra
                .quiver()
                .arrows()
                .iter()
                .map(|a| random_matrix(dims[a.target], dims[a.source], rng))
                .collect();
            if let Ok(x) = Representation::new(algebra.clone(), dims.to_vec(), maps) {
                return x;
            }
        },
    }
}

pub fn random_dims(rank: usize, max_total: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let dims: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=max_total)).collect();
        let total: usize = dims.iter().sum();
        if (1..=max_total).contains(&total) {
            return dims;
        }
    }
}

pub fn random_base_change<S: Scalar>(x: &Representation<S>, rng: &mut ChaCha8Rng) -> Representation<S> {
    let g: Vec<Matrix<S>> = x.dims().iter().map(|&d| random_invertible(d, rng)).collect();
    x.base_change(&g).unwrap()
}

/// Counts module maps by brute force over every tuple of vertex matrices:
/// an oracle for `dim Hom` independent of the kernel computation.
pub fn brute_force_hom_count<S: Scalar>(x: &Representation<S>, y: &Representation<S>) -> u64 {
    let q = S::order().unwrap();
    let n = x.dims().len();
    let sizes: Vec<(usize, usize)> = (0..n).map(|v| (y.dim(v), x.dim(v))).collect();
    let len: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let total = q.pow(len as u32);
    let mut count = 0;
    for idx in 0..total {
        let coords = semibrick::rep::vector_at::<S>(idx, len);
        let mut offset = 0;
        let phi: Vec<Matrix<S>> = sizes
            .iter()
            .map(|&(r, c)| {
                let m = Matrix::from_vec(r, c, coords[offset..offset + r * c].to_vec());
                offset += r * c;
                m
            })
            .collect();
        let commutes = x.algebra().quiver().arrows().iter().enumerate().all(|(i, a)| {
            &phi[a.target] * x.map(i) == y.map(i) * &phi[a.source]
        });
        if commutes {
            count += 1;
        }
    }
    count
}
