//! The small algebras used throughout the tests, built over any field.
//!
//! The texts are the `.bq` files shipped in `fixtures/`.

use std::sync::Arc;

use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::scalar::Scalar;
use crate::Limits;

use super::parse::AlgebraText;
use super::BoundQuiverAlgebra;

pub const LOC: &str = include_str!("../../../../fixtures/loc.bq");
pub const A2: &str = include_str!("../../../../fixtures/a2.bq");
pub const A3: &str = include_str!("../../../../fixtures/a3.bq");
pub const KRON: &str = include_str!("../../../../fixtures/kron.bq");
pub const SQUARE: &str = include_str!("../../../../fixtures/square.bq");
pub const A2_X_A2: &str = include_str!("../../../../fixtures/a2xa2.bq");

pub fn build<S: Scalar>(text: &str) -> Arc<BoundQuiverAlgebra<S>> {
    AlgebraText::parse(text)
        .and_then(|t| t.build(&Limits::default()))
        .expect("shipped fixture is valid")
}

/// `k[x]/(x^2)`.
pub fn local_dual_numbers<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(LOC)
}

pub fn a2<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(A2)
}

pub fn a3<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(A3)
}

/// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`, arrows `x1, x2, ...`.
pub fn linear_a<S: Scalar>(n: usize) -> Arc<BoundQuiverAlgebra<S>> {
    let mut text = format!("field 2\nvertices {n}\n");
    for i in 1..n {
        text.push_str(&format!("arrow x{i}: {i} -> {}\n", i + 1));
    }
    build(&text)
}

pub fn kronecker<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(KRON)
}

pub fn commutative_square<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(SQUARE)
}

/// `A_2 x A_2`, disconnected.
pub fn a2_x_a2<S: Scalar>() -> Arc<BoundQuiverAlgebra<S>> {
    build(A2_X_A2)
}

/// The Kronecker module of dimension vector `(1, 1)` with `a -> [a]`,
/// `b -> [b]`. `(1, l)` is the brick `R_l`, `(0, 1)` the brick at infinity.
pub fn kronecker_point<S: Scalar>(
    kronecker: &Arc<BoundQuiverAlgebra<S>>,
    a: i64,
    b: i64,
) -> Representation<S> {
    let one = |v: i64| Matrix::from_vec(1, 1, vec![S::from_i64(v)]);
    Representation::new(kronecker.clone(), vec![1, 1], vec![one(a), one(b)])
        .expect("Kronecker quiver has no relations")
}
