//! Exact coefficient arithmetic and linear algebra.

pub mod field;
pub mod frobenius;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod probe;
pub mod ratfunc;
pub mod text;
pub mod var;

pub use field::{Embed, ExactDiv, Field, Fp, Gf2_20, Gf2k, Rational, Ring, Scalar, F101, F2, F3, F65521};
pub use frobenius::{frobenius_decompose, ParityDecomposition};
pub use poly::{Mono, MultiPoly};
pub use ratfunc::{Degree, RatFunc};
pub use var::{VarId, VarIdx};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Degree in `v` and leading coefficient with respect to `v`.
pub fn degree_lc<F: Scalar>(phi: &RatFunc<F>, v: VarId) -> (Degree, RatFunc<F>) {
    phi.degree_lc(v.index())
}

pub fn partial_derivative<F: Scalar>(phi: &RatFunc<F>, v: VarId) -> RatFunc<F> {
    phi.derivative(v.index())
}

/// Variable assignment used for specialization.
pub type Assignment<E> = HashMap<VarId, E>;

/// Evaluates `phi` at a total assignment.
pub fn specialize<F: Scalar, E: Scalar + Embed<F>>(phi: &RatFunc<F>, point: &Assignment<E>) -> Result<E> {
    phi.eval(&|v| point.get(&VarId::from_index(v)).cloned())
}

pub fn specialize_poly<F: Scalar, E: Scalar + Embed<F>>(p: &MultiPoly<F>, point: &Assignment<E>) -> Result<E> {
    p.eval(&|v| point.get(&VarId::from_index(v)).cloned()).ok_or(Error::UnassignedVariable)
}
