//! Exact construction of higher-order Hankel operators.
//!
//! The operator of order `s + 1` with symbol `x(z) (d/dz)^s` acts on
//! negative-power half-densities as `P_+ L_s(x) P_-`, where `L_s(x)` is an
//! explicit differential operator of order `s`. This crate builds that
//! operator together with the sl(2) machinery that determines it: the
//! infinitesimal action on weighted differentials, the equivariant
//! cross-section into symmetric tensors, the lowest-weight vectors of the
//! tensor square, the Pascal-factorized linear solve for the coefficients,
//! transvectants and the associated bilinear forms. All arithmetic is exact.

pub mod algebra;
pub mod error;
pub mod forms;
pub mod hankel;
pub mod identities;
pub mod sections;
pub mod suites;
pub mod sym_tensor;
pub mod tensor_rep;

pub use algebra::{binom, frac, rat, LaurentPoly, Rational};
pub use error::{Error, Result};
pub use hankel::{
    apply_b, b_as_tensor, build_ls, coeffs_a, matrix_window, DiffOp, ExactMatrix, OperatorWindow,
};
pub use sections::{act_sl2, HalfWeight, Section, Sl2Generator};
pub use sym_tensor::SymTensor;
pub use tensor_rep::TensorElt;
