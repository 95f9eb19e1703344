//! Higher-order Hankel operators `B_{s+1}(x) = P_+ L_s(x) P_-`.

mod matrix;
mod operator;

pub use matrix::{
    build_ds, build_ms, build_ns, lowest_weight_coords, pascal_lower, pascal_lower_inv,
    pascal_upper, pascal_upper_inv, solve_for_a, solve_for_a_trace, ExactMatrix, SolveTrace,
};
pub use operator::{
    apply_b, b_as_tensor, build_ls, coeffs_a, matrix_window, DiffOp, OperatorWindow,
};
