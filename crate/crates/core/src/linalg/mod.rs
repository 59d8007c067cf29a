//! Exact integer and rational linear algebra.

mod snf;
mod sparse;

pub use snf::{
    determinant, identity, matmul, smith_normal_form, solve_integer_system, IntMatrix, IntegerSolution, SmithForm,
};
pub use sparse::{rank_of_integer_rows, SparseRationalMatrix};
