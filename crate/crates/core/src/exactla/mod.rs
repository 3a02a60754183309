//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{
    gram_determinant, inverse_unimodular, lattice_index, lattice_index_of, lcm_all, pow_rational,
    solve_in_basis, ColumnLattice,
};
pub use matrix::IntMatrix;
pub use normal_form::{
    column_echelon, determinant, integer_kernel, rank, row_hermite_form, smith_normal_form,
    ColumnEchelon, SmithForm,
};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[cfg(test)]
mod tests;
