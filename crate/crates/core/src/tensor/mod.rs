//! Curvature-tensor forms of low-weight graph sums.

pub mod basis;
pub mod expand;
pub mod linalg;
pub mod term;

pub use basis::{
    bilinear_basis, invariant_form, sigma_basis, to_invariant_basis, Basis, BasisElement, InvariantForm, Operator,
};
pub use expand::{expand_combination, expand_to_graphs};
pub use term::{parse_combination, Factor, Head, Index, TensorTerm};

pub const TENSOR_CAP: usize = 3;
