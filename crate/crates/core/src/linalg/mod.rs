//! Exact linear algebra over Z and Q: matrices, Hermite and Smith forms,
//! lattices and supernatural numbers.

mod lattice;
mod matrix;
mod normal_form;
mod supernatural;

pub use lattice::{
    dual_lattice, index, member, module_basis, module_contains, module_intersection,
    module_torsion_order, Lattice,
};
pub use matrix::{dot, fmt_rat_vec, primitive_direction, to_rat_vec, IntMat, Mat, RatMat};
pub use normal_form::{
    column_span_basis, hermite_form, hnf, integer_kernel, smith_form, snf, HermiteForm, SmithForm,
};
pub use supernatural::{Exponent, ParseSupernaturalError, Supernatural};
