//! Exact symmetric-function kernel: partitions, the Schur basis with
//! Littlewood-Richardson products, monomial-basis polynomials, and the
//! bialternant integration oracle.

pub mod convert;
pub mod partition;
pub mod poly;
pub mod schur;

pub use convert::{
    alternant_integrate, alternant_integrate_product, schur_expand, schur_expand_within, schur_to_poly,
    schur_vector_to_poly,
};
pub use partition::{partitions_in_box, Partition};
pub use poly::{generator, GeneratorKind, Monomial, MonomialSymPoly};
pub use schur::{duality_pairing, lr_coefficients, lr_mul, lr_mul_with, LrMemo, Rect, SchurVector};
