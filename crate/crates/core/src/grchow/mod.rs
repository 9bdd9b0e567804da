//! The Chow ring of the Grassmannian of `kappa`-planes in `P^n`.

pub mod chern;
pub mod class;
pub mod context;
pub mod expr;
pub mod integrate;

pub use chern::{
    chern_sym_power, chern_sym_power_all, class_e, class_e1_pow, class_xi, sym_power_chern_roots, sym_power_rank,
};
pub use class::{gr_mul, GrClass};
pub use context::GrContext;
pub use expr::parse_class_expr;
pub use integrate::{audit_degrees, gr_integrate, integrate_factors, Factor, IntegrationMode};
