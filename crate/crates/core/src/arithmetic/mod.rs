//! Exact integer polynomials: an oracle for the exponent arithmetic and checks of the
//! Frobenius-lift structure on monomial algebras.

pub mod checks;
pub mod lambda;
pub mod oracle;
pub mod poly;
pub mod sample;
pub mod term_ideal;

pub use checks::{CheckRegistry, CheckReport, CheckSettings, LambdaCheck};
pub use lambda::{
    frobenius_lift_check, is_prime, normal_cone_flat_check, proj_chart_frobenius_check,
    proj_chart_lift, psi, rees_cancellation_check, rees_lift_check, LocalElement, ReesElement,
};
pub use oracle::{fiber_order_check, monomial_to_poly, oracle_agrees, oracle_transform};
pub use poly::{Exponent, IntPoly};
pub use sample::{ConfigBounds, SampleBounds, Sampler};
pub use term_ideal::TermIdeal;
