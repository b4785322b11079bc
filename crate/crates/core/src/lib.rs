//! Exact computation in the quantum torus `T_q`.
//!
//! The quantum torus is generated by `x^{±1}, y^{±1}` with `xy = q^2 yx`.
//! This crate builds the images of the Baseilhac–Kolb elements of the
//! q-Onsager algebra and of the Lu–Wang root vectors `B_{1,r}`, `Θ'_n`,
//! `Θ_n`, `H'_n`, `H_n` inside `T_q`, each by two independent routes, and
//! checks the identities relating them with exact arithmetic over
//! `Q(q^(1/2))`.
//!
//! Modules, bottom up:
//! - [`scalar`]: the coefficient field.
//! - [`torus`]: standard-basis elements `Σ c·x^a y^b` and commutators.
//! - [`series`]: truncated power series in a central `t`, with exp/log.
//! - [`elements`]: the element families, recursive and closed-form.
//! - [`verify`]: identity suites producing [`verify::CheckReport`]s.
//! - [`cli`]: the `qtorus` command-line front end.

pub mod cli;
pub mod elements;
pub mod scalar;
pub mod series;
pub mod torus;
pub mod verify;

pub use elements::{Builder, Family, FamilyTag, Route, Which};
pub use scalar::QHalf;
pub use series::TruncatedSeries;

pub use torus::{Element, Monomial, Twist};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("evaluation at a pole (s = {0})")]
    Pole(String),
    #[error("negative power of a multi-term element is not supported")]
    UnsupportedInverse,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
}
