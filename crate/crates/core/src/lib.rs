//! Fractional binomial coefficients
//!
//! ```text
//!   [n k]_β = Γ(βn+1) / (Γ(βk+1) Γ(β(n−k)+1)),   zero when a lower argument is a pole,
//! ```
//!
//! together with the machinery built on top of them: exact β = 1/2 arithmetic,
//! the step-two Pascal rule and its companion identities, the generating
//! functions φ_n and their partial sums φ̄_n, the Mittag-Leffler function and
//! its Caputo eigenfunction property, and the Gauss ₂F₁ connection.
//!
//! Every infinite process reports how it was truncated ([`SeriesOutcome`]),
//! every integral goes through one adaptive Gauss-Kronrod driver
//! ([`quad::integrate`]), and every β = 1/2 coefficient is available as an
//! exact `rational · π^e` value ([`ExactHalfValue`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod figure;
pub mod fracbinom;
pub mod gamma;
pub mod genfunc;
pub mod hypergeom;
pub mod mittag;
pub mod oracle;
pub mod partial_sum;
pub mod quad;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exact::PiPoly;
pub use figure::{Column, FigureData};
pub use fracbinom::{
    binom_beta, binom_continuous, binom_half_exact, binom_via_gauss, identity_residual, identity_residual_exact,
    row_via_pascal, Beta, BetaBinomialQuery, ExactHalfValue, Identity, Residual, RowSlice,
};
pub use gamma::{gamma, gamma_half_exact, ln_gamma, reciprocal_gamma, HalfGammaExact};
pub use genfunc::{GenFuncPoint, GenFuncRoute};
pub use mittag::{CaputoGrid, MLQuery};
pub use partial_sum::{PartialSumPoint, PartialSumRoute, SumId};
pub use quad::QuadraturePolicy;
pub use series::{SeriesOutcome, SeriesPolicy};
pub use verify::{CheckResult, Suite, VerifyReport};
