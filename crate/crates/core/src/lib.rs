//! Exact finite-group computations around Heisenberg groups over F_p and
//! their Heisenberg and Weil representations, together with the quadratic
//! form and root datum tooling they rest on.

pub mod autz;
pub mod cyclotomic;
pub mod error;
pub mod forms;
pub mod gf;
pub mod grp;
pub mod heis;
pub mod reps;
pub mod rootdata;
pub mod verify;
pub mod weil;
pub mod zmod;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::Ratio;

/// Rational numbers with machine-word numerators.
pub type Rational = Ratio<i128>;
/// Arbitrary-precision rationals.
pub type BigRational = Ratio<BigInt>;
/// Cyclotomic numbers with [`Rational`] coefficients, the default scalar.
pub type Cyc = cyclotomic::Cyclotomic<Rational>;
/// Cyclotomic numbers with [`BigRational`] coefficients.
pub type BigCyc = cyclotomic::Cyclotomic<BigRational>;
pub type CycMat = cyclotomic::CycMatrix<Rational>;
