//! Octonions, the Clifford model of Spin(8) as triality triples, the S3 of
//! outer automorphisms generated by `tau` and `sigma`, and the space
//! `S7 x S7 = Spin(8)/G2` with its fixed sets and antipodal sets.
//!
//! Every computation is generic over [`Scalar`], so the same code runs on exact
//! `Q(sqrt 3)` arithmetic and on tolerance-compared floats.

pub mod clifford;
pub mod error;
pub mod linalg;
pub mod octonion;
pub mod sample;
pub mod scalar;
pub mod symspace;
pub mod triality;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Mat16, Mat8, Matrix};
pub use octonion::{ImaginaryUnit, Octonion, UnitOctonion};
pub use scalar::{ApproxReal, QuadExt, Rational, Scalar, WithSqrt3, DEFAULT_EPS};
pub use symspace::{AntipodalSet, PolarSphere, SpherePoint};
pub use triality::{GammaElement, SemidirectElement, TrialityTriple};
pub use verify::{Backend, BackendSelection, CheckResult, Report, RunConfig, Status};
