//! Exact step-function arithmetic for bounded function systems on `[0, L)`: multiplicative
//! error, extension to multiplicative systems, extremalization and convex comparison,
//! Rademacher/Walsh chaos and trigonometric maximal bounds, plus a seeded verification
//! harness.
//!
//! ```
//! use multsys::{rademacher_system, mult_error};
//!
//! let sys = rademacher_system(3).unwrap();
//! assert_eq!(mult_error(&sys, 3).unwrap(), multsys::rational::int(0));
//! ```

pub mod chaos;
pub mod error;
pub mod extremal;
pub mod harness;
pub mod mask;
pub mod numeric;
pub mod rational;
pub mod stepfn;
pub mod systems;
pub mod trig;

pub use chaos::{bonami_kiener_check, corollary2_check, rademacher, rademacher_system, walsh, ChaosSum};
pub use error::{Error, Result};
pub use extremal::{expected_convex, extremalize, theorem1_pipeline, verify_theorem1, ConvexSpec, Norm, Outer};
pub use harness::{azuma_check, generate, run_suite, GeneratorConfig, GeneratorKind, Suite, VerificationReport};
pub use rational::Rational;
pub use stepfn::StepFn;
pub use systems::{extend_to_multiplicative, moment, mult_error, BoundedSystem, Bounds, SubsetFamily};
pub use trig::{corollary_x19_check, dirichlet_table, luxemburg_norm, TrigPoly, YoungFn};
