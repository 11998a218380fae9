//! Self-contained rigorous numerics: arbitrary-precision floats with
//! directed rounding, outward-rounded interval arithmetic, and a
//! deterministic branch-and-bound inequality certifier.
//!
//! The design goals, in order:
//!
//! 1. **Soundness.** Every interval operation returns an enclosure of the
//!    exact result; transcendental functions are computed from argument
//!    reduction and Taylor series with explicit remainder bounds, with no
//!    external numeric library in the trusted path.
//! 2. **Determinism.** All computations are pure functions of their inputs
//!    and the working precision. Repeated runs produce bit-identical
//!    results, including bisection traces and witness boxes.
//! 3. **Honest failure.** A certification that cannot be completed reports
//!    `Refuted` or `Undecided` with a witness box rather than guessing.

pub mod cert;
pub mod error;
pub mod expr;
pub mod float;
pub mod interval;

pub use cert::{certify_margin_on_box, check_rel, CertResult, CertStatus, PrecisionConfig, Rel};
pub use error::RigorError;
pub use expr::{certify_on_box, Claim, Expr};
pub use float::{BigFloat, Round};
pub use interval::Interval;
