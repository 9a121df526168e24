//! Exact-arithmetic kernel for measure theory and Lebesgue integration.
//!
//! Everything is computed over arbitrary-precision rationals extended with
//! signed infinities; there is no floating point anywhere in the core. The
//! representable fragment is deliberately small — finite universes, finite
//! unions of rational-endpoint intervals, simple and piecewise-linear
//! functions — and on that fragment measures, integrals, and the classical
//! theorems (Dynkin pi-lambda, Beppo Levi, Fatou, dominated convergence,
//! Tonelli) are evaluated or verified exactly.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `lebkern` binary exposes the same operations behind a small JSON-driven
//! command line.

pub mod xreal;
pub mod setsys;
pub mod intervals;
pub mod measures;
pub mod simplefn;
pub mod lebint;
pub mod convergence;
pub mod product;
pub mod descr;
pub mod battery;
pub mod cli;

pub use xreal::{Rat, XReal};
