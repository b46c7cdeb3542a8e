//! Real-coefficient cubic (and degree-n) root engine built on canonical
//! forms: affine reductions to a depressed/normal/canonical cubic,
//! structural root classification with isolation intervals, a real-only
//! closed-form solver for the single-root regimes, bracketed iteration
//! (bisection, Newton, chord-conic) for the rest, and SVG emission of the
//! underlying conic constructions.

pub mod classify;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod factor;
pub mod forms;
pub mod geometry;
pub mod iterative;

pub use error::{Error, Result};
