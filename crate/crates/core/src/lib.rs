//! Exact, weight-truncated computer algebra for free Lie algebras, cyclic
//! words, necklace brackets, Kashiwara–Vergne equations and non-commutative
//! Poisson cohomology.
//!
//! All coefficients are arbitrary-precision rationals and every series carries
//! its weight cutoff, so every check in the crate is an exact equality.

pub mod alphabet;
pub mod cyclic;
pub mod dbrackets;
pub mod error;
pub mod kv;
pub mod linalg;
pub mod lie;
pub mod linear;
pub mod necklace;
pub mod pbw;
pub mod random;
pub mod rational;
pub mod serial;
pub mod series;
pub mod symplectic;

pub use alphabet::{Alphabet, Generator, GeneratorKind, Letter, Word};
pub use error::{Error, Result};
pub use linear::LinComb;
pub use rational::Q;
pub use series::{PairSeries, TensorSeries};
