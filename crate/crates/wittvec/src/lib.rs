//! Exact arithmetic in big and truncated Witt vector rings over
//! Z_S-algebras, the lambda-ring structure induced by commuting Frobenius
//! lifts, and membership tests for the kernel of the map extending the
//! Teichmuller representative.

pub mod error;
pub mod kernel;
pub mod lambda;
pub mod parse;
pub mod rings;
pub mod trunc;
pub mod witt;

pub use error::{KernelError, LambdaError, RingError, WittError};
