//! Matroid h-vectors, face-ring quotients, and g-element verification.

mod bits;
pub mod complex;
pub mod facering;
pub mod fixtures;
pub mod linalg;
pub mod macaulay;
pub mod matroid;
