//! Exact dense linear algebra over ℤ, ℚ and `F_p`.

pub mod fp;
pub mod int;
pub mod rational;

pub use fp::FpMatrix;
pub use int::IntMatrix;
