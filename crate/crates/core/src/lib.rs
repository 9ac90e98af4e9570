pub mod catalog;
pub mod cli;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod johnson_morita;
pub mod lefschetz;
pub mod limits;
pub mod linalg;
pub mod modular;
pub mod ring;
pub mod skein;
pub mod symplectic;
pub mod weights;

pub use error::{Error, Result};
