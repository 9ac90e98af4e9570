//! Colored Kauffman brackets and the SO(3) invariant at a fifth root of unity.

pub mod diagram;
pub mod morse;
pub mod network;
pub mod oracle;
pub mod rt;
pub mod sweep;

pub use diagram::{Component, FramedLinkDiagram};
pub use morse::{MorseDiagram, MorseOp};
pub use network::{Network, VertexKind};
pub use oracle::naive_evaluate;
pub use sweep::sweep_evaluate;
pub use rt::{
    bracket, cut_bound_report, homology_from_linking, quantum_order, rt_invariant_5, rt_invariant_5_naive, CutBoundReport, Homology,
};
