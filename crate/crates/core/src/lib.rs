//! Homological obstruction to embedding compact orientable multibranched
//! surfaces into the 3-sphere (and any homology 3-sphere).
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`model`]: branches, sectors and signed boundary attachments.
//! * [`neighborhood`]: cyclic orders of prongs at each branch and the
//!   gluing of the parallel copies `e × {±1}` into abstract dual graphs.
//! * [`linalg`]: exact integer matrices, Smith normal form, gcd of maximal
//!   minors and right-inverse certificates.
//! * [`obstruction`]: spanning forests, algebraic degree matrices and the
//!   per-graph / whole-surface evaluation.
//! * [`families`]: generators for the classical critical examples and the
//!   bipartite connectivity construction.
//!
//! File formats, reports, the parallel driver and the CLI live in the
//! `mbs-tool` crate.
#![no_std]

extern crate alloc;

pub mod families;
pub mod linalg;
pub mod model;
pub mod neighborhood;
pub mod obstruction;
mod unionfind;

pub use linalg::{IntMatrix, LinalgError, SmithForm};
pub use model::{Attachment, Branch, ModelError, MultibranchedSurface, Sector, SurfaceBuilder};
pub use neighborhood::{
    AssignmentSpace, CyclicAssignment, DualGraph, DualGraphClass, DualGraphCollector, NeighborhoodError,
    Prong, Side, SideNode,
};
pub use obstruction::{
    Decision, DegreeMatrix, EvalError, EvalOptions, GraphReport, Outcome, SpanningForest, Verdict,
};
