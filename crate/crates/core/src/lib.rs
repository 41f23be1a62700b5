//! Persistent first homology of the two-robot restricted configuration space
//! of a metric star graph.
//!
//! The crate builds a weighted bipartite model graph whose superlevel
//! subgraphs track the configuration space as the restraint parameter `r`
//! and the first edge length `L` vary, computes the GF(2) cycle spaces over
//! the chambers of the `(r, L)` parameter plane, and decomposes the
//! resulting two-parameter persistence module into interval summands
//! supported on trapezoids and rectangles. An independent cell-complex
//! oracle computes the homology of the configuration space directly.
//!
//! ```
//! use starph_core::{model::normalize_lengths, persistence, foundation::q};
//!
//! let lengths = normalize_lengths(&[q(10, 1), q(3, 1), q(2, 1), q(1, 1)]).unwrap();
//! let rep = persistence::build_representation(&lengths).unwrap();
//! let summands = persistence::interval_decomposition(&rep).unwrap();
//! let total: usize = summands.iter().map(|s| s.multiplicity).sum();
//! assert_eq!(total, 5);
//! ```

pub mod arrangement;
pub mod error;
pub mod foundation;
pub mod homology;
pub mod model;
pub mod oracle;
pub mod persistence;
pub mod spanning;
pub mod verify;

pub use arrangement::{Chamber, ChamberPoset, Hyperplane, Side};
pub use error::{Error, Result};
pub use foundation::{Gf2Vector, Rational};
pub use homology::{CycleSubspace, CycleVector};
pub use model::{EdgeLengthVector, GraphKind, ModelGraph, ModelVertex};
pub use persistence::{IntervalSummand, Region, Representation};
pub use spanning::SpanningTree;
