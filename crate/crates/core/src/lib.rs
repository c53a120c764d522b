//! Spectral analysis of magnetic weighted multigraphs.
//!
//! A magnetic weighted graph carries positive vertex and edge weights and a
//! phase `α_e` on every edge. Its magnetic Laplacian is self-adjoint in the
//! weighted inner product, with spectrum in `[0, 2ρ_∞]`. The crate compares
//! spectra through the shifted relation `≼_r`. It certifies the shifts caused
//! by deleting or contracting edges and vertices. It also computes frustration
//! indices and Cheeger constants, and brackets band spectra of ℤ-periodic
//! coverings.
//!
//! ```
//! use magspec::graph::{MWGraph, WeightKind};
//! use magspec::spectra::spectrum;
//!
//! let p3 = MWGraph::builder(WeightKind::Combinatorial).vertices(0..3).edge(0, 1).edge(1, 2).build()?;
//! let s = spectrum(&p3)?;
//! assert!((s.values()[2] - 3.0).abs() < 1e-12);
//! # Ok::<(), magspec::error::Error>(())
//! ```

pub mod cheeger;
pub mod cli;
pub mod covering;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hom;
pub mod io;
pub mod linalg;
pub mod preorder;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{EdgeId, MWGraph, VertexId, WeightKind};
