//! Exact spectral analysis of small graph Laplacians: closed-form spectra, soft nodes,
//! eigenvalue-preserving transformations, subgraph coupling and soft-graph landscapes.

pub mod canon;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod jacobi;
pub mod landscape;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod report;
pub mod special;
pub mod spectrum;
pub mod subgraph;
pub mod tables;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{Graph, LaplacianMatrix};
pub use quad::{QuadNum, Rat};
