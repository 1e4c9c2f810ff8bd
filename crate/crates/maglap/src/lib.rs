//! Combinatorial magnetic Laplacians on finite directed graphs.
//!
//! A magnetic Laplacian attaches a phase `e^{i theta(e)}` to every directed
//! edge and twists the combinatorial Laplacian with it: `Delta_theta = D - A_theta`.
//! The angle 0 recovers the standard Laplacian and pi the signless one.
//! This crate builds these operators, decides gauge equivalence through
//! fluxes, tests 2- and 3-colorability through vanishing determinants at the
//! special angles, implements the averaged variational principle for
//! eigenvalue sums, and verifies the resulting sharp bounds on spectra.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --example spectrum
//! cargo run --example gauge_flux
//! cargo run --example coloring
//! cargo run --example avp_demo
//! cargo run --example eigenvalue_bounds
//! cargo run --example flux_scan
//! ```
//!
//! A thin command-line front end (`maglap`) exposes the same operations on
//! graph files; see the crate README for the file format.

pub mod avp;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod flux;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod operator;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, UndirectedView};
pub use linalg::{ComplexMatrix, HermitianMatrix, SpectralDecomposition};
pub use operator::{ThetaAssignment, VertexFunction};
