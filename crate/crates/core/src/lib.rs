//! Resolution graphs of the surface singularities `f + g^k = 0` computed from
//! the decorated curve-arrangement graph of the pair `(f, g)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: the multigraph substrate (stable ids, parallel edges, loops);
//! - [`resgraph`]: embedded resolution graphs, the Euler relation,
//!   intersection lattices, blow-downs and exports;
//! - [`hj`]: Hirzebruch-Jung strings from a toric model;
//! - [`covering`]: cyclic coverings of decorated graphs;
//! - [`gammac`]: the input graph model, parser and validator;
//! - [`analysis`]: partitions, transversal types and Euler characteristic corrections;
//! - [`pipeline`]: the four-step construction and series sweeps;
//! - [`fixtures`] and [`cli`]: built-in inputs and the command surface.

pub mod analysis;
pub mod cli;
pub mod covering;
pub mod error;
pub mod fixtures;
pub mod gammac;
pub mod graph;
pub mod hj;
pub mod pipeline;
pub mod resgraph;

pub use error::{Error, Result};
