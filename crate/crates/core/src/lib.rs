//! Algebraic lattice reduction for the Golden Code.
//!
//! The normalized 2x2 channel is approximated by a unit of the maximal order of
//! the code algebra, found by walking the tiling of hyperbolic 3-space by the
//! Dirichlet polyhedron of the norm-one unit group. The unit is absorbed into
//! the code lattice as a unimodular change of basis, after which linear
//! detection runs on a well-conditioned residual channel.

pub mod error;
pub mod exact_order;
pub mod fundamental_domain;
pub mod golden_code;
pub mod hyperbolic;
pub mod linalg;
pub mod lll_baseline;
pub mod sim_engine;
pub mod unit_search;

pub use error::{Error, Result};
pub use exact_order::{GaussInt, OrderElement, RingElem, UnitWord};
