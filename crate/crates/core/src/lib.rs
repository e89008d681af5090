//! Friendship-paradox analytics for scale-free networks.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`powerlaw`]: closed-form moments of the continuous truncated power law
//!   `P(k) = C k^-alpha` on `[k_min, k_max]`, including the removable
//!   singularities at `alpha = 2` and `alpha = 3`, plus inverse-CDF sampling.
//! - [`netgen`]: realization of degree sequences as simple undirected graphs
//!   under three wiring models (A, B and Kalisky).
//! - [`metrics`]: empirical paradox statistics and structural metrics
//!   (components, global efficiency, central point dominance).
//! - [`fit`]: estimation of the scaling parameter from observed degrees.
//! - [`io`]: the plain-text edge-list format.

pub mod error;
pub mod fit;
pub mod io;
pub mod metrics;
pub mod netgen;
pub mod powerlaw;

pub use error::{Error, Result};
pub use netgen::{DegreeSequence, Graph, Model};
pub use powerlaw::{Branch, PowerLawSpec, PredictionResult};
