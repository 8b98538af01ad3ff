//! Weighted flexibility of list colorings of triangle-free plane graphs.
//!
//! The crate finds small reducible configurations in triangle-free plane
//! graphs, certifies them with an exhaustive choosability checker, replays
//! the exact-rational discharging ledger on minimal disk subgraphs, and
//! samples list colorings by repeatedly peeling off reducible
//! configurations.
//!
//! Charges and weights are generic over the scalar type; the aliases below
//! fix the concrete types used by the command line tool.

pub mod coloring;
pub mod configurations;
pub mod discharging;
pub mod error;
pub mod flexibility;
pub mod gen;
pub mod io;
pub mod planar;
pub mod reducibility;

pub use error::{Error, Result};

/// Exact charge used by the discharging ledger.
pub type Charge = num_rational::Ratio<i64>;
/// Per-vertex and per-face charges in [`Charge`].
pub type ChargeMap = discharging::ChargeMap<Charge>;
/// Weight of one `(vertex, color)` pair in a weighted request.
pub type Weight = num_rational::BigRational;
pub type WeightedRequest = flexibility::WeightedRequest<Weight>;
