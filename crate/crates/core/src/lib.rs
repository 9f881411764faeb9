//! Heterochaos baker maps and the Dyck shift.
//!
//! `maps` evaluates `tau_a`, `f_a`, `f_{a,b}` and `g_a`. `dyck` holds the
//! bracket monoid and the measures of maximal entropy on the symbol side.
//! `coding` moves between symbol windows and boxes of phase space, and
//! `periodic` enumerates periodic points. `orbit`, `measures` and `stats`
//! do the numerical experiments; `verify` bundles the invariant checks.

pub mod coding;
pub mod dyck;
pub mod error;
pub mod maps;
pub mod measures;
pub mod orbit;
pub mod periodic;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use maps::{Dims, Kind, Params, Point2, Point3, Symbol};
