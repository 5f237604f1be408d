//! Exact integer tools for periodic friezes, fence posets and the tubes of
//! the twice-punctured disk.
//!
//! - [`fence`]: rank matrices and order-ideal counts of type A quivers.
//! - [`frieze`]: the diamond rule, growth coefficients, polygon quiddities.
//! - [`surface`]: triangulations of the twice-punctured disk.
//! - [`tubes`]: per-tube quiddities, growth checks and tube navigation.

pub mod bigint_serde;
pub mod fence;
pub mod frieze;
pub mod surface;
pub mod tubes;

pub use fence::{band_count, delta, ideal_count, invert, nabla, nabla_of_inverse, CyclicWord, FenceWord, Letter};
pub use frieze::{chebyshev_growth, generate, growth, polygon_quiddity, Frieze, FriezeStatus, Quiddity};
pub use surface::{DiskTriangulation, Endpoint, Puncture};
pub use tubes::{tube_report, TubeReport};
