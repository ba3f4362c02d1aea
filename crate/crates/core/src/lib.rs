//! Coded caching and delivery for cloud and cache-aided networks in which
//! every UE hears a fixed number of edge nodes (ENs).
//!
//! Three delivery schemes are provided: [`mdsia`] (MDS-coded placement with
//! interference alignment), [`soft`] (soft-transfer with cooperative
//! zero-forcing) and [`zf`] (cloud-free zero-forcing). [`ndt`] evaluates and
//! compares their normalized delivery times.

pub mod channel;
pub mod combinatorics;
pub mod error;
pub mod fixtures;
pub mod gf256;
pub mod library;
pub mod mds;
pub mod mdsia;
pub mod ndt;
pub mod placement;
pub mod scalar;
pub mod soft;
pub mod topology;
pub mod zf;

pub use error::{Error, Result};
pub use library::Library;
pub use ndt::{NdtValue, SchemeId};
pub use placement::Part;
pub use scalar::{Real, Scalar};
pub use topology::NetworkTopology;

/// Exact rational used for cache fractions and delivery times.
pub type Rational = num_rational::Ratio<i128>;
/// Delivery time in exact arithmetic.
pub type Ndt = NdtValue<Rational>;
pub type NdtF64 = NdtValue<f64>;
pub type Channel = channel::ChannelMatrix<f64>;
pub type Channel32 = channel::ChannelMatrix<f32>;
