//! Slice regular functions of a quaternionic variable: power series
//! algebra, slice splitting, uniform and split norms, and a numerical
//! Bloch-Landau construction with image-coverage certificates.

pub mod bloch_landau;
pub mod corpus;
pub mod error;
pub mod io;
pub mod norms;
pub mod optimize;
pub mod quaternion;
pub mod series;
pub mod slice;
pub mod sphere;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use norms::{NormConfig, NormReport};
pub use quaternion::{Quaternion, SlicePoint, UnitImaginary};
pub use series::Series;
