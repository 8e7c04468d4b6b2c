pub mod drc;
pub mod embedder;
pub mod error;
pub mod field;
pub mod hypergraph;
pub mod norm;
pub mod product;
pub mod verifier;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type ExactStats = drc::DrcStats<Rational>;
pub type FloatStats = drc::DrcStats<f64>;
