//! Graph enumeration and exact coefficient calculus for the Berezin star product.

pub mod coeff;
pub mod det;
pub mod enumerate;
mod error;
pub mod graph;
pub mod graphsum;
pub mod rational;
pub mod reference;
pub mod starprod;
pub mod tensor;

pub use error::Error;
pub use graph::{Connectivity, PointedMultiDigraph, Stability};
pub use rational::Rational;
