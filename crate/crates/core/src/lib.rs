//! Exact machinery for lower bounds on p-adic Newton polygons and the
//! resulting bounds on the dimension of slope subspaces.
//!
//! Every quantity is an arbitrary-precision integer or rational; nothing is
//! ever rounded.

pub mod bernoulli;
pub mod bounds;
pub mod cli;
pub mod counting;
pub mod error;
pub mod harness;
pub mod newton;
pub mod plf;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use rational::Rational;
