//! Coded distributed computing schemes built from symmetric designs and
//! almost difference sets.
//!
//! A scheme is built from a verified design ([`designs`]), fed with
//! pseudorandom intermediate values ([`scheme`]), shuffled and decoded
//! ([`shuffle`]), and its measured load compared with the closed forms in
//! [`analysis`]. [`simulation::simulate`] runs the whole pipeline.

pub mod analysis;
pub mod bits;
pub mod cli;
pub mod designs;
pub mod error;
pub mod gf;
pub mod scheme;
pub mod shuffle;
pub mod simulation;

pub use error::{Error, Result};
pub use simulation::{simulate, Simulation, SimulationReport};
