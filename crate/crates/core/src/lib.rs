//! Payoff-based strategies for N-player and network Prisoner's Dilemmas:
//! games, strategies, a seeded simulator, band-set certification and the
//! limit dynamics.
//!
//! Everything is generic over the scalar type. The aliases below fix the
//! common choices: `f64` for simulation, [`Rational64`] for exact checks.

pub mod approach;
pub mod dynamics;
pub mod engine;
pub mod error;
pub mod game;
pub mod graph;
pub mod scalar;
pub mod strategy;

pub use num_rational::Rational64;

pub use approach::{bcor_certify, separation_check, BandSet, Certificate};
pub use engine::{replicate, run, Ensemble, SimConfig, Trace};
pub use error::{Error, Result};
pub use game::{Action, ActionProfile, PdGame, StateSpace, StateVector, ValidationReport};
pub use graph::{GameGraph, PayoffQuad, TransitionMatrix};
pub use scalar::{Real, Scalar};
pub use strategy::{Assignment, OpponentPolicy, PayoffBasedStrategy};

pub type NPlayerGame = game::NPlayerPayoffTable<f64>;
pub type NPlayerGame32 = game::NPlayerPayoffTable<f32>;
pub type ExactNPlayerGame = game::NPlayerPayoffTable<Rational64>;
pub type NetworkGame = graph::NetworkGame<f64>;
pub type NetworkGame32 = graph::NetworkGame<f32>;
pub type ExactNetworkGame = graph::NetworkGame<Rational64>;
pub type Strategy = strategy::PayoffBasedStrategy<f64>;
pub type ExactStrategy = strategy::PayoffBasedStrategy<Rational64>;
pub type State = game::StateVector<f64>;
