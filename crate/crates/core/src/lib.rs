//! Simulator and analytics for a two-community homophilic network model.
//!
//! A backward community (BC) and a forward community (FC) are each random
//! graphs; a small number of bridges join them. The crate generates such
//! graphs, measures how far each BC node sits from FC, evaluates the
//! closed-form predictions for that distance, and checks the predictions
//! with Monte Carlo runs.
//!
//! Module map:
//!
//! - [`graph`]: partitioned graph with classified edges; [`edgelist`] reads and writes it.
//! - [`generators`]: ER blocks, Bernoulli and fixed-count bridges, preferential attachment.
//! - [`metrics`]: social distance, entry path counts, social capital.
//! - [`theory`]: closed-form path counts, expectations and the distance law.
//! - [`experiments`]: sweeps, concentration runs, connectivity transition, substrate comparison.
//! - [`survey`]: homophily table from friendship survey records.
//! - [`validate`]: acceptance checks behind `bridgegap validate`.

pub mod cli;
pub mod edgelist;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod plot;
pub mod rng;
pub mod survey;
pub mod theory;
pub mod tolerances;
pub mod validate;

pub use graph::{CommunityGraph, EdgeClass, NodeId};
