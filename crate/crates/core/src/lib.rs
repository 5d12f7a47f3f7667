//! Probable cost of failure of infrastructure networks.
//!
//! Couples mechanical fragility (conditional failure probability given an
//! event intensity) with hazard occurrence and economic failure costs:
//!
//! - [`hazard`]: annual occurrence curves and back-period truncation
//! - [`fragility`]: fragility curves and annual component failure probability
//! - [`network`]: series lines, parallel groups, node-to-node failure probability
//! - [`economics`]: direct and indirect failure costs
//! - [`model`]: the validated model and what-if scenarios
//! - [`risk`]: probable costs, importance factors and scenario deltas
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod economics;
mod error;
pub mod fragility;
pub mod hazard;
mod ids;
pub mod model;
pub mod network;
pub mod risk;

pub use error::{Error, Result};
pub use ids::{AreaId, ComponentId, CostModelId, EventTypeId, LineId, NodeId};
