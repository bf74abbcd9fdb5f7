//! Line criticality screening for transmission networks.
//!
//! A case is read ([`case`]), solved ([`powerflow`]) and mapped to a directed
//! graph whose edges follow real power ([`graph`]). Lines are then ranked by
//! how much generator-to-load power travels over them on impedance-shortest
//! paths ([`betweenness`]), and the ranking is checked against classical
//! transient stability simulation of faults on each line ([`transient`]).
//! [`report`] strings the stages together and renders the output tables.

// Negated comparisons are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod betweenness;
pub mod case;
pub mod error;
pub mod graph;
pub mod powerflow;
pub mod report;
pub mod stats;
pub mod transient;

pub use error::{Error, Result};
