//! Telephone broadcasting on sparse graph families.
//!
//! The crate contains exact exponential oracles, approximation schemes for
//! k-cycle and k-path graphs built on prefix covering problems, a dynamic
//! program for graphs of bounded bandwidth, and generators for the
//! hardness reductions from restricted numerical 3-dimensional matching.

pub mod bandwidth;
pub mod doublecover;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod prefixcover;
pub mod reductions;
pub mod schedule;

pub use graph::{Graph, GraphError, Round, Vertex};
pub use schedule::{validate_schedule, BroadcastSchedule, Call, ScheduleError, Source};
