//! Measurement-based layer (resource states, read-in, classification).

pub mod induced;
pub mod read_in;
pub mod resource;

pub use induced::{induced_pattern_map, PatternMap};
pub use read_in::{
    aggregate_success, classify_outcomes, read_in, ClassificationTable, ReadInBranch, ReadInRecord,
    Verdict,
};
pub use resource::{
    build_resource, connect, degrade_resource, resource_with_channel, Party, ResourceState,
};
