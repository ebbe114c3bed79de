pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod scalar;
pub mod snf;
pub mod category;
pub mod report;
pub mod anomaly;
pub mod pipeline;
