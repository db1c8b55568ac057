//! End-to-end studies driven by a JSON config, and the KAM smallness threshold.

mod config;
mod kam;
mod study;
pub mod svg;

pub use config::{
    BudgetSection, CoveringSection, FitSection, GenericitySection, OneDSection, PotentialSource, StudyConfig,
    TwistSection, SCHEMA_VERSION,
};
pub use kam::{kam_threshold, KamThreshold, KamThresholdInput};
pub use study::{run_plan, run_study, Plan, Quantity, Section, Status, StudyReport, Summary};

#[cfg(test)]
mod tests;
