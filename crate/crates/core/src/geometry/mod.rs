//! Axisymmetric domains described by their meridian curve.

pub mod checks;
pub mod distance;
pub mod parallel;
pub mod profile;
pub mod spline;
pub mod summary;

pub use checks::{check_heintze_karcher, check_total_mean_bound, mean_condition, MarginReport, MeanConditionReport, Verdict};
pub use distance::BoundaryDistance;
pub use parallel::{parallel_profile, ParallelMethod, ParallelProfile, SamplingPlan};
pub use profile::{Family, RevolutionProfile, Topology};
pub use summary::{summarize, Convexity, GeometrySummary};
