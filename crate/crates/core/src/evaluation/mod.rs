//! Metrics, repeated experiments, sweeps, cross-city transfer and
//! descriptive statistics.

mod eda;
mod experiment;
mod metrics;

pub use eda::{eda_stats, normalize_across_cities, EdaReport, EDA_RESOLUTION};
pub use experiment::{
    cross_city, cross_city_iterations, experiment_iterations, iteration_seeds, run_experiment, stratified_split,
    sweep, transfer_matrix, write_results_csv, CityData, SweepRow, TransferMatrix, MIN_POSITIVES, TEST_FRACTION,
};
pub use metrics::{
    compute_metrics, confusion, nearest_station_distance, Confusion, Metrics, MetricsReport, METRIC_NAMES,
};
