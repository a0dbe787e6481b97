//! Hexagonal micro-region embeddings and bike-share station presence
//! prediction from OpenStreetMap extracts.

pub mod cli;
pub mod embeddings;
pub mod error;
pub mod evaluation;
pub mod hexgrid;
pub mod learning;
mod optim;
pub mod osm;
pub mod predict;
pub mod study_area;

pub use error::{Error, Result};
