//! Sync-and-Burst graph layout.
//!
//! A force-directed layout whose attraction and repulsion magnitudes do not
//! depend on distance, a naive Fruchterman-Reingold baseline, the aesthetic
//! metric suite used to compare the two, and a batch benchmark harness.

pub mod bench;
pub mod cli;
pub mod error;
pub mod fr;
pub mod graph;
pub mod layout;
pub mod metrics;
pub mod render;
pub mod run;
pub mod snb;

pub use error::{Error, Result};
pub use graph::Graph;
pub use layout::{normalize_layout, Layout, Vec2};
pub use run::{LayoutRun, RunOptions};
pub use snb::{snb_run, SnbParams};
