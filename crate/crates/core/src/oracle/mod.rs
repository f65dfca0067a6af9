//! Brute-force oracles used to cross-check the closed forms and solvers.

pub mod edit;
pub mod gnp;
pub mod grid;
pub mod scan;

pub use edit::{brute_edit_distance, find_induced_k2t, EditOutcome, EditResult, MAX_EDIT_ORDER};
pub use gnp::{sample_gnp, sample_gnp_distance, GnpSample};
pub use grid::{grid_g, grid_error_bound};
pub use scan::{scan_small_pcores, ScanReport};
