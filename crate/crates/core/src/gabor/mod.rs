//! The spectro-temporal Gabor filterbank: modulation grid, kernel
//! construction, subgroups and critical channel sampling.

mod bank;
mod config;
mod filter;

pub use bank::{critical_channels, modulation_grid, select_subgroup, FilterbankSpec, Subgroup};
pub use config::{constant_overlap_series, round_to_odd, GfbConfig};
pub use filter::{
    build_gabor_filter, dtft_magnitude, peak_response, FilterParams, GaborFilter, Orientation,
};
