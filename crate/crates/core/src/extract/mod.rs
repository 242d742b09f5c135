//! Filtering log-Mel spectrograms with the Gabor filterbank and assembling
//! feature vectors.
//!
//! Padding is fixed: channels beyond the spectrogram edge read as zero, frames
//! beyond either end repeat the first or last frame.

mod combine;
mod conv;
mod features;

pub use combine::{combine_features, CombinationPart, CombinationSpec};
pub use conv::{convolve2d, correlate_padded, correlate_padded_fft, filter_channels};
pub use features::{extract_features, mfsc_features};
