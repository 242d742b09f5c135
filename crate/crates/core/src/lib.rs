//! Auditory-inspired spectro-temporal Gabor filterbank features.
//!
//! The pipeline runs WAV audio through a 31-channel log-Mel front-end, convolves
//! the spectrogram with a bank of 2D Gabor filters, critically samples the
//! filter outputs and concatenates them into feature vectors. A separate
//! analysis stage measures how discriminable phoneme classes are in any
//! frame-level feature or activation matrix via centroid cosine similarities.

pub mod error;
pub mod extract;
pub mod feature;
mod fft2;
pub mod gabor;
pub mod io;
pub mod mel;
pub mod similarity;

pub use error::{Error, Result};
pub use extract::{
    combine_features, convolve2d, correlate_padded, correlate_padded_fft, extract_features,
    CombinationPart, CombinationSpec,
};
pub use feature::{DimSource, FeatureMatrix};
pub use gabor::{
    build_gabor_filter, critical_channels, modulation_grid, select_subgroup, FilterParams,
    FilterbankSpec, GaborFilter, GfbConfig, Orientation, Subgroup,
};
pub use io::{AudioSignal, LabelSegment, LabelTrack};
pub use mel::{
    center_channel_1khz, log_mel_spectrogram, mel_inverse, mel_scale, LogMelSpectrogram, MelConfig,
};
pub use similarity::{
    class_centroids, cosine_similarity, normalize_features, rcm_order, similarity_matrix,
    threshold_matrix, CentroidSet, SimilarityMatrix,
};
