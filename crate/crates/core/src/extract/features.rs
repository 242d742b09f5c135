use ndarray::{concatenate, Array2, Axis};
use rayon::prelude::*;

use super::conv::filter_channels;
use crate::error::{Error, Result};
use crate::feature::{DimSource, FeatureMatrix};
use crate::gabor::FilterbankSpec;
use crate::mel::LogMelSpectrogram;

/// Filters the spectrogram with every filter of the bank, keeps each
/// filter's critically sampled channels and stacks them in filter order.
pub fn extract_features(spec: &LogMelSpectrogram, fb: &FilterbankSpec) -> Result<FeatureMatrix> {
    let expected = fb.config().n_mel_channels;
    if spec.n_channels() != expected {
        return Err(Error::Dimension(format!(
            "spectrogram has {} channels, filterbank expects {expected}",
            spec.n_channels()
        )));
    }
    if spec.frames() == 0 {
        return Err(Error::InvalidInput("spectrogram has no frames".into()));
    }
    let blocks: Vec<Array2<f64>> = fb
        .filters()
        .par_iter()
        .zip(fb.sampling().par_iter())
        .map(|(filter, channels)| filter_channels(spec.values(), filter, channels))
        .collect();
    let views: Vec<_> = blocks.iter().map(|b| b.view()).collect();
    let values = concatenate(Axis(1), &views).map_err(|e| Error::Dimension(e.to_string()))?;
    let provenance = fb
        .filter_ids()
        .iter()
        .zip(fb.sampling())
        .flat_map(|(&filter, channels)| {
            channels
                .iter()
                .map(move |&channel| DimSource::Gabor { filter, channel })
        })
        .collect();
    FeatureMatrix::new(values, spec.frame_shift_s(), provenance)
}

/// The log-Mel spectrogram itself as baseline features.
pub fn mfsc_features(spec: &LogMelSpectrogram) -> Result<FeatureMatrix> {
    let provenance = (0..spec.n_channels()).map(DimSource::MelChannel).collect();
    FeatureMatrix::new(spec.values().clone(), spec.frame_shift_s(), provenance)
}
