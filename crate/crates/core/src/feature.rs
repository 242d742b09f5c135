use std::fmt;

use ndarray::Array2;

use crate::error::{Error, Result};

/// Where one feature dimension came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimSource {
    /// A log-Mel channel used directly (MFSC baseline).
    MelChannel(usize),
    /// Output of Gabor filter `filter` (index into the full filterbank) at Mel channel `channel`.
    Gabor { filter: usize, channel: usize },
    /// Constant zero padding dimension.
    Zero,
    /// Seeded uniform noise dimension.
    Random,
    /// Column of an externally produced matrix with no further provenance.
    Column(usize),
}

impl fmt::Display for DimSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimSource::MelChannel(c) => write!(f, "mel{c}"),
            DimSource::Gabor { filter, channel } => write!(f, "g{filter}c{channel}"),
            DimSource::Zero => f.write_str("zero"),
            DimSource::Random => f.write_str("rand"),
            DimSource::Column(c) => write!(f, "col{c}"),
        }
    }
}

/// A frames x D matrix of feature values.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    values: Array2<f64>,
    frame_shift_s: f64,
    provenance: Vec<DimSource>,
}

impl FeatureMatrix {
    pub fn new(
        values: Array2<f64>,
        frame_shift_s: f64,
        provenance: Vec<DimSource>,
    ) -> Result<Self> {
        if provenance.len() != values.ncols() {
            return Err(Error::Dimension(format!(
                "{} provenance entries for {} feature dimensions",
                provenance.len(),
                values.ncols()
            )));
        }
        if !(frame_shift_s.is_finite() && frame_shift_s > 0.0) {
            return Err(Error::InvalidInput(format!(
                "frame shift must be positive, got {frame_shift_s}"
            )));
        }
        if let Some(((r, c), v)) = values.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite feature value {v} at frame {r}, dim {c}"
            )));
        }
        Ok(Self {
            values,
            frame_shift_s,
            provenance,
        })
    }

    /// Wraps a matrix whose columns carry no provenance.
    pub fn from_values(values: Array2<f64>, frame_shift_s: f64) -> Result<Self> {
        let provenance = (0..values.ncols()).map(DimSource::Column).collect();
        Self::new(values, frame_shift_s, provenance)
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn frames(&self) -> usize {
        self.values.nrows()
    }

    pub fn dim(&self) -> usize {
        self.values.ncols()
    }

    pub fn frame_shift_s(&self) -> f64 {
        self.frame_shift_s
    }

    pub fn provenance(&self) -> &[DimSource] {
        &self.provenance
    }
}
