//! Phoneme-class discriminability: class centroids of normalized frames and
//! their pairwise cosine similarities, thresholded and reordered so that
//! confusable classes cluster near the diagonal.

mod rcm;

use ndarray::{Array1, Array2, ArrayView1, Axis};

pub use rcm::{bandwidth, reverse_cuthill_mckee};

use crate::error::{Error, Result};
use crate::feature::FeatureMatrix;
use crate::io::LabelTrack;

const DEGENERATE_STD: f64 = 1e-12;

/// Per-dimension standardization over all frames (population statistics).
/// Dimensions with a standard deviation below 1e-12 are only mean-subtracted.
pub fn normalize_features(m: &FeatureMatrix) -> Result<FeatureMatrix> {
    if m.frames() < 2 {
        return Err(Error::InvalidInput(format!(
            "normalization needs at least 2 frames, got {}",
            m.frames()
        )));
    }
    let mean = m.values().mean_axis(Axis(0)).expect("non-empty");
    let std = m.values().std_axis(Axis(0), 0.0);
    let mut values = m.values() - &mean;
    for (mut col, &s) in values.axis_iter_mut(Axis(1)).zip(&std) {
        if s >= DEGENERATE_STD {
            col.mapv_inplace(|v| v / s);
        }
    }
    FeatureMatrix::new(values, m.frame_shift_s(), m.provenance().to_vec())
}

/// Mean feature vector per phoneme class.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    /// Phonemes with at least one frame, in phoneme-list order.
    pub phonemes: Vec<String>,
    /// One row per entry of `phonemes`.
    pub centroids: Array2<f64>,
    pub counts: Vec<usize>,
    /// Listed phonemes that had no labeled frames.
    pub dropped: Vec<String>,
}

pub fn class_centroids(
    m: &FeatureMatrix,
    labels: &LabelTrack,
    phoneme_list: &[String],
) -> Result<CentroidSet> {
    if labels.end_frame() > m.frames() {
        return Err(Error::InvalidInput(format!(
            "labels reach frame {} but the feature matrix has {} frames",
            labels.end_frame(),
            m.frames()
        )));
    }
    let dim = m.dim();
    let mut sums = Array2::<f64>::zeros((phoneme_list.len(), dim));
    let mut counts = vec![0usize; phoneme_list.len()];
    for seg in labels.segments() {
        let Some(p) = phoneme_list.iter().position(|q| *q == seg.phoneme) else {
            continue;
        };
        let mut acc = sums.row_mut(p);
        for t in seg.start..seg.end {
            acc += &m.values().row(t);
        }
        counts[p] += seg.len();
    }

    let kept: Vec<usize> = (0..phoneme_list.len()).filter(|&p| counts[p] > 0).collect();
    let mut centroids = Array2::zeros((kept.len(), dim));
    for (row, &p) in kept.iter().enumerate() {
        let mean = &sums.row(p) / counts[p] as f64;
        centroids.row_mut(row).assign(&mean);
    }
    Ok(CentroidSet {
        phonemes: kept.iter().map(|&p| phoneme_list[p].clone()).collect(),
        centroids,
        counts: kept.iter().map(|&p| counts[p]).collect(),
        dropped: (0..phoneme_list.len())
            .filter(|&p| counts[p] == 0)
            .map(|p| phoneme_list[p].clone())
            .collect(),
    })
}

/// `v1 . v2 / (|v1| |v2|)`, clamped to [-1, 1].
pub fn cosine_similarity(v1: ArrayView1<f64>, v2: ArrayView1<f64>) -> Result<f64> {
    if v1.len() != v2.len() {
        return Err(Error::Dimension(format!(
            "vectors of length {} and {}",
            v1.len(),
            v2.len()
        )));
    }
    let n1 = v1.dot(&v1).sqrt();
    let n2 = v2.dot(&v2).sqrt();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::ZeroNorm("cosine similarity of a zero vector".into()));
    }
    Ok((v1.dot(&v2) / (n1 * n2)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub phonemes: Vec<String>,
    pub values: Array2<f64>,
    pub threshold_deg: Option<f64>,
    /// `ordering[i]` is the phoneme shown at position `i`.
    pub ordering: Vec<usize>,
}

impl SimilarityMatrix {
    /// Values and names permuted by `ordering`.
    pub fn reordered(&self) -> (Vec<String>, Array2<f64>) {
        let names = self
            .ordering
            .iter()
            .map(|&i| self.phonemes[i].clone())
            .collect();
        let values = Array2::from_shape_fn(self.values.dim(), |(i, j)| {
            self.values[[self.ordering[i], self.ordering[j]]]
        });
        (names, values)
    }

    /// Undirected graph linking distinct phonemes with similarity of at least `cutoff`.
    pub fn adjacency(&self, cutoff: f64) -> Vec<Vec<usize>> {
        let n = self.phonemes.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| {
                        j != i && (self.values[[i, j]] >= cutoff || self.values[[j, i]] >= cutoff)
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn similarity_matrix(cs: &CentroidSet) -> Result<SimilarityMatrix> {
    let p = cs.phonemes.len();
    if p < 2 {
        return Err(Error::InvalidInput(format!(
            "similarity needs at least 2 phoneme classes, got {p}"
        )));
    }
    let norms: Array1<f64> = cs
        .centroids
        .rows()
        .into_iter()
        .map(|r| r.dot(&r).sqrt())
        .collect();
    if let Some(i) = norms.iter().position(|&n| n == 0.0) {
        return Err(Error::ZeroNorm(format!(
            "centroid of {} is all zeros",
            cs.phonemes[i]
        )));
    }
    let mut values = Array2::zeros((p, p));
    for i in 0..p {
        values[[i, i]] = 1.0;
        for j in i + 1..p {
            let s = cosine_similarity(cs.centroids.row(i), cs.centroids.row(j))?;
            values[[i, j]] = s;
            values[[j, i]] = s;
        }
    }
    Ok(SimilarityMatrix {
        phonemes: cs.phonemes.clone(),
        values,
        threshold_deg: None,
        ordering: (0..p).collect(),
    })
}

fn cutoff(angle_deg: f64) -> Result<f64> {
    if !(angle_deg > 0.0 && angle_deg < 180.0) {
        return Err(Error::InvalidInput(format!(
            "threshold angle must lie in (0, 180) degrees, got {angle_deg}"
        )));
    }
    Ok(angle_deg.to_radians().cos())
}

/// Zeroes every off-diagonal similarity below `cos(angle_deg)`.
pub fn threshold_matrix(sm: &SimilarityMatrix, angle_deg: f64) -> Result<SimilarityMatrix> {
    let cut = cutoff(angle_deg)?;
    let mut out = sm.clone();
    for ((i, j), v) in out.values.indexed_iter_mut() {
        if i != j && *v < cut {
            *v = 0.0;
        }
    }
    out.threshold_deg = Some(angle_deg);
    Ok(out)
}

/// Reverse Cuthill-McKee permutation of the graph whose edges are the
/// similarities at or above `cos(angle_deg)`.
pub fn rcm_order(sm: &SimilarityMatrix, angle_deg: f64) -> Result<Vec<usize>> {
    Ok(reverse_cuthill_mckee(&sm.adjacency(cutoff(angle_deg)?)))
}
