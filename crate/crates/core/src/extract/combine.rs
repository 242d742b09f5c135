use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::{concatenate, Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::feature::{DimSource, FeatureMatrix};
use crate::gabor::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinationPart {
    Features(Subgroup),
    Zeros(usize),
    /// i.i.d. uniform values on [-1, 1] drawn from a ChaCha8 stream seeded with `seed`.
    UniformRandom {
        dim: usize,
        seed: u64,
    },
}

impl fmt::Display for CombinationPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinationPart::Features(g) => write!(f, "{g}"),
            CombinationPart::Zeros(d) => write!(f, "zeros:{d}"),
            CombinationPart::UniformRandom { dim, seed } => write!(f, "random:{dim}:{seed}"),
        }
    }
}

/// An ordered list of blocks concatenated along the feature axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationSpec {
    parts: Vec<CombinationPart>,
}

impl CombinationSpec {
    pub fn new(parts: Vec<CombinationPart>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput(
                "a combination needs at least one part".into(),
            ));
        }
        if parts.iter().any(|p| {
            matches!(
                p,
                CombinationPart::Zeros(0) | CombinationPart::UniformRandom { dim: 0, .. }
            )
        }) {
            return Err(Error::InvalidInput(
                "padding parts need a positive dimension".into(),
            ));
        }
        Ok(Self { parts })
    }

    /// Parses `htm,zeros:202,random:202[:seed]`; random parts without an
    /// explicit seed use `default_seed`.
    pub fn parse(text: &str, default_seed: u64) -> Result<Self> {
        let bad = |item: &str| {
            Error::InvalidInput(format!(
                "bad combination part {item:?}; expected a subgroup (full, ltm, mtm, htm, dc), zeros:D or random:D[:SEED]"
            ))
        };
        let parts = text
            .split(',')
            .map(str::trim)
            .map(|item| {
                let fields: Vec<&str> = item.split(':').collect();
                match fields[..] {
                    [name] => name
                        .parse::<Subgroup>()
                        .map(CombinationPart::Features)
                        .map_err(|_| bad(item)),
                    ["zeros", d] => d.parse().map(CombinationPart::Zeros).map_err(|_| bad(item)),
                    ["random", d] => Ok(CombinationPart::UniformRandom {
                        dim: d.parse().map_err(|_| bad(item))?,
                        seed: default_seed,
                    }),
                    ["random", d, s] => Ok(CombinationPart::UniformRandom {
                        dim: d.parse().map_err(|_| bad(item))?,
                        seed: s.parse().map_err(|_| bad(item))?,
                    }),
                    _ => Err(bad(item)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    /// Named feature combinations: `lhtm`, `mhtm`, `dchtm`, `rhtm`, `zhtm`.
    pub fn preset(name: &str, seed: u64) -> Option<Self> {
        use CombinationPart::*;
        let parts = match name.to_ascii_lowercase().as_str() {
            "lhtm" => vec![Features(Subgroup::Ltm), Features(Subgroup::Htm)],
            "mhtm" => vec![Features(Subgroup::Mtm), Features(Subgroup::Htm)],
            "dchtm" => vec![Features(Subgroup::Dc), Features(Subgroup::Htm)],
            "rhtm" => vec![UniformRandom { dim: 202, seed }, Features(Subgroup::Htm)],
            "zhtm" => vec![Zeros(202), Features(Subgroup::Htm)],
            _ => return None,
        };
        Some(Self { parts })
    }

    pub fn parts(&self) -> &[CombinationPart] {
        &self.parts
    }

    /// Subgroups whose features must be computed for this combination.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut out = Vec::new();
        for p in &self.parts {
            if let CombinationPart::Features(g) = p {
                if !out.contains(g) {
                    out.push(*g);
                }
            }
        }
        out
    }
}

impl FromStr for CombinationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::preset(s, 0).map_or_else(|| Self::parse(s, 0), Ok)
    }
}

impl fmt::Display for CombinationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&items.join(","))
    }
}

fn uniform_block(frames: usize, dim: usize, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Array2::from_shape_simple_fn((frames, dim), || rng.gen_range(-1.0..=1.0))
}

/// Concatenates the parts horizontally, in order.
pub fn combine_features(
    frames: usize,
    spec: &CombinationSpec,
    inputs: &HashMap<Subgroup, FeatureMatrix>,
) -> Result<FeatureMatrix> {
    let mut blocks = Vec::with_capacity(spec.parts.len());
    let mut provenance = Vec::new();
    let mut frame_shift = None;
    for part in &spec.parts {
        match *part {
            CombinationPart::Features(g) => {
                let m = inputs.get(&g).ok_or_else(|| {
                    Error::InvalidInput(format!("no {g} features supplied for the combination"))
                })?;
                if m.frames() != frames {
                    return Err(Error::Dimension(format!(
                        "{g} features have {} frames, expected {frames}",
                        m.frames()
                    )));
                }
                frame_shift.get_or_insert(m.frame_shift_s());
                blocks.push(m.values().clone());
                provenance.extend_from_slice(m.provenance());
            }
            CombinationPart::Zeros(dim) => {
                blocks.push(Array2::zeros((frames, dim)));
                provenance.extend(std::iter::repeat_n(DimSource::Zero, dim));
            }
            CombinationPart::UniformRandom { dim, seed } => {
                blocks.push(uniform_block(frames, dim, seed));
                provenance.extend(std::iter::repeat_n(DimSource::Random, dim));
            }
        }
    }
    let views: Vec<_> = blocks.iter().map(|b| b.view()).collect();
    let values = concatenate(Axis(1), &views).map_err(|e| Error::Dimension(e.to_string()))?;
    FeatureMatrix::new(values, frame_shift.unwrap_or(0.01), provenance)
}
