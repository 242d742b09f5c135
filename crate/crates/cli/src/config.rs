use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use gaborfeat::{CombinationSpec, GfbConfig, MelConfig, Subgroup};
use sha2::{Digest, Sha256};

use crate::UsageError;

/// Keys accepted in a configuration file.
const KNOWN_KEYS: &[&str] = &[
    "format",
    "jobs",
    "seed",
    "energy_floor",
    "subgroup",
    "parts",
    "threshold_deg",
    "normalize",
];

/// Parsed `key = value` lines; `#` starts a comment.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                UsageError(format!(
                    "config line {}: expected key=value, got {line:?}",
                    i + 1
                ))
            })?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(UsageError(format!(
                    "config line {}: unknown key {key:?} (known: {})",
                    i + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Flag value if given, else the config entry, else `None`.
    pub fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, UsageError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| UsageError(format!("config key {key}: cannot parse {v:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Htk,
    Csv,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Htk => "htk",
            OutputFormat::Csv => "csv",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        match s.to_ascii_lowercase().as_str() {
            "htk" => Ok(Self::Htk),
            "csv" => Ok(Self::Csv),
            _ => Err(UsageError(format!(
                "unknown format {s:?}; expected htk or csv"
            ))),
        }
    }
}

/// What each utterance is turned into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureKind {
    Mfsc,
    Gabor(Subgroup),
    Combination(CombinationSpec),
}

/// Everything needed to process a batch, validated up front.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub mel: MelConfig,
    pub gfb: GfbConfig,
    pub features: FeatureKind,
    pub format: OutputFormat,
    pub seed: u64,
    pub jobs: usize,
}

impl PipelineConfig {
    pub fn new(features: FeatureKind) -> Self {
        let mel = MelConfig::default();
        Self {
            gfb: GfbConfig::for_mel(&mel),
            mel,
            features,
            format: OutputFormat::Htk,
            seed: 0,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let invalid = |e: gaborfeat::Error| UsageError(e.to_string());
        self.mel.validate().map_err(invalid)?;
        self.gfb.validate().map_err(invalid)?;
        if self.mel.sample_rate_hz != 16_000 {
            return Err(UsageError(format!(
                "sample rate {} Hz is not supported; the front-end runs at 16000 Hz",
                self.mel.sample_rate_hz
            )));
        }
        if self.gfb.n_mel_channels != self.mel.n_channels {
            return Err(UsageError(format!(
                "filterbank expects {} Mel channels, front-end produces {}",
                self.gfb.n_mel_channels, self.mel.n_channels
            )));
        }
        if self.jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Canonical text of every setting that affects output values.
    pub fn canonical(&self) -> String {
        format!(
            "mel={:?}\ngfb={:?}\nfeatures={:?}\nseed={}\n",
            self.mel, self.gfb, self.features, self.seed
        )
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}
