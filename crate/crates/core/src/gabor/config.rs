use crate::error::{Error, Result};
use crate::mel::{center_channel_1khz, MelConfig};

/// Nearest odd integer to `x`; exact even values round up (14 -> 15).
pub fn round_to_odd(x: f64) -> usize {
    (2.0 * (x / 2.0).floor() + 1.0).max(1.0) as usize
}

/// `count` modulation frequencies ending at `top`, each the previous one
/// scaled by `(1 - overlap) / (1 + overlap)`, returned in increasing order.
/// Adjacent constant-Q filters on such a grid overlap at a constant height.
pub fn constant_overlap_series(top: f64, overlap: f64, count: usize) -> Vec<f64> {
    let ratio = (1.0 - overlap) / (1.0 + overlap);
    let mut out: Vec<f64> = std::iter::successors(Some(top), |f| Some(f * ratio))
        .take(count)
        .collect();
    out.reverse();
    out
}

/// Overlap constant of the spectral modulation series.
pub const SPECTRAL_OVERLAP: f64 = 1.0 / 9.0;

#[derive(Debug, Clone, PartialEq)]
pub struct GfbConfig {
    /// Temporal modulation frequencies in Hz, starting with 0.
    pub temporal_mods_hz: Vec<f64>,
    /// Spectral modulation frequencies in cycles per channel, starting with 0.
    pub spectral_mods_cpc: Vec<f64>,
    /// Carrier oscillations under the envelope.
    pub nu: f64,
    pub max_time_frames: usize,
    pub max_freq_channels: usize,
    pub frame_shift_s: f64,
    pub n_mel_channels: usize,
    /// Mel channel every critically sampled filter output is anchored on.
    pub center_channel: usize,
}

impl Default for GfbConfig {
    fn default() -> Self {
        let mut spectral = vec![0.0];
        spectral.extend(constant_overlap_series(0.25, SPECTRAL_OVERLAP, 4));
        let mel = MelConfig::default();
        Self {
            temporal_mods_hz: vec![0.0, 2.4, 3.9, 6.2, 9.9, 15.7, 25.0],
            spectral_mods_cpc: spectral,
            nu: 3.5,
            max_time_frames: 99,
            max_freq_channels: 69,
            frame_shift_s: mel.frame_shift_s,
            n_mel_channels: mel.n_channels,
            center_channel: center_channel_1khz(&mel),
        }
    }
}

impl GfbConfig {
    /// Default filterbank adapted to a front-end's channel layout and frame rate.
    pub fn for_mel(mel: &MelConfig) -> Self {
        Self {
            frame_shift_s: mel.frame_shift_s,
            n_mel_channels: mel.n_channels,
            center_channel: center_channel_1khz(mel),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        for (name, set) in [
            ("temporal", &self.temporal_mods_hz),
            ("spectral", &self.spectral_mods_cpc),
        ] {
            if set.first() != Some(&0.0) {
                return fail(format!("{name} modulation set must start with 0"));
            }
            if set.iter().any(|f| !f.is_finite()) || set.windows(2).any(|w| w[1] <= w[0]) {
                return fail(format!(
                    "{name} modulation set must be finite and strictly increasing"
                ));
            }
        }
        if !(self.nu.is_finite() && self.nu > 0.0) {
            return fail(format!(
                "oscillation count must be positive, got {}",
                self.nu
            ));
        }
        for (name, cap) in [
            ("time", self.max_time_frames),
            ("frequency", self.max_freq_channels),
        ] {
            if cap % 2 == 0 {
                return fail(format!("maximum {name} support {cap} must be odd"));
            }
        }
        if !(self.frame_shift_s.is_finite() && self.frame_shift_s > 0.0) {
            return fail(format!(
                "frame shift must be positive, got {}",
                self.frame_shift_s
            ));
        }
        if self.n_mel_channels == 0 || self.center_channel >= self.n_mel_channels {
            return fail(format!(
                "center channel {} outside 0..{}",
                self.center_channel, self.n_mel_channels
            ));
        }
        Ok(())
    }
}
