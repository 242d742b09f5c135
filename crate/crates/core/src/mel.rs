//! Log-Mel spectrogram front-end modelled on the ETSI DSR front-end
//! (ES 201 108), widened to 31 channels for 16 kHz audio.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::Array2;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::io::AudioSignal;

/// Pole of the ETSI offset-compensation notch filter.
const OFFSET_COMP_POLE: f64 = 0.999;

/// Hz to mel, `2595 log10(1 + f/700)`.
pub fn mel_scale(f_hz: f64) -> Result<f64> {
    if f_hz.is_nan() || f_hz < 0.0 {
        return Err(Error::InvalidInput(format!(
            "frequency must be non-negative, got {f_hz}"
        )));
    }
    Ok(2595.0 * (1.0 + f_hz / 700.0).log10())
}

/// Mel to Hz, the inverse of [`mel_scale`].
pub fn mel_inverse(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MelConfig {
    pub sample_rate_hz: u32,
    pub n_channels: usize,
    pub frame_length_s: f64,
    pub frame_shift_s: f64,
    pub preemphasis: f64,
    pub fft_size: usize,
    pub f_low_hz: f64,
    pub f_high_hz: f64,
    /// Filterbank energies are clamped to this value before the log.
    pub energy_floor: f64,
}

impl Default for MelConfig {
    fn default() -> Self {
        Self {
            sample_rate_hz: 16_000,
            n_channels: 31,
            frame_length_s: 0.025,
            frame_shift_s: 0.010,
            preemphasis: 0.97,
            fft_size: 512,
            f_low_hz: 64.0,
            f_high_hz: 8000.0,
            energy_floor: 1e-10,
        }
    }
}

impl MelConfig {
    pub fn frame_length_samples(&self) -> usize {
        (self.frame_length_s * self.sample_rate_hz as f64).round() as usize
    }

    pub fn frame_shift_samples(&self) -> usize {
        (self.frame_shift_s * self.sample_rate_hz as f64).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.sample_rate_hz == 0 {
            return fail("sample rate must be positive".into());
        }
        if self.n_channels == 0 {
            return fail("at least one Mel channel is required".into());
        }
        if !(self.f_low_hz >= 0.0 && self.f_low_hz < self.f_high_hz) {
            return fail(format!(
                "need 0 <= f_low < f_high, got {} and {} Hz",
                self.f_low_hz, self.f_high_hz
            ));
        }
        let nyquist = self.sample_rate_hz as f64 / 2.0;
        if self.f_high_hz > nyquist {
            return fail(format!(
                "f_high {} Hz exceeds the Nyquist frequency {nyquist} Hz",
                self.f_high_hz
            ));
        }
        if self.frame_length_samples() == 0 || self.frame_shift_samples() == 0 {
            return fail("frame length and shift must each cover at least one sample".into());
        }
        if self.fft_size < self.frame_length_samples() {
            return fail(format!(
                "FFT size {} is shorter than the {}-sample frame",
                self.fft_size,
                self.frame_length_samples()
            ));
        }
        if !(0.0..1.0).contains(&self.preemphasis) {
            return fail(format!("pre-emphasis {} outside [0, 1)", self.preemphasis));
        }
        if !(self.energy_floor.is_finite() && self.energy_floor > 0.0) {
            return fail(format!(
                "energy floor {} must be positive",
                self.energy_floor
            ));
        }
        Ok(())
    }

    /// Channel boundary frequencies: `n_channels + 2` points uniformly spaced
    /// on the mel axis from `f_low` to `f_high`. Channel `j` rises from point
    /// `j`, peaks at `j + 1` and falls to `j + 2`.
    fn band_edges_hz(&self) -> Vec<f64> {
        let lo = mel_scale(self.f_low_hz).expect("validated");
        let hi = mel_scale(self.f_high_hz).expect("validated");
        let step = (hi - lo) / (self.n_channels + 1) as f64;
        (0..self.n_channels + 2)
            .map(|i| match i {
                0 => self.f_low_hz,
                i if i == self.n_channels + 1 => self.f_high_hz,
                i => mel_inverse(lo + step * i as f64),
            })
            .collect()
    }

    pub fn channel_centers_hz(&self) -> Vec<f64> {
        let edges = self.band_edges_hz();
        edges[1..=self.n_channels].to_vec()
    }
}

/// Index of the center nearest `target_hz`; ties go to the lower index.
pub fn nearest_channel(centers_hz: &[f64], target_hz: f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &c) in centers_hz.iter().enumerate() {
        let d = (c - target_hz).abs();
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// The Mel channel centered closest to 1 kHz.
pub fn center_channel_1khz(cfg: &MelConfig) -> usize {
    nearest_channel(&cfg.channel_centers_hz(), 1000.0).unwrap_or(0)
}

/// Triangular weights over FFT bins, one sparse row per channel.
#[derive(Debug, Clone)]
pub struct MelFilterbank {
    rows: Vec<(usize, Vec<f64>)>,
}

impl MelFilterbank {
    pub fn new(cfg: &MelConfig) -> Result<Self> {
        cfg.validate()?;
        let edges = cfg.band_edges_hz();
        let n_bins = cfg.fft_size / 2 + 1;
        let bin_hz = cfg.sample_rate_hz as f64 / cfg.fft_size as f64;
        let rows = (0..cfg.n_channels)
            .map(|j| {
                let (lo, mid, hi) = (edges[j], edges[j + 1], edges[j + 2]);
                let weights: Vec<(usize, f64)> = (0..n_bins)
                    .filter_map(|b| {
                        let f = b as f64 * bin_hz;
                        let w = if f > lo && f <= mid {
                            (f - lo) / (mid - lo)
                        } else if f > mid && f < hi {
                            (hi - f) / (hi - mid)
                        } else {
                            0.0
                        };
                        (w > 0.0).then_some((b, w))
                    })
                    .collect();
                match (weights.first(), weights.last()) {
                    (Some(&(first, _)), Some(&(last, _))) => {
                        let mut dense = vec![0.0; last - first + 1];
                        for (b, w) in weights {
                            dense[b - first] = w;
                        }
                        (first, dense)
                    }
                    _ => (0, Vec::new()),
                }
            })
            .collect();
        Ok(Self { rows })
    }

    /// Total weight each FFT bin receives across all channels.
    pub fn bin_coverage(&self, n_bins: usize) -> Vec<f64> {
        let mut cov = vec![0.0; n_bins];
        for (start, w) in &self.rows {
            for (i, &v) in w.iter().enumerate() {
                cov[start + i] += v;
            }
        }
        cov
    }

    fn apply(&self, power: &[f64], out: &mut [f64]) {
        for ((start, w), o) in self.rows.iter().zip(out.iter_mut()) {
            *o = w.iter().zip(&power[*start..]).map(|(a, b)| a * b).sum();
        }
    }
}

/// Frames x channels natural-log Mel energies.
#[derive(Debug, Clone, PartialEq)]
pub struct LogMelSpectrogram {
    values: Array2<f64>,
    frame_shift_s: f64,
    channel_center_hz: Vec<f64>,
}

impl LogMelSpectrogram {
    pub fn new(
        values: Array2<f64>,
        frame_shift_s: f64,
        channel_center_hz: Vec<f64>,
    ) -> Result<Self> {
        if values.ncols() != channel_center_hz.len() {
            return Err(Error::Dimension(format!(
                "{} channel centers for {} channels",
                channel_center_hz.len(),
                values.ncols()
            )));
        }
        if channel_center_hz.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "channel centers must increase strictly".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite spectrogram value".into()));
        }
        Ok(Self {
            values,
            frame_shift_s,
            channel_center_hz,
        })
    }

    /// Builds a spectrogram from raw values with evenly spaced placeholder
    /// centers; handy for synthetic inputs.
    pub fn from_values(values: Array2<f64>, frame_shift_s: f64) -> Result<Self> {
        let centers = (0..values.ncols()).map(|c| c as f64 + 1.0).collect();
        Self::new(values, frame_shift_s, centers)
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn frames(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_channels(&self) -> usize {
        self.values.ncols()
    }

    pub fn frame_shift_s(&self) -> f64 {
        self.frame_shift_s
    }

    pub fn channel_center_hz(&self) -> &[f64] {
        &self.channel_center_hz
    }
}

fn hamming(len: usize) -> Vec<f64> {
    if len == 1 {
        return vec![1.0];
    }
    (0..len)
        .map(|n| 0.54 - 0.46 * (2.0 * PI * n as f64 / (len - 1) as f64).cos())
        .collect()
}

/// Number of full frames in `n_samples`, or `None` when not even one fits.
pub fn frame_count(n_samples: usize, frame_len: usize, shift: usize) -> Option<usize> {
    (n_samples >= frame_len).then(|| (n_samples - frame_len) / shift + 1)
}

pub fn log_mel_spectrogram(sig: &AudioSignal, cfg: &MelConfig) -> Result<LogMelSpectrogram> {
    cfg.validate()?;
    if sig.sample_rate_hz() != cfg.sample_rate_hz {
        return Err(Error::InvalidInput(format!(
            "signal is sampled at {} Hz, front-end expects {} Hz",
            sig.sample_rate_hz(),
            cfg.sample_rate_hz
        )));
    }
    let frame_len = cfg.frame_length_samples();
    let shift = cfg.frame_shift_samples();
    let frames = frame_count(sig.len(), frame_len, shift).ok_or_else(|| {
        Error::InvalidInput(format!(
            "signal has {} samples, shorter than one {frame_len}-sample frame",
            sig.len()
        ))
    })?;

    // offset compensation: s_of(n) = s_in(n) - s_in(n-1) + 0.999 s_of(n-1)
    let mut offset_free = Vec::with_capacity(sig.len());
    let (mut prev_in, mut prev_out) = (0.0, 0.0);
    for &x in sig.samples() {
        let y = x - prev_in + OFFSET_COMP_POLE * prev_out;
        offset_free.push(y);
        prev_in = x;
        prev_out = y;
    }

    let bank = MelFilterbank::new(cfg)?;
    let window = hamming(frame_len);
    let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(cfg.fft_size);
    let n_bins = cfg.fft_size / 2 + 1;
    let mut buf = vec![Complex::new(0.0, 0.0); cfg.fft_size];
    let mut power = vec![0.0; n_bins];
    let mut energies = vec![0.0; cfg.n_channels];
    let mut values = Array2::zeros((frames, cfg.n_channels));

    for t in 0..frames {
        let start = t * shift;
        for (n, slot) in buf.iter_mut().enumerate() {
            *slot = if n < frame_len {
                let i = start + n;
                let prev = if i > 0 { offset_free[i - 1] } else { 0.0 };
                let emphasized = offset_free[i] - cfg.preemphasis * prev;
                Complex::new(emphasized * window[n], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            };
        }
        fft.process(&mut buf);
        for (p, c) in power.iter_mut().zip(&buf) {
            *p = c.norm_sqr();
        }
        bank.apply(&power, &mut energies);
        for (c, &e) in energies.iter().enumerate() {
            values[[t, c]] = e.max(cfg.energy_floor).ln();
        }
    }

    LogMelSpectrogram::new(values, cfg.frame_shift_s, cfg.channel_centers_hz())
}
