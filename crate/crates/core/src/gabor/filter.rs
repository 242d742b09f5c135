use std::f64::consts::PI;

use ndarray::Array2;
use rustfft::num_complex::Complex;

use super::config::{round_to_odd, GfbConfig};
use crate::error::{Error, Result};
use crate::fft2::fft2;

/// Direction of the spectro-temporal ripple. Separable filters are always `Up`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Up => 1.0,
            Orientation::Down => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterParams {
    pub f_n_hz: f64,
    pub f_k_cpc: f64,
    pub orientation: Orientation,
    /// Temporal support in frames (odd).
    pub w_n: usize,
    /// Spectral support in channels (odd).
    pub w_k: usize,
    /// Continuous Hann width along time, `nu / f` capped at the maximum support.
    pub width_n: f64,
    pub width_k: f64,
    pub n0: usize,
    pub k0: usize,
}

/// `(support, width)` for one axis: `width = min(nu / f, cap)`, `f = 0` uses the cap.
fn axis_extent(f_cycles_per_sample: f64, nu: f64, cap: usize) -> (usize, f64) {
    let width = if f_cycles_per_sample == 0.0 {
        cap as f64
    } else {
        (nu / f_cycles_per_sample).min(cap as f64)
    };
    (round_to_odd(width).min(cap), width)
}

impl FilterParams {
    pub fn new(
        f_n_hz: f64,
        f_k_cpc: f64,
        orientation: Orientation,
        cfg: &GfbConfig,
    ) -> Result<Self> {
        if !(f_n_hz >= 0.0 && f_k_cpc >= 0.0) || !f_n_hz.is_finite() || !f_k_cpc.is_finite() {
            return Err(Error::InvalidInput(format!(
                "modulation frequencies must be non-negative, got {f_n_hz} Hz / {f_k_cpc} cyc/ch"
            )));
        }
        if cfg.nu.is_nan() || cfg.nu <= 0.0 {
            return Err(Error::Config(format!(
                "oscillation count must be positive, got {}",
                cfg.nu
            )));
        }
        if orientation == Orientation::Down && (f_n_hz == 0.0 || f_k_cpc == 0.0) {
            return Err(Error::InvalidInput(
                "only filters modulated along both axes have a downward twin".into(),
            ));
        }
        let (w_n, width_n) = axis_extent(f_n_hz * cfg.frame_shift_s, cfg.nu, cfg.max_time_frames);
        let (w_k, width_k) = axis_extent(f_k_cpc, cfg.nu, cfg.max_freq_channels);
        Ok(Self {
            f_n_hz,
            f_k_cpc,
            orientation,
            w_n,
            w_k,
            width_n,
            width_k,
            n0: w_n / 2,
            k0: w_k / 2,
        })
    }

    /// The pure DC filter averages a spectrogram patch.
    pub fn is_dc(&self) -> bool {
        self.f_n_hz == 0.0 && self.f_k_cpc == 0.0
    }

    pub fn is_capped_n(&self, cfg: &GfbConfig) -> bool {
        self.width_n >= cfg.max_time_frames as f64
    }

    pub fn is_capped_k(&self, cfg: &GfbConfig) -> bool {
        self.width_k >= cfg.max_freq_channels as f64
    }
}

/// A real 2D Gabor kernel, `w_k` rows (channels) by `w_n` columns (frames).
#[derive(Debug, Clone, PartialEq)]
pub struct GaborFilter {
    params: FilterParams,
    kernel: Array2<f64>,
    envelope_k: Vec<f64>,
    envelope_n: Vec<f64>,
}

impl GaborFilter {
    pub fn params(&self) -> &FilterParams {
        &self.params
    }

    pub fn kernel(&self) -> &Array2<f64> {
        &self.kernel
    }

    /// The unnormalized separable Hann envelope the kernel was built on.
    pub fn envelope(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.envelope_k.len(), self.envelope_n.len()), |(k, n)| {
            self.envelope_k[k] * self.envelope_n[n]
        })
    }

    /// Spectral and temporal factors of the envelope.
    pub fn envelope_factors(&self) -> (&[f64], &[f64]) {
        (&self.envelope_k, &self.envelope_n)
    }

    pub fn is_dc(&self) -> bool {
        self.params.is_dc()
    }

    /// Wraps an arbitrary odd-sized kernel and separable envelope, e.g. for tests.
    pub fn from_parts(
        params: FilterParams,
        kernel: Array2<f64>,
        envelope_k: Vec<f64>,
        envelope_n: Vec<f64>,
    ) -> Result<Self> {
        if kernel.dim() != (envelope_k.len(), envelope_n.len())
            || kernel.nrows().is_multiple_of(2)
            || kernel.ncols().is_multiple_of(2)
        {
            return Err(Error::Dimension(format!(
                "kernel {:?} and envelope {}x{} must share an odd shape",
                kernel.dim(),
                envelope_k.len(),
                envelope_n.len()
            )));
        }
        Ok(Self {
            params,
            kernel,
            envelope_k,
            envelope_n,
        })
    }
}

/// Hann window peaking at the support center: `0.5 (1 + cos(2 pi d / (width + 1)))`
/// for offsets `d` from the center. The support never exceeds `width + 1`, so
/// every sample is positive.
fn hann(support: usize, width: f64) -> Vec<f64> {
    let center = (support / 2) as f64;
    (0..support)
        .map(|i| 0.5 * (1.0 + (2.0 * PI * (i as f64 - center) / (width + 1.0)).cos()))
        .collect()
}

pub fn build_gabor_filter(p: &FilterParams, cfg: &GfbConfig) -> Result<GaborFilter> {
    let expected = FilterParams::new(p.f_n_hz, p.f_k_cpc, p.orientation, cfg)?;
    if expected != *p {
        return Err(Error::InvalidInput(format!(
            "filter parameters {p:?} are inconsistent with the configuration"
        )));
    }
    let env_n = hann(p.w_n, p.width_n);
    let env_k = hann(p.w_k, p.width_k);
    let omega_n = 2.0 * PI * p.f_n_hz * cfg.frame_shift_s;
    let omega_k = p.orientation.sign() * 2.0 * PI * p.f_k_cpc;

    let envelope = Array2::from_shape_fn((p.w_k, p.w_n), |(k, n)| env_k[k] * env_n[n]);
    let mut kernel = Array2::from_shape_fn((p.w_k, p.w_n), |(k, n)| {
        let dn = n as f64 - p.n0 as f64;
        let dk = k as f64 - p.k0 as f64;
        envelope[[k, n]] * (omega_n * dn + omega_k * dk).cos()
    });

    if !p.is_dc() {
        let ratio = kernel.sum() / envelope.sum();
        kernel.zip_mut_with(&envelope, |g, e| *g -= ratio * e);
    }
    let peak = peak_response(&kernel);
    kernel.mapv_inplace(|g| g / peak);

    Ok(GaborFilter {
        params: p.clone(),
        kernel,
        envelope_k: env_k,
        envelope_n: env_n,
    })
}

/// `|H(u, v)|` of the kernel's 2D DTFT at `u` cycles/channel, `v` cycles/frame.
pub fn dtft_magnitude(kernel: &Array2<f64>, u: f64, v: f64) -> f64 {
    let cols: Vec<Complex<f64>> = (0..kernel.ncols())
        .map(|n| Complex::from_polar(1.0, -2.0 * PI * v * n as f64))
        .collect();
    let mut acc = Complex::new(0.0, 0.0);
    for (k, row) in kernel.rows().into_iter().enumerate() {
        let inner: Complex<f64> = row.iter().zip(&cols).map(|(g, c)| c * g).sum();
        acc += inner * Complex::from_polar(1.0, -2.0 * PI * u * k as f64);
    }
    acc.norm()
}

const COARSE_GRID: usize = 256;

/// Maximum magnitude of the kernel's 2D frequency response: a zero-padded
/// FFT locates the peak, then a shrinking pattern search refines it on the
/// continuous DTFT.
pub fn peak_response(kernel: &Array2<f64>) -> f64 {
    let (rows, cols) = kernel.dim();
    let size = COARSE_GRID
        .max(rows.next_power_of_two())
        .max(cols.next_power_of_two());
    let mut grid = vec![Complex::new(0.0, 0.0); size * size];
    for ((k, n), &g) in kernel.indexed_iter() {
        grid[k * size + n] = Complex::new(g, 0.0);
    }
    fft2(&mut grid, size, size, false);
    let (best_idx, _) = grid
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.norm()))
        .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });

    let mut u = (best_idx / size) as f64 / size as f64;
    let mut v = (best_idx % size) as f64 / size as f64;
    let mut best = dtft_magnitude(kernel, u, v);
    let mut step = 1.0 / size as f64;
    let mut iterations = 0;
    while step > 1e-10 && iterations < 400 {
        iterations += 1;
        let mut moved = false;
        for du in [-1.0, 0.0, 1.0] {
            for dv in [-1.0, 0.0, 1.0] {
                if du == 0.0 && dv == 0.0 {
                    continue;
                }
                let (cu, cv) = (u + du * step, v + dv * step);
                let m = dtft_magnitude(kernel, cu, cv);
                if m > best {
                    best = m;
                    u = cu;
                    v = cv;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}
