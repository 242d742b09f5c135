use ndarray::{Array2, ArrayView2};
use rustfft::num_complex::Complex;

use crate::fft2::fft2;
use crate::gabor::GaborFilter;
use crate::mel::LogMelSpectrogram;

/// Channel-major copy of the input with `pad` replicated frames on each end.
fn pad_time(input: ArrayView2<f64>, pad_before: usize, pad_after: usize) -> Vec<Vec<f64>> {
    let frames = input.nrows();
    (0..input.ncols())
        .map(|c| {
            (0..frames + pad_before + pad_after)
                .map(|j| {
                    let t = j.saturating_sub(pad_before).min(frames - 1);
                    input[[t, c]]
                })
                .collect()
        })
        .collect()
}

/// Kernel rows that land on real channels when centered on `channel`.
fn valid_rows(channel: usize, k0: usize, w_k: usize, channels: usize) -> std::ops::Range<usize> {
    let lo = k0.saturating_sub(channel);
    let hi = (channels + k0 - channel).min(w_k);
    lo..hi.max(lo)
}

fn correlate_channel(
    padded: &[Vec<f64>],
    kernel: ArrayView2<f64>,
    channel: usize,
    out: &mut [f64],
) {
    let (w_k, w_n) = kernel.dim();
    let k0 = w_k / 2;
    out.iter_mut().for_each(|o| *o = 0.0);
    for k in valid_rows(channel, k0, w_k, padded.len()) {
        let src = &padded[channel + k - k0];
        let row = kernel.row(k);
        for (t, o) in out.iter_mut().enumerate() {
            *o += row
                .iter()
                .zip(&src[t..t + w_n])
                .map(|(a, b)| a * b)
                .sum::<f64>();
        }
    }
}

/// Same-size 2D correlation of a frames x channels `input` with a
/// channels x frames `kernel` centered on each output cell.
pub fn correlate_padded(input: &Array2<f64>, kernel: &Array2<f64>) -> Array2<f64> {
    let (frames, channels) = input.dim();
    let mut out = Array2::zeros((frames, channels));
    if frames == 0 || kernel.is_empty() {
        return out;
    }
    let n0 = kernel.ncols() / 2;
    let padded = pad_time(input.view(), n0, kernel.ncols() - 1 - n0);
    let mut column = vec![0.0; frames];
    for c in 0..channels {
        correlate_channel(&padded, kernel.view(), c, &mut column);
        out.column_mut(c)
            .iter_mut()
            .zip(&column)
            .for_each(|(o, v)| *o = *v);
    }
    out
}

/// FFT route to [`correlate_padded`]; agrees with it to rounding error.
pub fn correlate_padded_fft(input: &Array2<f64>, kernel: &Array2<f64>) -> Array2<f64> {
    let (frames, channels) = input.dim();
    if frames == 0 || kernel.is_empty() {
        return Array2::zeros((frames, channels));
    }
    let (w_k, w_n) = kernel.dim();
    let (k0, n0) = (w_k / 2, w_n / 2);
    let padded = pad_time(input.view(), n0, w_n - 1 - n0);
    // padded plane: channels (zero-extended) x frames (edge-replicated)
    let rows = channels + w_k - 1;
    let cols = frames + w_n - 1;
    let (fr, fc) = (rows.next_power_of_two(), cols.next_power_of_two());
    let mut plane = vec![Complex::new(0.0, 0.0); fr * fc];
    for (c, series) in padded.iter().enumerate() {
        for (j, &v) in series.iter().enumerate() {
            plane[(c + k0) * fc + j] = Complex::new(v, 0.0);
        }
    }
    // correlation = convolution with the flipped kernel
    let mut flipped = vec![Complex::new(0.0, 0.0); fr * fc];
    for ((k, n), &g) in kernel.indexed_iter() {
        flipped[(w_k - 1 - k) * fc + (w_n - 1 - n)] = Complex::new(g, 0.0);
    }
    fft2(&mut plane, fr, fc, false);
    fft2(&mut flipped, fr, fc, false);
    plane.iter_mut().zip(&flipped).for_each(|(a, b)| *a *= b);
    fft2(&mut plane, fr, fc, true);
    let scale = 1.0 / (fr * fc) as f64;
    Array2::from_shape_fn((frames, channels), |(t, c)| {
        plane[(c + w_k - 1) * fc + (t + w_n - 1)].re * scale
    })
}

/// Filter output at the listed channels, frames x `channels.len()`.
///
/// Near the spectral edges part of the kernel hangs over zero padding, which
/// would leak the input's mean into zero-mean filters. Each output channel
/// therefore removes the envelope-weighted local mean in proportion to the
/// DC gain of the kernel rows that are actually in range. The DC filter is
/// instead rescaled by its in-range mass, so a constant input passes through
/// at the filter's interior gain.
pub fn filter_channels(
    input: &Array2<f64>,
    filter: &GaborFilter,
    channels: &[usize],
) -> Array2<f64> {
    let (frames, n_channels) = input.dim();
    let mut out = Array2::zeros((frames, channels.len()));
    if frames == 0 {
        return out;
    }
    let kernel = filter.kernel();
    let (w_k, w_n) = kernel.dim();
    let (k0, n0) = (w_k / 2, w_n / 2);
    let padded = pad_time(input.view(), n0, w_n - 1 - n0);
    let (env_k, env_n) = filter.envelope_factors();
    let env_n_sum: f64 = env_n.iter().sum();
    let row_sums: Vec<f64> = kernel.rows().into_iter().map(|r| r.sum()).collect();
    let total: f64 = row_sums.iter().sum();

    // temporally smoothed input, shared by all output channels
    let smoothed: Vec<Vec<f64>> = if filter.is_dc() {
        Vec::new()
    } else {
        padded
            .iter()
            .map(|series| {
                (0..frames)
                    .map(|t| {
                        env_n
                            .iter()
                            .zip(&series[t..t + w_n])
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    };

    let mut column = vec![0.0; frames];
    for (j, &c) in channels.iter().enumerate() {
        correlate_channel(&padded, kernel.view(), c, &mut column);
        let rows = valid_rows(c, k0, w_k, n_channels);
        let kernel_mass: f64 = row_sums[rows.clone()].iter().sum();
        if filter.is_dc() {
            let gain = if kernel_mass != 0.0 {
                total / kernel_mass
            } else {
                0.0
            };
            column.iter_mut().for_each(|v| *v *= gain);
        } else {
            let env_mass: f64 = env_k[rows.clone()].iter().sum::<f64>() * env_n_sum;
            let ratio = if env_mass != 0.0 {
                kernel_mass / env_mass
            } else {
                0.0
            };
            for (t, v) in column.iter_mut().enumerate() {
                let local: f64 = rows
                    .clone()
                    .map(|k| env_k[k] * smoothed[c + k - k0][t])
                    .sum();
                *v -= ratio * local;
            }
        }
        out.column_mut(j)
            .iter_mut()
            .zip(&column)
            .for_each(|(o, v)| *o = *v);
    }
    out
}

/// Full frames x channels response of one Gabor filter.
pub fn convolve2d(spec: &LogMelSpectrogram, filter: &GaborFilter) -> Array2<f64> {
    let all: Vec<usize> = (0..spec.n_channels()).collect();
    filter_channels(spec.values(), filter, &all)
}
