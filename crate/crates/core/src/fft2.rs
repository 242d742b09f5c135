use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// In-place 2D FFT of a row-major `rows x cols` buffer.
pub(crate) fn fft2(data: &mut [Complex<f64>], rows: usize, cols: usize, inverse: bool) {
    debug_assert_eq!(data.len(), rows * cols);
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (
            planner.plan_fft_inverse(cols),
            planner.plan_fft_inverse(rows),
        )
    } else {
        (
            planner.plan_fft_forward(cols),
            planner.plan_fft_forward(rows),
        )
    };
    for row in data.chunks_exact_mut(cols) {
        row_fft.process(row);
    }
    let mut column = vec![Complex::new(0.0, 0.0); rows];
    for c in 0..cols {
        for r in 0..rows {
            column[r] = data[r * cols + c];
        }
        col_fft.process(&mut column);
        for r in 0..rows {
            data[r * cols + c] = column[r];
        }
    }
}
