//! Uniform-grid Fourier projection of periodic samples.

use std::f64::consts::PI;

use rustfft::{num_complex::Complex64, FftPlanner};

use crate::error::{Error, Result};

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Real coefficients `(a_n, b_n)` for `n = 1 .. M/2 − 1` of samples taken at
/// `φ_j = 2πj/M`.
pub fn spectrum(samples: &[f64]) -> Vec<(f64, f64)> {
    let m = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 2.0 / m as f64;
    (1..m.div_ceil(2))
        .map(|n| (scale * buf[n].re, -scale * buf[n].im))
        .collect()
}

/// Projection of `f` onto `n_modes` Fourier modes.
///
/// Returns `(a0, modes)`. Fails when the largest pointwise residual of the
/// truncated series on the sampling grid exceeds `rel_limit` times `max |f|`.
pub fn project<F: Fn(f64) -> f64>(
    f: F,
    n_modes: usize,
    rel_limit: f64,
) -> Result<(f64, Vec<(f64, f64)>)> {
    let m = 1024.max(16 * n_modes);
    let grid: Vec<f64> = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
    let samples: Vec<f64> = grid.iter().map(|&p| f(p)).collect();
    let a0 = mean(&samples);
    let mut modes = spectrum(&samples);
    modes.truncate(n_modes);

    let scale = samples.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
    let residual = grid
        .iter()
        .zip(&samples)
        .map(|(&p, &s)| (series(a0, &modes, p) - s).abs())
        .fold(0.0, f64::max)
        / scale;
    if residual > rel_limit {
        return Err(Error::InsufficientModes { residual, limit: rel_limit });
    }
    // coefficients at round-off level carry no information
    for m in modes.iter_mut() {
        if m.0.abs() < 1e-17 * scale {
            m.0 = 0.0;
        }
        if m.1.abs() < 1e-17 * scale {
            m.1 = 0.0;
        }
    }
    Ok((a0, modes))
}

fn series(a0: f64, modes: &[(f64, f64)], phi: f64) -> f64 {
    modes
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let (s, c) = ((i + 1) as f64 * phi).sin_cos();
            a * c + b * s
        })
        .sum::<f64>()
        + a0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_trigonometric_polynomial() {
        let f = |p: f64| 2.0 + 0.3 * (2.0 * p).cos() - 0.1 * (5.0 * p).sin();
        let (a0, modes) = project(f, 8, 1e-12).unwrap();
        assert!((a0 - 2.0).abs() < 1e-14);
        assert!((modes[1].0 - 0.3).abs() < 1e-14);
        assert!((modes[4].1 + 0.1).abs() < 1e-14);
        assert!(modes[0].0.abs() < 1e-14);
    }

    #[test]
    fn truncation_is_reported() {
        let f = |p: f64| 1.0 + 0.5 * (20.0 * p).cos();
        assert!(matches!(project(f, 8, 1e-8), Err(Error::InsufficientModes { .. })));
    }
}
