//! 2D FFT machinery shared by the field calculus: plan caching, transforms
//! and Fourier multipliers for the torus derivatives d_z and d_zbar.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

struct PlanCache {
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

fn cache() -> &'static Mutex<PlanCache> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(PlanCache { forward: HashMap::new(), inverse: HashMap::new() })
    })
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = cache().lock().expect("fft plan cache poisoned");
    let map = if inverse { &mut guard.inverse } else { &mut guard.forward };
    map.entry(len)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

/// In-place forward 2D FFT of row-major n1 x n2 data (row index = first axis).
/// Unnormalized, matching the usual DFT convention.
pub fn fft2_forward(data: &mut [Complex64], n1: usize, n2: usize) {
    debug_assert_eq!(data.len(), n1 * n2);
    let row_fft = plan(n2, false);
    for row in data.chunks_exact_mut(n2) {
        row_fft.process(row);
    }
    let col_fft = plan(n1, false);
    let mut scratch = vec![Complex64::default(); n1];
    for col in 0..n2 {
        for j in 0..n1 {
            scratch[j] = data[j * n2 + col];
        }
        col_fft.process(&mut scratch);
        for j in 0..n1 {
            data[j * n2 + col] = scratch[j];
        }
    }
}

/// In-place inverse 2D FFT, normalized by 1/(n1*n2).
pub fn fft2_inverse(data: &mut [Complex64], n1: usize, n2: usize) {
    debug_assert_eq!(data.len(), n1 * n2);
    let row_fft = plan(n2, true);
    for row in data.chunks_exact_mut(n2) {
        row_fft.process(row);
    }
    let col_fft = plan(n1, true);
    let mut scratch = vec![Complex64::default(); n1];
    for col in 0..n2 {
        for j in 0..n1 {
            scratch[j] = data[j * n2 + col];
        }
        col_fft.process(&mut scratch);
        for j in 0..n1 {
            data[j * n2 + col] = scratch[j];
        }
    }
    let scale = 1.0 / (n1 * n2) as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// Signed mode index of FFT bin `a` on an axis of even length `n`, with the
/// Nyquist bin mapped to 0 so that odd-order derivatives kill it.
#[inline]
pub fn signed_mode_nyquist_zero(a: usize, n: usize) -> i64 {
    let half = n / 2;
    if a == half {
        0
    } else if a > half {
        a as i64 - n as i64
    } else {
        a as i64
    }
}

/// Signed mode index without Nyquist special-casing (used in diagnostics).
#[inline]
pub fn signed_mode(a: usize, n: usize) -> i64 {
    let half = n / 2;
    if a > half {
        a as i64 - n as i64
    } else {
        a as i64
    }
}

/// Multiplier of d_z = (d_x - i d_y)/2 on the mode e^{i(xi x + eta y)}.
#[inline]
pub fn dz_multiplier(xi: f64, eta: f64) -> Complex64 {
    Complex64::new(eta / 2.0, xi / 2.0)
}

/// Multiplier of d_zbar = (d_x + i d_y)/2.
#[inline]
pub fn dzbar_multiplier(xi: f64, eta: f64) -> Complex64 {
    Complex64::new(-eta / 2.0, xi / 2.0)
}

/// Apply a multiplier in mode space: data must already hold FFT coefficients.
pub fn apply_multiplier<F>(data: &mut [Complex64], n1: usize, n2: usize, p1: f64, p2: f64, f: F)
where
    F: Fn(f64, f64) -> Complex64,
{
    let tau = std::f64::consts::TAU;
    for a in 0..n1 {
        let m = signed_mode_nyquist_zero(a, n1);
        let xi = tau * m as f64 / p1;
        for b in 0..n2 {
            let l = signed_mode_nyquist_zero(b, n2);
            let eta = tau * l as f64 / p2;
            data[a * n2 + b] *= f(xi, eta);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let n1 = 8;
        let n2 = 4;
        let orig: Vec<Complex64> = (0..n1 * n2)
            .map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let mut data = orig.clone();
        fft2_forward(&mut data, n1, n2);
        fft2_inverse(&mut data, n1, n2);
        for (a, b) in data.iter().zip(orig.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn single_mode_coefficient() {
        let n1 = 8;
        let n2 = 8;
        // f = e^{2 pi i (3 j / n1)} constant in the second axis
        let mut data: Vec<Complex64> = (0..n1 * n2)
            .map(|i| {
                let j = i / n2;
                Complex64::from_polar(1.0, std::f64::consts::TAU * 3.0 * j as f64 / n1 as f64)
            })
            .collect();
        fft2_forward(&mut data, n1, n2);
        for a in 0..n1 {
            for b in 0..n2 {
                let want = if a == 3 && b == 0 { (n1 * n2) as f64 } else { 0.0 };
                assert!((data[a * n2 + b] - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
    }
}
