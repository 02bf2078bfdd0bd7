//! Rectangular periodic sampling lattice for the torus T^2 = C / (P1 Z + i P2 Z).
//!
//! Sample points are x_j = j P1/N1, y_k = k P2/N2 with even resolutions so
//! that Nyquist handling in the spectral calculus is unambiguous. Fields are
//! stored row-major in j (x-direction first).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGrid {
    p1: f64,
    p2: f64,
    n1: usize,
    n2: usize,
}

impl TorusGrid {
    pub fn new(p1: f64, p2: f64, n1: usize, n2: usize) -> Result<Self> {
        if !(p1 > 0.0 && p2 > 0.0) || !p1.is_finite() || !p2.is_finite() {
            return Err(Error::InvalidParameter(format!("periods must be positive, got {p1}, {p2}")));
        }
        if n1 == 0 || n2 == 0 || n1 % 2 != 0 || n2 % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "resolutions must be even and positive, got {n1}x{n2}"
            )));
        }
        Ok(Self { p1, p2, n1, n2 })
    }

    #[inline]
    pub fn p1(&self) -> f64 {
        self.p1
    }

    #[inline]
    pub fn p2(&self) -> f64 {
        self.p2
    }

    #[inline]
    pub fn n1(&self) -> usize {
        self.n1
    }

    #[inline]
    pub fn n2(&self) -> usize {
        self.n2
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn area(&self) -> f64 {
        self.p1 * self.p2
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.p1 / self.n1 as f64
    }

    #[inline]
    pub fn y(&self, k: usize) -> f64 {
        k as f64 * self.p2 / self.n2 as f64
    }

    #[inline]
    pub fn idx(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < self.n1 && k < self.n2);
        j * self.n2 + k
    }

    /// Same samples reinterpreted with rescaled periods (coordinate
    /// relabeling x -> s1 x, y -> s2 y; no resampling happens).
    pub fn with_scaled_periods(&self, s1: f64, s2: f64) -> Result<TorusGrid> {
        TorusGrid::new(self.p1 * s1, self.p2 * s2, self.n1, self.n2)
    }

    pub fn same_shape(&self, other: &TorusGrid) -> bool {
        self.n1 == other.n1 && self.n2 == other.n2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_resolution() {
        assert!(TorusGrid::new(1.0, 1.0, 7, 8).is_err());
        assert!(TorusGrid::new(1.0, 1.0, 8, 8).is_ok());
        assert!(TorusGrid::new(-1.0, 1.0, 8, 8).is_err());
    }

    #[test]
    fn sample_points() {
        let g = TorusGrid::new(2.0, 4.0, 4, 8).unwrap();
        assert_eq!(g.x(1), 0.5);
        assert_eq!(g.y(2), 1.0);
        assert_eq!(g.idx(1, 2), 10);
    }
}
