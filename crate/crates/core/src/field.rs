//! Grid-sampled fields over a [`TorusGrid`] and their pseudo-spectral
//! calculus: d_z, d_zbar, quadrature, the periodic dbar solver and the
//! spectral tail diagnostic.
//!
//! Complex scalar fields carry values like c, kappa-components, b and rho;
//! vector fields carry lifts, frames and normal sections.

use crate::error::{Error, Result};
use crate::grid::TorusGrid;
use crate::minkowski::{cmink_inner, cmink_inner_rv, mink_inner, CMinkVec, MinkVec};
use crate::spectral::{
    apply_multiplier, dz_multiplier, dzbar_multiplier, fft2_forward, fft2_inverse,
    signed_mode_nyquist_zero,
};
use num_complex::Complex64;

/// Solvability tolerance of the dbar problem (relative mean of the rhs).
pub const DEFAULT_TOL_SOLV: f64 = 1e-8;
/// Guard against division by zero in the solvability ratio.
const SOLV_EPS: f64 = 1e-300;

/// Complex scalar field sampled on a torus grid (row-major in j, then k).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: TorusGrid,
    data: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self { grid, data: vec![Complex64::default(); grid.len()] }
    }

    pub fn constant(grid: TorusGrid, v: Complex64) -> Self {
        Self { grid, data: vec![v; grid.len()] }
    }

    pub fn from_fn<F: FnMut(f64, f64) -> Complex64>(grid: TorusGrid, mut f: F) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.n1() {
            let x = grid.x(j);
            for k in 0..grid.n2() {
                data.push(f(x, grid.y(k)));
            }
        }
        Self { grid, data }
    }

    pub fn from_data(grid: TorusGrid, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), grid.len());
        Self { grid, data }
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, j: usize, k: usize) -> Complex64 {
        self.data[self.grid.idx(j, k)]
    }

    #[inline]
    pub fn get(&self, idx: usize) -> Complex64 {
        self.data[idx]
    }

    pub fn map<F: FnMut(Complex64) -> Complex64>(&self, mut f: F) -> Self {
        Self { grid: self.grid, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip<F: FnMut(Complex64, Complex64) -> Complex64>(
        &self,
        other: &ScalarField,
        mut f: F,
    ) -> Self {
        assert!(self.grid == other.grid, "field grids differ");
        let data = self.data.iter().zip(other.data.iter()).map(|(&a, &b)| f(a, b)).collect();
        Self { grid: self.grid, data }
    }

    pub fn add(&self, other: &ScalarField) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ScalarField) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ScalarField) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn re_part(&self) -> Self {
        self.map(|v| Complex64::new(v.re, 0.0))
    }

    pub fn im_part(&self) -> Self {
        self.map(|v| Complex64::new(v.im, 0.0))
    }

    pub fn sup_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Complex64 {
        self.data.iter().sum::<Complex64>() / self.data.len() as f64
    }

    /// Quadrature with measure dx dy: spectrally exact for smooth periodic
    /// integrands, reduces to mean * P1 * P2.
    pub fn integrate(&self) -> Complex64 {
        self.mean() * self.grid.area()
    }

    fn derivative(&self, mult: fn(f64, f64) -> Complex64) -> Self {
        let mut data = self.data.clone();
        let (n1, n2) = (self.grid.n1(), self.grid.n2());
        fft2_forward(&mut data, n1, n2);
        apply_multiplier(&mut data, n1, n2, self.grid.p1(), self.grid.p2(), mult);
        fft2_inverse(&mut data, n1, n2);
        Self { grid: self.grid, data }
    }

    /// d_z = (d_x - i d_y)/2, exact on band-limited fields.
    pub fn d_z(&self) -> Self {
        self.derivative(dz_multiplier)
    }

    /// d_zbar = (d_x + i d_y)/2.
    pub fn d_zbar(&self) -> Self {
        self.derivative(dzbar_multiplier)
    }

    /// Solve d_z(u) = rhs in the zero-mean gauge by Fourier division.
    ///
    /// Fails with [`Error::Unsolvable`] when the rhs carries a mean beyond
    /// `tol`, which for the flow assembly signals a nonzero normal bundle
    /// degree.
    pub fn solve_dbar_with(&self, tol: f64) -> Result<ScalarField> {
        let ratio = self.integrate().norm() / (self.grid.area() * self.sup_norm() + SOLV_EPS);
        if ratio >= tol {
            return Err(Error::Unsolvable { ratio, tol });
        }
        let mut data = self.data.clone();
        let (n1, n2) = (self.grid.n1(), self.grid.n2());
        fft2_forward(&mut data, n1, n2);
        let tau = std::f64::consts::TAU;
        for a in 0..n1 {
            let m = signed_mode_nyquist_zero(a, n1);
            let xi = tau * m as f64 / self.grid.p1();
            for b in 0..n2 {
                let l = signed_mode_nyquist_zero(b, n2);
                let eta = tau * l as f64 / self.grid.p2();
                let mult = dz_multiplier(xi, eta);
                let v = &mut data[a * n2 + b];
                if mult.norm_sqr() == 0.0 {
                    *v = Complex64::default();
                } else {
                    *v /= mult;
                }
            }
        }
        fft2_inverse(&mut data, n1, n2);
        Ok(Self { grid: self.grid, data })
    }

    pub fn solve_dbar(&self) -> Result<ScalarField> {
        self.solve_dbar_with(DEFAULT_TOL_SOLV)
    }

    /// Fraction of spectral energy in the highest third of frequencies of
    /// either direction. Purely diagnostic.
    pub fn spectral_tail(&self) -> f64 {
        let mut data = self.data.clone();
        let (n1, n2) = (self.grid.n1(), self.grid.n2());
        fft2_forward(&mut data, n1, n2);
        let t1 = 2 * (n1 / 2) / 3 + 1;
        let t2 = 2 * (n2 / 2) / 3 + 1;
        let mut total = 0.0;
        let mut tail = 0.0;
        for a in 0..n1 {
            let m = crate::spectral::signed_mode(a, n1).unsigned_abs() as usize;
            for b in 0..n2 {
                let l = crate::spectral::signed_mode(b, n2).unsigned_abs() as usize;
                let e = data[a * n2 + b].norm_sqr();
                total += e;
                if m >= t1 || l >= t2 {
                    tail += e;
                }
            }
        }
        if total == 0.0 {
            0.0
        } else {
            tail / total
        }
    }
}

/// Real Minkowski-vector-valued field (lifts, frames, real normal sections).
#[derive(Debug, Clone, PartialEq)]
pub struct VecField {
    grid: TorusGrid,
    ncomp: usize,
    data: Vec<MinkVec>,
}

impl VecField {
    pub fn from_fn<F: FnMut(f64, f64) -> MinkVec>(grid: TorusGrid, mut f: F) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.n1() {
            let x = grid.x(j);
            for k in 0..grid.n2() {
                data.push(f(x, grid.y(k)));
            }
        }
        let ncomp = data[0].ncomp();
        assert!(data.iter().all(|v| v.ncomp() == ncomp));
        Self { grid, ncomp, data }
    }

    pub fn from_data(grid: TorusGrid, data: Vec<MinkVec>) -> Self {
        assert_eq!(data.len(), grid.len());
        let ncomp = data[0].ncomp();
        Self { grid, ncomp, data }
    }

    pub fn constant(grid: TorusGrid, v: MinkVec) -> Self {
        Self { grid, ncomp: v.ncomp(), data: vec![v; grid.len()] }
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    #[inline]
    pub fn data(&self) -> &[MinkVec] {
        &self.data
    }

    #[inline]
    pub fn get(&self, idx: usize) -> &MinkVec {
        &self.data[idx]
    }

    #[inline]
    pub fn at(&self, j: usize, k: usize) -> &MinkVec {
        &self.data[self.grid.idx(j, k)]
    }

    pub fn map<F: FnMut(&MinkVec) -> MinkVec>(&self, mut f: F) -> Self {
        let data: Vec<MinkVec> = self.data.iter().map(|v| f(v)).collect();
        let ncomp = data[0].ncomp();
        Self { grid: self.grid, ncomp, data }
    }

    pub fn zip<F: FnMut(&MinkVec, &MinkVec) -> MinkVec>(&self, other: &VecField, mut f: F) -> Self {
        assert!(self.grid == other.grid, "field grids differ");
        let data: Vec<MinkVec> =
            self.data.iter().zip(other.data.iter()).map(|(a, b)| f(a, b)).collect();
        let ncomp = data[0].ncomp();
        Self { grid: self.grid, ncomp, data }
    }

    pub fn add(&self, other: &VecField) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &VecField) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    /// Pointwise scaling by the real part of a scalar field.
    pub fn scale_field(&self, s: &ScalarField) -> Self {
        assert!(self.grid == *s.grid());
        let data = self
            .data
            .iter()
            .zip(s.data().iter())
            .map(|(v, c)| v.scale(c.re))
            .collect();
        Self { grid: self.grid, ncomp: self.ncomp, data }
    }

    /// Minkowski product field <self, other>.
    pub fn inner(&self, other: &VecField) -> ScalarField {
        assert!(self.grid == other.grid);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| Complex64::new(mink_inner(a, b), 0.0))
            .collect();
        ScalarField::from_data(self.grid, data)
    }

    pub fn inner_c(&self, other: &CVecField) -> ScalarField {
        assert!(self.grid == other.grid);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| cmink_inner_rv(a, b))
            .collect();
        ScalarField::from_data(self.grid, data)
    }

    pub fn to_complex(&self) -> CVecField {
        CVecField {
            grid: self.grid,
            ncomp: self.ncomp,
            data: self.data.iter().map(|v| v.to_complex()).collect(),
        }
    }

    /// Component-wise spectral derivative d_z (result is complex).
    pub fn d_z(&self) -> CVecField {
        self.vector_derivative(dz_multiplier)
    }

    pub fn d_zbar(&self) -> CVecField {
        self.vector_derivative(dzbar_multiplier)
    }

    fn vector_derivative(&self, mult: fn(f64, f64) -> Complex64) -> CVecField {
        let (n1, n2) = (self.grid.n1(), self.grid.n2());
        let mut out = CVecField {
            grid: self.grid,
            ncomp: self.ncomp,
            data: vec![CMinkVec::zeros(self.ncomp); self.data.len()],
        };
        let mut plane = vec![Complex64::default(); self.data.len()];
        for c in 0..self.ncomp {
            for (p, v) in plane.iter_mut().zip(self.data.iter()) {
                *p = Complex64::new(v.get(c), 0.0);
            }
            fft2_forward(&mut plane, n1, n2);
            apply_multiplier(&mut plane, n1, n2, self.grid.p1(), self.grid.p2(), mult);
            fft2_inverse(&mut plane, n1, n2);
            for (o, p) in out.data.iter_mut().zip(plane.iter()) {
                o.set(c, *p);
            }
        }
        out
    }

    pub fn sup_euclid_norm(&self) -> f64 {
        self.data.iter().map(|v| v.euclid_norm()).fold(0.0, f64::max)
    }
}

/// Complexified Minkowski-vector-valued field.
#[derive(Debug, Clone, PartialEq)]
pub struct CVecField {
    grid: TorusGrid,
    ncomp: usize,
    data: Vec<CMinkVec>,
}

impl CVecField {
    pub fn zeros(grid: TorusGrid, ncomp: usize) -> Self {
        Self { grid, ncomp, data: vec![CMinkVec::zeros(ncomp); grid.len()] }
    }

    pub fn from_data(grid: TorusGrid, data: Vec<CMinkVec>) -> Self {
        assert_eq!(data.len(), grid.len());
        let ncomp = data[0].ncomp();
        Self { grid, ncomp, data }
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    #[inline]
    pub fn data(&self) -> &[CMinkVec] {
        &self.data
    }

    #[inline]
    pub fn get(&self, idx: usize) -> &CMinkVec {
        &self.data[idx]
    }

    pub fn map<F: FnMut(&CMinkVec) -> CMinkVec>(&self, mut f: F) -> Self {
        let data: Vec<CMinkVec> = self.data.iter().map(|v| f(v)).collect();
        Self { grid: self.grid, ncomp: self.ncomp, data }
    }

    pub fn add(&self, other: &CVecField) -> Self {
        assert!(self.grid == other.grid);
        let data = self.data.iter().zip(other.data.iter()).map(|(a, b)| a.add(b)).collect();
        Self { grid: self.grid, ncomp: self.ncomp, data }
    }

    pub fn sub(&self, other: &CVecField) -> Self {
        assert!(self.grid == other.grid);
        let data = self.data.iter().zip(other.data.iter()).map(|(a, b)| a.sub(b)).collect();
        Self { grid: self.grid, ncomp: self.ncomp, data }
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn re(&self) -> VecField {
        VecField {
            grid: self.grid,
            ncomp: self.ncomp,
            data: self.data.iter().map(|v| v.re()).collect(),
        }
    }

    /// Pointwise multiplication by a scalar field.
    pub fn scale_field(&self, s: &ScalarField) -> Self {
        assert!(self.grid == *s.grid());
        let data =
            self.data.iter().zip(s.data().iter()).map(|(v, c)| v.scale(*c)).collect();
        Self { grid: self.grid, ncomp: self.ncomp, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v.scale(s))
    }

    /// Bilinear product field <self, other>.
    pub fn inner(&self, other: &CVecField) -> ScalarField {
        assert!(self.grid == other.grid);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| cmink_inner(a, b))
            .collect();
        ScalarField::from_data(self.grid, data)
    }

    pub fn inner_r(&self, other: &VecField) -> ScalarField {
        other.inner_c(self)
    }

    pub fn d_z(&self) -> Self {
        self.complex_derivative(dz_multiplier)
    }

    pub fn d_zbar(&self) -> Self {
        self.complex_derivative(dzbar_multiplier)
    }

    fn complex_derivative(&self, mult: fn(f64, f64) -> Complex64) -> Self {
        let (n1, n2) = (self.grid.n1(), self.grid.n2());
        let mut out = Self::zeros(self.grid, self.ncomp);
        let mut plane = vec![Complex64::default(); self.data.len()];
        for c in 0..self.ncomp {
            for (p, v) in plane.iter_mut().zip(self.data.iter()) {
                *p = v.get(c);
            }
            fft2_forward(&mut plane, n1, n2);
            apply_multiplier(&mut plane, n1, n2, self.grid.p1(), self.grid.p2(), mult);
            fft2_inverse(&mut plane, n1, n2);
            for (o, p) in out.data.iter_mut().zip(plane.iter()) {
                o.set(c, *p);
            }
        }
        out
    }

    pub fn sup_abs(&self) -> f64 {
        self.data.iter().map(|v| v.sup_abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn grid(n: usize) -> TorusGrid {
        TorusGrid::new(TAU, TAU, n, n).unwrap()
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = ScalarField::constant(grid(16), Complex64::new(2.5, -1.0));
        assert!(f.d_z().sup_norm() < 1e-14);
        assert!(f.d_zbar().sup_norm() < 1e-14);
    }

    #[test]
    fn dz_on_plane_waves() {
        let g = grid(32);
        // f = e^{ix}: d_z f = (i/2) e^{ix}
        let f = ScalarField::from_fn(g, |x, _| Complex64::from_polar(1.0, x));
        let want = f.scale(Complex64::new(0.0, 0.5));
        assert!(f.d_z().sub(&want).sup_norm() < 1e-12);
        // f = e^{iy}: d_z f = (1/2) e^{iy}
        let f = ScalarField::from_fn(g, |_, y| Complex64::from_polar(1.0, y));
        let want = f.scale(Complex64::new(0.5, 0.0));
        assert!(f.d_z().sub(&want).sup_norm() < 1e-12);
        // and d_zbar f = -(1/2) e^{iy}
        let want = f.scale(Complex64::new(-0.5, 0.0));
        assert!(f.d_zbar().sub(&want).sup_norm() < 1e-12);
    }

    #[test]
    fn derivatives_commute() {
        let g = grid(32);
        let f = ScalarField::from_fn(g, |x, y| {
            Complex64::new((2.0 * x).sin() * y.cos(), (x - 3.0 * y).cos())
        });
        let a = f.d_z().d_zbar();
        let b = f.d_zbar().d_z();
        assert!(a.sub(&b).sup_norm() < 1e-12 * (1.0 + a.sup_norm()));
    }

    #[test]
    fn product_rule() {
        let g = grid(64);
        let f = ScalarField::from_fn(g, |x, y| Complex64::new(x.sin() * y.cos(), (2.0 * y).sin()));
        let h = ScalarField::from_fn(g, |x, y| Complex64::new((x + y).cos(), x.sin()));
        let lhs = f.mul(&h).d_z();
        let rhs = f.d_z().mul(&h).add(&f.mul(&h.d_z()));
        assert!(lhs.sub(&rhs).sup_norm() < 1e-11);
    }

    #[test]
    fn integrate_examples() {
        let g = grid(32);
        let one = ScalarField::constant(g, Complex64::new(1.0, 0.0));
        assert!((one.integrate().re - 4.0 * PI * PI).abs() < 1e-12);

        let f = ScalarField::from_fn(g, |x, _| Complex64::from_polar(1.0, x));
        assert!(f.integrate().norm() < 1e-13);

        let c2 = ScalarField::from_fn(g, |x, _| Complex64::new(x.cos().powi(2), 0.0));
        assert!((c2.integrate().re - 2.0 * PI * PI).abs() < 1e-11);
    }

    #[test]
    fn integrate_of_derivative_vanishes() {
        let g = grid(32);
        let f = ScalarField::from_fn(g, |x, y| Complex64::new((x * 2.0).cos() + y.sin(), x.sin()));
        assert!(f.d_z().integrate().norm() < 1e-13);
    }

    #[test]
    fn solve_dbar_examples() {
        let g = grid(32);
        let zero = ScalarField::zeros(g);
        assert!(zero.solve_dbar().unwrap().sup_norm() < 1e-15);

        let rhs = ScalarField::from_fn(g, |x, _| Complex64::from_polar(1.0, x));
        let u = rhs.solve_dbar().unwrap();
        let want = rhs.scale(Complex64::new(0.0, -2.0));
        assert!(u.sub(&want).sup_norm() < 1e-12);
        // residual of the reconstruction
        assert!(u.d_z().sub(&rhs).sup_norm() < 1e-12);
        assert!(u.mean().norm() < 1e-13);

        let bad = ScalarField::constant(g, Complex64::new(1.0, 0.0));
        assert!(matches!(bad.solve_dbar(), Err(Error::Unsolvable { .. })));
    }

    #[test]
    fn solve_dbar_reconstructs_bandlimited() {
        let g = grid(32);
        let rhs = ScalarField::from_fn(g, |x, y| {
            Complex64::new((3.0 * x).sin() * (2.0 * y).cos(), (x + y).sin())
        });
        let u = rhs.solve_dbar().unwrap();
        let resid = u.d_z().sub(&rhs).sup_norm() / rhs.sup_norm();
        assert!(resid < 1e-12, "residual {resid:.3e}");
    }

    #[test]
    fn spectral_tail_cases() {
        let g = grid(64);
        let c = ScalarField::constant(g, Complex64::new(3.0, 0.0));
        assert_eq!(c.spectral_tail(), 0.0);

        let checker = ScalarField::from_fn(g, |x, y| {
            Complex64::new((32.0 * x).cos() * (32.0 * y).cos(), 0.0)
        });
        assert!(checker.spectral_tail() >= 0.99);

        let low = ScalarField::from_fn(g, |x, _| Complex64::from_polar(1.0, x));
        assert!(low.spectral_tail() < 1e-12);
    }

    #[test]
    fn vector_field_derivative() {
        let g = grid(16);
        let f = VecField::from_fn(g, |x, y| {
            MinkVec::new(&[1.0, x.cos(), x.sin(), y.cos(), y.sin()])
        });
        let fz = f.d_z();
        // d_z cos(x) = -sin(x)/2
        for j in 0..16 {
            for k in 0..16 {
                let x = g.x(j);
                let got = fz.get(g.idx(j, k)).get(1);
                let want = Complex64::new(-x.sin() / 2.0, 0.0);
                assert!((got - want).norm() < 1e-12);
            }
        }
    }
}
