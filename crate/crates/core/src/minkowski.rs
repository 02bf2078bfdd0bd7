//! Linear algebra of Minkowski space R^{n+1,1} (n = 3 or 4), the projective
//! lightcone model of the conformal n-sphere, and the Lorentz (Möbius) action.
//!
//! Vectors carry n+2 coordinates with index 0 timelike, so the inner product
//! is <v,w> = -v0*w0 + sum_{i>=1} vi*wi. Points of S^n are rays of future
//! pointing null vectors.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance for membership in the lightcone.
pub const TOL_LIGHT: f64 = 1e-10;
/// Tolerance for M^T G M = G of a Lorentz map.
pub const TOL_ORTH: f64 = 1e-12;

pub const MAX_COMPONENTS: usize = 6;

/// A vector of R^{n+1,1}, n+2 components, index 0 timelike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkVec {
    coords: [f64; MAX_COMPONENTS],
    ncomp: usize,
}

impl MinkVec {
    pub fn new(coords: &[f64]) -> Self {
        assert!(
            coords.len() == 5 || coords.len() == 6,
            "MinkVec needs 5 or 6 components, got {}",
            coords.len()
        );
        let mut c = [0.0; MAX_COMPONENTS];
        c[..coords.len()].copy_from_slice(coords);
        Self { coords: c, ncomp: coords.len() }
    }

    pub fn zeros(ncomp: usize) -> Self {
        assert!(ncomp == 5 || ncomp == 6);
        Self { coords: [0.0; MAX_COMPONENTS], ncomp }
    }

    /// Standard basis vector e_i.
    pub fn basis(ncomp: usize, i: usize) -> Self {
        let mut v = Self::zeros(ncomp);
        v.coords[i] = 1.0;
        v
    }

    #[inline]
    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    /// Sphere dimension tag n (3 for R^{4,1}, 4 for R^{5,1}).
    #[inline]
    pub fn sphere_dim(&self) -> usize {
        self.ncomp - 2
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.ncomp]
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        debug_assert!(i < self.ncomp);
        self.coords[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: f64) {
        debug_assert!(i < self.ncomp);
        self.coords[i] = v;
    }

    #[inline]
    pub fn add(&self, other: &MinkVec) -> MinkVec {
        debug_assert_eq!(self.ncomp, other.ncomp);
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] += other.coords[i];
        }
        out
    }

    #[inline]
    pub fn sub(&self, other: &MinkVec) -> MinkVec {
        debug_assert_eq!(self.ncomp, other.ncomp);
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] -= other.coords[i];
        }
        out
    }

    #[inline]
    pub fn scale(&self, s: f64) -> MinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] *= s;
        }
        out
    }

    /// v + s*w, fused for the hot paths.
    #[inline]
    pub fn add_scaled(&self, w: &MinkVec, s: f64) -> MinkVec {
        debug_assert_eq!(self.ncomp, w.ncomp);
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] += s * w.coords[i];
        }
        out
    }

    /// Euclidean norm of the coordinate tuple (not the Minkowski norm).
    pub fn euclid_norm(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Relative lightcone residual |<v,v>| / |v|_E^2.
    pub fn lightcone_residual(&self) -> f64 {
        let e2 = self.coords().iter().map(|c| c * c).sum::<f64>();
        if e2 == 0.0 {
            return f64::INFINITY;
        }
        mink_inner(self, self).abs() / e2
    }

    pub fn is_lightcone_point(&self) -> bool {
        self.coords[0] > 0.0 && self.lightcone_residual() <= TOL_LIGHT
    }

    /// Append a trailing zero coordinate (R^{4,1} into R^{5,1}).
    pub fn extend_zero(&self) -> MinkVec {
        assert_eq!(self.ncomp, 5, "can only extend a 5-component vector");
        let mut out = *self;
        out.ncomp = 6;
        out.coords[5] = 0.0;
        out
    }

    pub fn to_complex(&self) -> CMinkVec {
        let mut out = CMinkVec::zeros(self.ncomp);
        for i in 0..self.ncomp {
            out.coords[i] = Complex64::new(self.coords[i], 0.0);
        }
        out
    }
}

/// Minkowski inner product <v,w> = -v0*w0 + sum vi*wi.
#[inline]
pub fn mink_inner(v: &MinkVec, w: &MinkVec) -> f64 {
    debug_assert_eq!(v.ncomp, w.ncomp, "mink_inner: dimension mismatch");
    let mut s = -v.coords[0] * w.coords[0];
    for i in 1..v.ncomp {
        s += v.coords[i] * w.coords[i];
    }
    s
}

/// Checked variant of [`mink_inner`] for external callers.
pub fn mink_inner_checked(v: &MinkVec, w: &MinkVec) -> Result<f64> {
    if v.ncomp != w.ncomp {
        return Err(Error::DimensionMismatch(format!(
            "inner product of {}- and {}-component vectors",
            v.ncomp, w.ncomp
        )));
    }
    Ok(mink_inner(v, w))
}

/// Complexified Minkowski vector (for psi_z, kappa and friends).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMinkVec {
    coords: [Complex64; MAX_COMPONENTS],
    ncomp: usize,
}

impl CMinkVec {
    pub fn zeros(ncomp: usize) -> Self {
        Self { coords: [Complex64::new(0.0, 0.0); MAX_COMPONENTS], ncomp }
    }

    #[inline]
    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.coords[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: Complex64) {
        self.coords[i] = v;
    }

    #[inline]
    pub fn add(&self, other: &CMinkVec) -> CMinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] += other.coords[i];
        }
        out
    }

    #[inline]
    pub fn sub(&self, other: &CMinkVec) -> CMinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] -= other.coords[i];
        }
        out
    }

    #[inline]
    pub fn scale(&self, s: Complex64) -> CMinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] *= s;
        }
        out
    }

    #[inline]
    pub fn add_scaled(&self, w: &CMinkVec, s: Complex64) -> CMinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] += s * w.coords[i];
        }
        out
    }

    #[inline]
    pub fn conj(&self) -> CMinkVec {
        let mut out = *self;
        for i in 0..self.ncomp {
            out.coords[i] = out.coords[i].conj();
        }
        out
    }

    #[inline]
    pub fn re(&self) -> MinkVec {
        let mut out = MinkVec::zeros(self.ncomp);
        for i in 0..self.ncomp {
            out.coords[i] = self.coords[i].re;
        }
        out
    }

    #[inline]
    pub fn im(&self) -> MinkVec {
        let mut out = MinkVec::zeros(self.ncomp);
        for i in 0..self.ncomp {
            out.coords[i] = self.coords[i].im;
        }
        out
    }

    pub fn sup_abs(&self) -> f64 {
        self.coords[..self.ncomp].iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Bilinear extension of the Minkowski product to complexified vectors.
/// Note this is bilinear, not hermitian: conjugate explicitly where needed.
#[inline]
pub fn cmink_inner(v: &CMinkVec, w: &CMinkVec) -> Complex64 {
    debug_assert_eq!(v.ncomp, w.ncomp, "cmink_inner: dimension mismatch");
    let mut s = -v.coords[0] * w.coords[0];
    for i in 1..v.ncomp {
        s += v.coords[i] * w.coords[i];
    }
    s
}

/// Mixed real/complex product.
#[inline]
pub fn cmink_inner_rv(v: &MinkVec, w: &CMinkVec) -> Complex64 {
    debug_assert_eq!(v.ncomp, w.ncomp);
    let mut s = -v.coords[0] * w.coords[0];
    for i in 1..v.ncomp {
        s += v.coords[i] * w.coords[i];
    }
    s
}

/// Lift of a unit vector x in R^{n+1} to the lightcone: (1, x).
pub fn sphere_lift(x: &[f64]) -> Result<MinkVec> {
    let norm2: f64 = x.iter().map(|c| c * c).sum();
    if (norm2 - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidParameter(format!(
            "sphere_lift input is not a unit vector: |x|^2 = {norm2:.12}"
        )));
    }
    let mut coords = Vec::with_capacity(x.len() + 1);
    coords.push(1.0);
    coords.extend_from_slice(x);
    Ok(MinkVec::new(&coords))
}

/// Lift of x in R^n to the lightcone: ((1+|x|^2)/2, x, (1-|x|^2)/2).
pub fn stereo_lift(x: &[f64]) -> MinkVec {
    let norm2: f64 = x.iter().map(|c| c * c).sum();
    let mut coords = Vec::with_capacity(x.len() + 2);
    coords.push((1.0 + norm2) / 2.0);
    coords.extend_from_slice(x);
    coords.push((1.0 - norm2) / 2.0);
    MinkVec::new(&coords)
}

/// A Lorentz transformation in the identity component O_o(n+1,1):
/// M^T G M = G, M00 > 0, det M = +1. Acts on lifts pointwise.
#[derive(Debug, Clone)]
pub struct LorentzMap {
    mat: Vec<f64>, // row-major size x size
    size: usize,
}

impl LorentzMap {
    pub fn identity(ncomp: usize) -> Self {
        let mut mat = vec![0.0; ncomp * ncomp];
        for i in 0..ncomp {
            mat[i * ncomp + i] = 1.0;
        }
        Self { mat, size: ncomp }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        if !(size == 5 || size == 6) || rows.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch("LorentzMap must be 5x5 or 6x6".into()));
        }
        let mut mat = Vec::with_capacity(size * size);
        for r in rows {
            mat.extend_from_slice(r);
        }
        let m = Self { mat, size };
        m.validate()?;
        Ok(m)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.mat[i * self.size + j]
    }

    /// Rotation by angle in the (i,j) coordinate plane (spatial indices).
    pub fn rotation(ncomp: usize, i: usize, j: usize, angle: f64) -> Self {
        assert!(i >= 1 && j >= 1 && i != j && i < ncomp && j < ncomp, "spatial plane required");
        let mut m = Self::identity(ncomp);
        let (s, c) = angle.sin_cos();
        m.mat[i * ncomp + i] = c;
        m.mat[j * ncomp + j] = c;
        m.mat[i * ncomp + j] = -s;
        m.mat[j * ncomp + i] = s;
        m
    }

    /// Boost of given rapidity in the plane spanned by e0 and a unit spatial
    /// direction u (u[0] ignored, spatial part normalized by the caller).
    pub fn boost(ncomp: usize, u: &[f64], rapidity: f64) -> Self {
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Self::identity(ncomp);
        // Columns: image of e0 and of spatial basis vectors.
        // M v = v + ((ch-1) t + sh p) e0 + ((ch-1) p + sh t) u,
        // with t = v0, p = u . v_spatial.
        for j in 0..ncomp {
            let t = if j == 0 { 1.0 } else { 0.0 };
            let p = if j == 0 { 0.0 } else { u[j] };
            m.mat[j] += (ch - 1.0) * t + sh * p; // row 0, column j
            for i in 1..ncomp {
                m.mat[i * ncomp + j] += ((ch - 1.0) * p + sh * t) * u[i];
            }
        }
        m
    }

    pub fn compose(&self, other: &LorentzMap) -> LorentzMap {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut mat = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    mat[i * n + j] += a * other.at(k, j);
                }
            }
        }
        LorentzMap { mat, size: n }
    }

    /// Sup-norm of M^T G M - G.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.size;
        let sig = |i: usize| if i == 0 { -1.0 } else { 1.0 };
        let mut defect: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.at(k, i) * sig(k) * self.at(k, j);
                }
                let want = if i == j { sig(i) } else { 0.0 };
                defect = defect.max((s - want).abs());
            }
        }
        defect
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.orthogonality_defect();
        if defect > TOL_ORTH {
            return Err(Error::InvalidParameter(format!(
                "matrix is not Lorentz: |M^T G M - G| = {defect:.3e}"
            )));
        }
        if self.at(0, 0) <= 0.0 {
            return Err(Error::InvalidParameter("Lorentz map reverses time orientation".into()));
        }
        Ok(())
    }

    pub fn apply(&self, v: &MinkVec) -> Result<MinkVec> {
        if v.ncomp() != self.size {
            return Err(Error::DimensionMismatch(format!(
                "applying {0}x{0} map to {1}-component vector",
                self.size,
                v.ncomp()
            )));
        }
        let mut out = MinkVec::zeros(self.size);
        for i in 0..self.size {
            let mut s = 0.0;
            for j in 0..self.size {
                s += self.at(i, j) * v.get(j);
            }
            out.set(i, s);
        }
        Ok(out)
    }

    /// True when the map fixes the final coordinate axis (block diagonal),
    /// so that it restricts to the 3-sphere slice.
    pub fn fixes_last_axis(&self) -> bool {
        let n = self.size;
        let last = n - 1;
        let mut ok = (self.at(last, last) - 1.0).abs() < 1e-12;
        for i in 0..last {
            ok &= self.at(i, last).abs() < 1e-12 && self.at(last, i).abs() < 1e-12;
        }
        ok
    }
}

/// Deterministic pseudo-random element of O_o(n+1,1): a product of random
/// spatial plane rotations followed by one boost of rapidity <= bound.
pub fn random_lorentz(ncomp: usize, seed: u64, rapidity_bound: f64) -> LorentzMap {
    assert!(rapidity_bound >= 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = LorentzMap::identity(ncomp);
    // Rotations over all spatial coordinate planes, random angles.
    for i in 1..ncomp {
        for j in (i + 1)..ncomp {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            m = LorentzMap::rotation(ncomp, i, j, angle).compose(&m);
        }
    }
    if rapidity_bound > 0.0 {
        let mut u = vec![0.0; ncomp];
        let mut norm2 = 0.0;
        for ui in u.iter_mut().skip(1) {
            // Box-Muller keeps the direction rotation invariant.
            let a: f64 = rng.gen_range(1e-12..1.0);
            let b: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            *ui = (-2.0 * a.ln()).sqrt() * b.cos();
            norm2 += *ui * *ui;
        }
        let norm = norm2.sqrt();
        for ui in u.iter_mut().skip(1) {
            *ui /= norm;
        }
        let s = rng.gen_range(0.0..=rapidity_bound);
        m = LorentzMap::boost(ncomp, &u, s).compose(&m);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_signature() {
        let e0 = MinkVec::basis(5, 0);
        let e1 = MinkVec::basis(5, 1);
        assert_eq!(mink_inner(&e0, &e0), -1.0);
        assert_eq!(mink_inner(&e1, &e1), 1.0);
        let null = e0.add(&e1);
        assert_eq!(mink_inner(&null, &null), 0.0);
    }

    #[test]
    fn inner_symmetric_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let v = MinkVec::new(&std::array::from_fn::<f64, 5, _>(|_| rng.gen_range(-2.0..2.0)));
            let w = MinkVec::new(&std::array::from_fn::<f64, 5, _>(|_| rng.gen_range(-2.0..2.0)));
            let u = MinkVec::new(&std::array::from_fn::<f64, 5, _>(|_| rng.gen_range(-2.0..2.0)));
            let (a, b) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!((mink_inner(&v, &w) - mink_inner(&w, &v)).abs() < 1e-14);
            let lin = mink_inner(&v.scale(a).add(&u.scale(b)), &w);
            let expanded = a * mink_inner(&v, &w) + b * mink_inner(&u, &w);
            assert!((lin - expanded).abs() < 1e-12);
        }
    }

    #[test]
    fn inner_dimension_mismatch() {
        let v = MinkVec::zeros(5);
        let w = MinkVec::zeros(6);
        assert!(mink_inner_checked(&v, &w).is_err());
    }

    #[test]
    fn sphere_lift_examples() {
        let v = sphere_lift(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(v.coords(), &[1.0, 1.0, 0.0, 0.0, 0.0]);
        let v = sphere_lift(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(v.coords(), &[1.0, 0.0, 0.0, 0.0, 1.0]);
        let x = [0.5, 0.5, 0.5, 0.5];
        let v = sphere_lift(&x).unwrap();
        assert!(mink_inner(&v, &v).abs() < 1e-15);
        assert!(sphere_lift(&[0.5, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn stereo_lift_examples() {
        let v = stereo_lift(&[0.0, 0.0, 0.0]);
        assert_eq!(v.coords(), &[0.5, 0.0, 0.0, 0.0, 0.5]);
        let v = stereo_lift(&[1.0, 0.0, 0.0]);
        assert_eq!(v.get(4), 0.0);
        let v = stereo_lift(&[0.3, -1.2, 2.0]);
        assert!(mink_inner(&v, &v).abs() < 1e-15);
        assert!(v.get(0) > 0.0);
    }

    #[test]
    fn lorentz_identity_and_rotation() {
        let id = LorentzMap::identity(5);
        let v = MinkVec::new(&[2.0, 1.0, -1.0, 0.5, 0.0]);
        assert_eq!(id.apply(&v).unwrap(), v);

        let rot = LorentzMap::rotation(5, 1, 2, std::f64::consts::FRAC_PI_2);
        let e1 = MinkVec::basis(5, 1);
        let img = rot.apply(&e1).unwrap();
        let e2 = MinkVec::basis(5, 2);
        assert!(img.sub(&e2).euclid_norm() < 1e-15);
    }

    #[test]
    fn boost_preserves_inner() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = [0.0, 1.0, 0.0, 0.0, 0.0];
        let b = LorentzMap::boost(5, &u, 0.7);
        b.validate().unwrap();
        for _ in 0..100 {
            let v = MinkVec::new(&std::array::from_fn::<f64, 5, _>(|_| rng.gen_range(-2.0..2.0)));
            let w = MinkVec::new(&std::array::from_fn::<f64, 5, _>(|_| rng.gen_range(-2.0..2.0)));
            let lhs = mink_inner(&b.apply(&v).unwrap(), &b.apply(&w).unwrap());
            assert!((lhs - mink_inner(&v, &w)).abs() < 1e-11);
        }
    }

    #[test]
    fn random_lorentz_contracts() {
        // bound = 0 gives a pure rotation.
        let m = random_lorentz(6, 11, 0.0);
        assert!((m.at(0, 0) - 1.0).abs() < 1e-14);

        // determinism in the seed
        let a = random_lorentz(6, 42, 1.0);
        let b = random_lorentz(6, 42, 1.0);
        assert_eq!(a.mat, b.mat);

        for seed in 0..20 {
            let m = random_lorentz(5, seed, 1.5);
            assert!(m.orthogonality_defect() < 1e-12, "seed {seed}");
            assert!(m.at(0, 0) > 0.0);
        }
    }

    #[test]
    fn lorentz_maps_lightcone_to_lightcone() {
        let m = random_lorentz(5, 5, 0.8);
        let v = stereo_lift(&[0.2, 0.4, -0.6]);
        let w = m.apply(&v).unwrap();
        assert!(w.is_lightcone_point());
    }
}
