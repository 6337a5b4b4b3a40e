use nalgebra::Matrix2;

use super::{fourier, SupportDomain, Vec2};
use crate::error::{Error, Result};

/// Orientation-preserving affine map `x ↦ L x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    linear: Matrix2<f64>,
    translation: Vec2,
}

impl AffineMap {
    pub fn new(linear: Matrix2<f64>, translation: Vec2) -> Result<Self> {
        let det = linear.determinant();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "affine map needs positive determinant, got {det}"
            )));
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity() -> Self {
        AffineMap { linear: Matrix2::identity(), translation: Vec2::zeros() }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        AffineMap { linear: Matrix2::new(c, -s, s, c), translation: Vec2::zeros() }
    }

    pub fn diagonal(sx: f64, sy: f64) -> Result<Self> {
        Self::new(Matrix2::new(sx, 0.0, 0.0, sy), Vec2::zeros())
    }

    /// Area-preserving shear `(x, y) ↦ (x + k y, y)`.
    pub fn shear(k: f64) -> Self {
        AffineMap { linear: Matrix2::new(1.0, k, 0.0, 1.0), translation: Vec2::zeros() }
    }

    pub fn with_translation(mut self, t: Vec2) -> Self {
        self.translation = t;
        self
    }

    pub fn then(&self, next: &AffineMap) -> AffineMap {
        AffineMap {
            linear: next.linear * self.linear,
            translation: next.linear * self.translation + next.translation,
        }
    }

    pub fn linear(&self) -> &Matrix2<f64> {
        &self.linear
    }

    pub fn translation(&self) -> Vec2 {
        self.translation
    }

    pub fn det(&self) -> f64 {
        self.linear.determinant()
    }

    pub fn apply(&self, x: &Vec2) -> Vec2 {
        self.linear * x + self.translation
    }
}

/// Support function of `A(Ω)` projected onto `n_out` modes.
///
/// `h_A(u) = h(arg(Aᵀu)) |Aᵀu| + ⟨t, u⟩`.
pub fn affine_image(dom: &SupportDomain, map: &AffineMap, n_out: usize) -> Result<SupportDomain> {
    let lt = map.linear.transpose();
    let t = map.translation;
    let h = |psi: f64| {
        let u = super::normal(psi);
        let w = lt * u;
        dom.eval(w.y.atan2(w.x), 0) * w.norm() + t.dot(&u)
    };
    let (a0, modes) = fourier::project(h, n_out, 1e-8)?;
    SupportDomain::new(a0, modes)
}
