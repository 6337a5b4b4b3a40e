use super::{Configuration, RotationNumber, TwistSystem};
use crate::error::Result;

/// `Σ_{k<q} S(x_k, x_{k+1})` with `x_q = x_0 + p·period`.
pub fn action(sys: &dyn TwistSystem, cfg: &Configuration) -> Result<f64> {
    cfg.check(sys)?;
    Ok(action_unchecked(sys, cfg))
}

pub(crate) fn action_unchecked(sys: &dyn TwistSystem, cfg: &Configuration) -> f64 {
    (0..cfg.len() as isize).map(|k| sys.value(cfg.x(k), cfg.x(k + 1))).sum()
}

/// Component `k` is `∂₁S(x_k, x_{k+1}) + ∂₂S(x_{k−1}, x_k)`.
pub fn action_gradient(sys: &dyn TwistSystem, cfg: &Configuration) -> Result<Vec<f64>> {
    cfg.check(sys)?;
    Ok(gradient_unchecked(sys, cfg).1)
}

/// Action and gradient in one sweep over the `q` edges.
pub(crate) fn gradient_unchecked(sys: &dyn TwistSystem, cfg: &Configuration) -> (f64, Vec<f64>) {
    let q = cfg.len();
    let mut g = vec![0.0; q];
    let mut total = 0.0;
    for k in 0..q {
        let pk = sys.partials(cfg.x(k as isize), cfg.x(k as isize + 1));
        total += pk.s;
        g[k] += pk.s1;
        g[(k + 1) % q] += pk.s2;
    }
    (total, g)
}

/// Symmetric cyclic-tridiagonal Hessian of the periodic action.
///
/// `diag[k] = ∂₁₁S(x_k, x_{k+1}) + ∂₂₂S(x_{k−1}, x_k)` and `off[k]` couples
/// `x_k` with `x_{k+1 mod q}`: `off[k] = ∂₁₂S(x_k, x_{k+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hessian {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Hessian {
    /// Dense form; entries for `q ≤ 2` accumulate every coupling.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let q = self.diag.len();
        let mut m = vec![vec![0.0; q]; q];
        for k in 0..q {
            m[k][k] += self.diag[k];
            let j = (k + 1) % q;
            m[k][j] += self.off[k];
            m[j][k] += self.off[k];
        }
        m
    }
}

pub fn hessian(sys: &dyn TwistSystem, cfg: &Configuration) -> Result<Hessian> {
    cfg.check(sys)?;
    Ok(hessian_unchecked(sys, cfg))
}

pub(crate) fn hessian_unchecked(sys: &dyn TwistSystem, cfg: &Configuration) -> Hessian {
    let q = cfg.len();
    let mut diag = vec![0.0; q];
    let mut off = vec![0.0; q];
    for k in 0..q {
        let pk = sys.partials(cfg.x(k as isize), cfg.x(k as isize + 1));
        diag[k] += pk.s11;
        diag[(k + 1) % q] += pk.s22;
        off[k] = pk.s12;
    }
    Hessian { diag, off }
}

const AVERAGE_QUADRATURE_POINTS: usize = 4096;

/// Average action of the equispaced configuration starting at `x0`.
///
/// Rational `p/q`: exact average over one period. Irrational `ω`: the Birkhoff
/// average, computed as `(1/period) ∫ S(t, t + ω·period) dt` by the trapezoid
/// rule.
pub fn equispaced_average_action(sys: &dyn TwistSystem, rot: &RotationNumber, x0: f64) -> Result<f64> {
    let period = sys.period();
    match *rot {
        RotationNumber::Rational { p, q } => {
            let cfg = Configuration::equispaced(p, q as usize, period, x0);
            Ok(action(sys, &cfg)? / q as f64)
        }
        RotationNumber::Irrational { omega, .. } => {
            let gap = omega * period;
            if !sys.admissible_gap(gap) {
                let (lo, hi) = sys.gap_window();
                return Err(crate::error::Error::GapViolation { index: 0, gap, lo, hi });
            }
            let m = AVERAGE_QUADRATURE_POINTS;
            let h = period / m as f64;
            Ok((0..m).map(|j| sys.value(j as f64 * h, j as f64 * h + gap)).sum::<f64>() / m as f64)
        }
    }
}
