//! Integrable twist map perturbed by a potential:
//! `S_V(q, Q) = ℓ(Q − q) + V(q)` on the circle of length 1.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::minimize::{minimize_periodic, MinimizeOptions};
use super::TwistSystem;
use crate::error::Result;
use crate::jet::Jet;

/// Function returning `[f, f', f'']` at a point.
pub type Profile = Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>;

#[derive(Clone)]
pub struct ToySystem {
    kinetic: Profile,
    potential: Profile,
    mean: f64,
}

impl std::fmt::Debug for ToySystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToySystem").field("potential_mean", &self.mean).finish_non_exhaustive()
    }
}

/// `ℓ(v) = v²/2`.
pub fn quadratic_kinetic() -> Profile {
    Arc::new(|v| [0.5 * v * v, v, 1.0])
}

/// Builds the system from a strictly convex `ℓ` and a 1-periodic `V`.
/// The mean of `V` is subtracted so that `∫₀¹ V = 0`.
pub fn make_toy_system(kinetic: Profile, potential: Profile) -> ToySystem {
    let m = 4096;
    let mean = (0..m).map(|j| potential(j as f64 / m as f64)[0]).sum::<f64>() / m as f64;
    ToySystem { kinetic, potential, mean }
}

impl ToySystem {
    /// `ℓ(v) = v²/2` with a trigonometric potential.
    pub fn quadratic(potential: &TrigPotential) -> Self {
        let v = potential.clone();
        make_toy_system(quadratic_kinetic(), Arc::new(move |x| v.derivs(x)))
    }

    /// `β₀(ρ) = ℓ(ρ)`, the unperturbed β-function.
    pub fn beta_unperturbed(&self, rho: f64) -> f64 {
        (self.kinetic)(rho)[0]
    }

    pub fn potential(&self, x: f64) -> f64 {
        (self.potential)(x)[0] - self.mean
    }
}

impl TwistSystem for ToySystem {
    fn period(&self) -> f64 {
        1.0
    }

    fn gap_window(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    fn jet(&self, x0: f64, x1: f64) -> Jet {
        let [l, dl, d2l] = (self.kinetic)(x1 - x0);
        let [v, dv, d2v] = (self.potential)(x0);
        let gap = Jet::var(x1, 1) - Jet::var(x0, 0);
        gap.compose(l, dl, d2l) + Jet::var(x0, 0).compose(v - self.mean, dv, d2v)
    }
}

/// `V(x) = Σ a_n cos(2πnx) + b_n sin(2πnx)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPotential {
    pub terms: Vec<(u32, f64, f64)>,
}

impl TrigPotential {
    pub fn new(terms: Vec<(u32, f64, f64)>) -> Self {
        TrigPotential { terms }
    }

    /// `κ cos(2πx)/(2π)`.
    pub fn standard(kappa: f64) -> Self {
        TrigPotential::new(vec![(1, kappa / (2.0 * PI), 0.0)])
    }

    /// Modes `1..=modes` with coefficients uniform in `±amp/n`.
    pub fn random<R: Rng>(rng: &mut R, modes: u32, amp: f64) -> Self {
        TrigPotential::new(
            (1..=modes)
                .map(|n| {
                    let s = amp / n as f64;
                    (n, rng.random_range(-s..=s), rng.random_range(-s..=s))
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|&(n, a, b)| n == 0 || (a == 0.0 && b == 0.0))
    }

    pub fn derivs(&self, x: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for &(n, a, b) in &self.terms {
            let w = 2.0 * PI * n as f64;
            let (s, c) = (w * x).sin_cos();
            out[0] += a * c + b * s;
            out[1] += w * (b * c - a * s);
            out[2] -= w * w * (a * c + b * s);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToyRow {
    pub p: i64,
    pub q: u64,
    pub beta_v: f64,
    pub beta_0: f64,
    /// `β_0 − β_V`, nonnegative for a zero-mean potential.
    pub gap: f64,
    pub converged: bool,
}

/// `β_V` against `β_0` at each rational.
pub fn toy_table(sys: &ToySystem, rots: &[(i64, u64)], opts: &MinimizeOptions) -> Result<Vec<ToyRow>> {
    rots.iter()
        .map(|&(p, q)| {
            let r = minimize_periodic(sys, p, q, opts)?;
            let beta_0 = sys.beta_unperturbed(p as f64 / q as f64);
            Ok(ToyRow { p, q, beta_v: r.beta, beta_0, gap: beta_0 - r.beta, converged: r.converged })
        })
        .collect()
}
