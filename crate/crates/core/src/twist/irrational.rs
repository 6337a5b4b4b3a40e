//! β at irrational rotation numbers from its values at continued-fraction
//! convergents.
//!
//! β is convex, so for evaluated points `a < b` on the same side of `ω` the
//! chord through them, extended to `ω`, bounds `β(ω)` from below, while any
//! chord over a pair straddling `ω` bounds it from above.

use serde::Serialize;

use super::minimize::{beta_rational, MinimizeOptions};
use super::{RotationNumber, TwistSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrationalBeta {
    /// Midpoint of the bracket.
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
    /// `(p, q, β(p/q))` for every convergent evaluated.
    pub evaluated: Vec<(i64, u64, f64)>,
    pub converged: bool,
}

/// Convergents `p_k/q_k` of `omega` with `q_k ≤ q_max`, in order.
///
/// The expansion stops early when a convergent reproduces `omega` to
/// round-off, which is how rational inputs are recognised.
pub fn convergents(omega: f64, q_max: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    let (mut p_prev, mut q_prev) = (1i64, 0u64);
    let (mut p, mut q) = (omega.floor() as i64, 1u64);
    let mut rem = omega - omega.floor();
    loop {
        out.push((p, q));
        if (omega - p as f64 / q as f64).abs() <= 4.0 * f64::EPSILON * omega.abs().max(1.0) || rem == 0.0 {
            break;
        }
        let x = 1.0 / rem;
        let a = x.floor();
        rem = x - a;
        let a = a as u64;
        let (pn, qn) = (a as i64 * p + p_prev, a * q + q_prev);
        if qn > q_max {
            break;
        }
        (p_prev, q_prev, p, q) = (p, q, pn, qn);
    }
    out
}

/// β at any rotation number; rational inputs go straight to the minimizer.
pub fn beta(sys: &dyn TwistSystem, rot: &RotationNumber, opts: &MinimizeOptions) -> Result<IrrationalBeta> {
    match *rot {
        RotationNumber::Rational { p, q } => {
            let b = beta_rational(sys, p, q, opts)?;
            Ok(IrrationalBeta { beta: b, lower: b, upper: b, evaluated: vec![(p, q, b)], converged: true })
        }
        RotationNumber::Irrational { omega, tol } => beta_irrational(sys, omega, tol, opts),
    }
}

/// Brackets `β(omega)` to width `tol` using convergents with `q ≤ opts.q_max`.
///
/// When the denominators run out first, the achieved bracket is returned with
/// `converged = false`.
pub fn beta_irrational(sys: &dyn TwistSystem, omega: f64, tol: f64, opts: &MinimizeOptions) -> Result<IrrationalBeta> {
    let period = sys.period();
    if !sys.admissible_gap(omega * period) {
        return Err(Error::InvalidRotation(format!("{omega} outside the twist interval")));
    }
    let cands = convergents(omega, opts.q_max);
    if let Some(&(p, q)) = cands.last() {
        if (omega - p as f64 / q as f64).abs() <= 4.0 * f64::EPSILON * omega.abs().max(1.0) {
            return beta(sys, &RotationNumber::Rational { p, q }, opts);
        }
    }

    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut evaluated = Vec::new();
    let mut bracket = (f64::NEG_INFINITY, f64::INFINITY);
    for &(p, q) in &cands {
        if !sys.admissible_gap(p as f64 * period / q as f64) {
            continue;
        }
        let b = beta_rational(sys, p, q, opts)?;
        evaluated.push((p, q, b));
        pts.push((p as f64 / q as f64, b));
        bracket = bounds(&pts, omega);
        if bracket.1 - bracket.0 < tol {
            break;
        }
    }
    let (lower, upper) = bracket;
    let converged = upper - lower < tol;
    let beta = if lower.is_finite() && upper.is_finite() {
        0.5 * (lower + upper)
    } else {
        evaluated.last().map(|e| e.2).unwrap_or(f64::NAN)
    };
    Ok(IrrationalBeta { beta, lower, upper, evaluated, converged })
}

fn bounds(pts: &[(f64, f64)], omega: f64) -> (f64, f64) {
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    for (i, &(x1, y1)) in pts.iter().enumerate() {
        for &(x2, y2) in &pts[i + 1..] {
            if x1 == x2 {
                continue;
            }
            let at = y1 + (y2 - y1) / (x2 - x1) * (omega - x1);
            if (x1 - omega) * (x2 - omega) < 0.0 {
                upper = upper.min(at);
            } else {
                lower = lower.max(at);
            }
        }
    }
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_convergents_are_fibonacci() {
        let w = (5f64.sqrt() - 1.0) / 2.0;
        let c = convergents(w, 100);
        let qs: Vec<u64> = c.iter().map(|x| x.1).collect();
        assert_eq!(qs, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(c[5], (5, 8));
    }

    #[test]
    fn rational_input_terminates() {
        assert_eq!(convergents(0.375, 2000).last(), Some(&(3, 8)));
        assert_eq!(convergents(0.5, 2000), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn convex_bounds_bracket_a_parabola() {
        let f = |x: f64| x * x;
        let w = 0.3;
        let pts: Vec<(f64, f64)> = [0.25, 0.35, 0.28].iter().map(|&x| (x, f(x))).collect();
        let (lo, hi) = bounds(&pts, w);
        assert!(lo <= f(w) && f(w) <= hi);
    }
}
