//! Roots of `tan(nπδ) = n tan(πδ)` and the equality mechanism behind them.
//!
//! With `t = tan x`, `tan(nx) = N_n(t)/D_n(t)` where `N_1 = t`, `D_1 = 1` and
//! `N_{k+1} = N_k + t D_k`, `D_{k+1} = D_k − t N_k`. The roots are the positive
//! zeros of `P_n = N_n − n t D_n`, which vanishes to third order at `t = 0`.

use std::f64::consts::PI;

use serde::Serialize;

use super::{InequalityReport, Theorem, Tolerances};
use crate::billiards::{make_system, ModelTag};
use crate::error::{Error, Result};
use crate::geometry::{make_named, NamedFamily};
use crate::roots::bisect;
use crate::twist::{beta_irrational, MinimizeOptions, RotationNumber, TwistSystem};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GutkinRootSet {
    pub n: u32,
    /// Sorted roots in `(0, 1/2)`.
    pub roots: Vec<f64>,
}

/// Coefficients (ascending powers of `t`) of `P_n(t)/t³`.
fn reduced_poly(n: u32) -> Vec<f64> {
    let mut num: Vec<i128> = vec![0, 1];
    let mut den: Vec<i128> = vec![1];
    for _ in 1..n {
        let mut nn = vec![0i128; num.len().max(den.len() + 1)];
        let mut dd = vec![0i128; den.len().max(num.len() + 1)];
        for (i, &c) in num.iter().enumerate() {
            nn[i] += c;
            dd[i + 1] -= c;
        }
        for (i, &c) in den.iter().enumerate() {
            dd[i] += c;
            nn[i + 1] += c;
        }
        (num, den) = (nn, dd);
    }
    let len = num.len().max(den.len() + 1);
    let mut p = vec![0i128; len];
    for (i, &c) in num.iter().enumerate() {
        p[i] += c;
    }
    for (i, &c) in den.iter().enumerate() {
        p[i + 1] -= n as i128 * c;
    }
    while p.last() == Some(&0) {
        p.pop();
    }
    debug_assert!(p.iter().take(3).all(|&c| c == 0));
    p.iter().skip(3).map(|&c| c as f64).collect()
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// `Q(tan x) · cos^d x` for `Q` of degree `d`, bounded on `(0, π/2)`.
fn normalized(c: &[f64], x: f64) -> f64 {
    let d = c.len().saturating_sub(1) as i32;
    let (s, co) = x.sin_cos();
    if x <= PI / 4.0 {
        horner(c, s / co) * co.powi(d)
    } else {
        // reversed polynomial in 1/t
        let rev: f64 = c.iter().fold(0.0, |acc, &a| acc * (co / s) + a);
        rev * s.powi(d)
    }
}

/// Nontrivial solutions `δ ∈ (0, 1/2)` of `tan(nπδ) = n tan(πδ)`.
pub fn gutkin_roots(n: u32) -> Result<GutkinRootSet> {
    if !(2..=64).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 2..=64")));
    }
    let c = reduced_poly(n);
    let f = |delta: f64| normalized(&c, PI * delta);
    let m = 400 * n as usize;
    let mut roots = Vec::new();
    let mut prev = f(0.5 / m as f64 * 1e-3);
    let mut a = 0.5 / m as f64 * 1e-3;
    for j in 1..m {
        let b = 0.5 * j as f64 / m as f64;
        let fb = f(b);
        if fb == 0.0 {
            roots.push(b);
        } else if prev != 0.0 && (prev < 0.0) != (fb < 0.0) {
            roots.push(polish(n, bisect(f, a, b, 1e-16)));
        }
        (a, prev) = (b, fb);
    }
    Ok(GutkinRootSet { n, roots })
}

/// Newton steps on `sin(nx) cos x − n sin x cos(nx)`, which shares its zeros
/// with the polynomial but avoids its cancellation for large `n`.
fn polish(n: u32, delta: f64) -> f64 {
    let k = n as f64;
    let mut x = PI * delta;
    for _ in 0..3 {
        let g = (k * x).sin() * x.cos() - k * x.sin() * (k * x).cos();
        let dg = (k * k - 1.0) * x.sin() * (k * x).sin();
        if dg == 0.0 {
            break;
        }
        let next = x - g / dg;
        if (next - x).abs() > 1e-9 {
            break;
        }
        x = next;
    }
    x / PI
}

/// Whether `ρ` stays farther than `tol` from every Gutkin root with `n ≤ n_max`.
pub fn in_r(rho: f64, n_max: u32, tol: f64) -> Result<bool> {
    if !(rho > 0.0 && rho < 0.5) {
        return Err(Error::InvalidRotation(format!("ρ = {rho} outside (0, 1/2)")));
    }
    for n in 2..=n_max {
        if gutkin_roots(n)?.roots.iter().any(|d| (d - rho).abs() <= tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sup-norm of the Birkhoff action gradient along `x_k = x + 2πδk`, sampled
/// over `x`.
fn equispaced_residual(sys: &dyn TwistSystem, delta: f64) -> f64 {
    let g = 2.0 * PI * delta;
    (0..64)
        .map(|j| {
            let x = 2.0 * PI * j as f64 / 64.0;
            (sys.partials(x - g, x).s2 + sys.partials(x, x + g).s1).abs()
        })
        .fold(0.0, f64::max)
}

/// Equality in the Birkhoff inequality at the first Gutkin root of `n` for
/// `h = 1 + ε cos(nφ)`.
///
/// `defect` is the criticality residual of the equispaced configuration; the
/// equality threshold is `3e-6`, the accuracy of the irrational β bracket.
pub fn gutkin_equality_check(n: u32, eps: f64, opts: &MinimizeOptions, tol: &Tolerances) -> Result<InequalityReport> {
    let set = gutkin_roots(n)?;
    let delta = *set
        .roots
        .first()
        .ok_or_else(|| Error::InvalidArgument(format!("no Gutkin root for n = {n}")))?;
    let dom = make_named(NamedFamily::Gutkin { n: n as usize, eps })?;
    let sys = make_system(&dom, ModelTag::Birkhoff);
    let residual = equispaced_residual(&sys, delta);
    let b = beta_irrational(&sys, delta, 1e-6, opts)?;
    let rhs = dom.perimeter() / (2.0 * PI) * -2.0 * (PI * delta).sin();
    let rho = RotationNumber::Irrational { omega: delta, tol: 1e-6 };
    let check_tol = Tolerances { eq_tol: 3e-6, ..*tol };
    let mut r = InequalityReport::new(Theorem::T4_2, rho, b.beta, rhs, &check_tol);
    r.converged = b.converged;
    r.defect = Some(residual);
    r.note = Some(format!(
        "δ = {delta}; β bracket [{}, {}] from {} convergents",
        b.lower,
        b.upper,
        b.evaluated.len()
    ));
    if !b.converged {
        r.add_note("β did not converge");
    }
    if residual >= 1e-9 {
        r.add_note("equispaced configuration is not critical");
    }
    Ok(r)
}
