//! Aubry–Mather variational engine for area-preserving twist maps.
//!
//! A twist map is described by its generating function `S(x0, x1)`. Periodic
//! orbits of rotation number `p/q` are critical points of the periodic action
//! `Σ_{k<q} S(x_k, x_{k+1})` with `x_q = x_0 + p·period`, and Mather's β at
//! `p/q` is the minimal value of that action divided by `q`.

mod action;
mod cyclic;
mod irrational;
mod minimize;
mod toy;

pub use action::{action, action_gradient, equispaced_average_action, hessian, Hessian};
pub use cyclic::solve_cyclic_tridiagonal;
pub use irrational::{beta, beta_irrational, convergents, IrrationalBeta};
pub use minimize::{beta_rational, minimize_periodic, minimize_pinned, MinimizeOptions};
pub use toy::{make_toy_system, quadratic_kinetic, toy_table, ToyRow, ToySystem, TrigPotential};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Generating function of a positive twist map on a cylinder of circumference
/// [`period`](TwistSystem::period).
///
/// Implementations must satisfy `S(x0 + period, x1 + period) = S(x0, x1)` and
/// `∂₁₂S < 0` on the admissible set `lo < x1 − x0 < hi`.
pub trait TwistSystem: Send + Sync {
    fn period(&self) -> f64;

    /// Open interval of admissible gaps `x1 − x0`.
    fn gap_window(&self) -> (f64, f64);

    /// `S` with its exact first and second partials.
    fn jet(&self, x0: f64, x1: f64) -> Jet;

    fn value(&self, x0: f64, x1: f64) -> f64 {
        self.jet(x0, x1).v
    }

    fn partials(&self, x0: f64, x1: f64) -> Partials {
        Partials::from(self.jet(x0, x1))
    }

    fn admissible_gap(&self, gap: f64) -> bool {
        let (lo, hi) = self.gap_window();
        gap > lo && gap < hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

impl From<Jet> for Partials {
    fn from(j: Jet) -> Self {
        Partials { s: j.v, s1: j.g[0], s2: j.g[1], s11: j.h[0], s12: j.h[1], s22: j.h[2] }
    }
}

/// Rotation number: a reduced fraction `p/q` or a real target with tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationNumber {
    Rational { p: i64, q: u64 },
    Irrational { omega: f64, tol: f64 },
}

impl RotationNumber {
    /// `p/q` reduced to lowest terms.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidRotation("zero denominator".into()));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()).max(1) as i64;
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(RotationNumber::Rational { p, q: q as u64 })
    }

    pub fn irrational(omega: f64, tol: f64) -> Result<Self> {
        if !omega.is_finite() || !(tol > 0.0) {
            return Err(Error::InvalidRotation(format!("omega = {omega}, tol = {tol}")));
        }
        Ok(RotationNumber::Irrational { omega, tol })
    }

    pub fn value(&self) -> f64 {
        match *self {
            RotationNumber::Rational { p, q } => p as f64 / q as f64,
            RotationNumber::Irrational { omega, .. } => omega,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RotationNumber::Rational { .. })
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationNumber::Rational { p, q } => write!(f, "{p}/{q}"),
            RotationNumber::Irrational { omega, .. } => write!(f, "{omega}"),
        }
    }
}

impl Serialize for RotationNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `"p/q"` (reduced) or a decimal, which becomes an irrational target
/// with tolerance `1e-6`.
impl FromStr for RotationNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in '{s}'")))?;
            let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in '{s}'")))?;
            RotationNumber::rational(p, q)
        } else {
            let w: f64 = s.parse().map_err(|_| Error::Parse(format!("bad rotation number '{s}'")))?;
            RotationNumber::irrational(w, 1e-6)
        }
    }
}

/// Reduced fractions `p/q` with `q ≤ q_max` and `lo ≤ p/q ≤ hi`, increasing.
pub fn farey(q_max: u64, lo: f64, hi: f64) -> Vec<(i64, u64)> {
    let mut out: Vec<(i64, u64)> = Vec::new();
    for q in 1..=q_max {
        let p_lo = (lo * q as f64).ceil() as i64;
        let p_hi = (hi * q as f64).floor() as i64;
        for p in p_lo..=p_hi {
            if gcd(p.unsigned_abs(), q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128)));
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Cyclically ordered `q`-periodic configuration with winding `p`:
/// `x_{k+q} = x_k + p·period`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub points: Vec<f64>,
    pub winding: i64,
    pub period: f64,
}

impl Configuration {
    pub fn new(points: Vec<f64>, winding: i64, period: f64) -> Self {
        Configuration { points, winding, period }
    }

    /// `x_k = x0 + k·p·period/q`.
    pub fn equispaced(p: i64, q: usize, period: f64, x0: f64) -> Self {
        let step = p as f64 * period / q as f64;
        Configuration::new((0..q).map(|k| x0 + k as f64 * step).collect(), p, period)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Extended sequence: any integer index, using the periodicity rule.
    pub fn x(&self, k: isize) -> f64 {
        let q = self.points.len() as isize;
        let (wrap, r) = (k.div_euclid(q), k.rem_euclid(q));
        self.points[r as usize] + wrap as f64 * self.winding as f64 * self.period
    }

    /// The `q` gaps `x_{k+1} − x_k`, wrap gap last.
    pub fn gaps(&self) -> Vec<f64> {
        (0..self.points.len() as isize).map(|k| self.x(k + 1) - self.x(k)).collect()
    }

    pub fn translated(&self, c: f64) -> Self {
        Configuration::new(self.points.iter().map(|x| x + c).collect(), self.winding, self.period)
    }

    pub(crate) fn check(&self, sys: &dyn TwistSystem) -> Result<()> {
        let (lo, hi) = sys.gap_window();
        for (index, gap) in self.gaps().into_iter().enumerate() {
            if !(gap > lo && gap < hi) {
                return Err(Error::GapViolation { index, gap, lo, hi });
            }
        }
        Ok(())
    }
}

/// Outcome of a periodic minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaResult {
    pub beta: f64,
    pub config: Configuration,
    /// Sup-norm of the action gradient at `config`.
    pub grad_residual: f64,
    pub starts_tried: usize,
    pub converged: bool,
}

#[derive(Serialize)]
struct BetaRecord<'a> {
    beta: f64,
    points: &'a [f64],
    winding: i64,
    grad_residual: f64,
    converged: bool,
}

impl Serialize for BetaResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BetaRecord {
            beta: self.beta,
            points: &self.config.points,
            winding: self.config.winding,
            grad_residual: self.grad_residual,
            converged: self.converged,
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        assert_eq!(RotationNumber::rational(2, 6).unwrap(), RotationNumber::Rational { p: 1, q: 3 });
        assert_eq!(RotationNumber::rational(3, -9).unwrap(), RotationNumber::Rational { p: -1, q: 3 });
        assert_eq!(RotationNumber::rational(0, 5).unwrap(), RotationNumber::Rational { p: 0, q: 1 });
        assert!(RotationNumber::rational(1, 0).is_err());
    }

    #[test]
    fn farey_sequence() {
        let f = farey(5, 0.0, 0.5);
        assert_eq!(f, vec![(0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2)]);
        assert_eq!(farey(10, 0.0, 1.0).len(), 33);
    }

    #[test]
    fn parse_rotation() {
        assert_eq!("4/10".parse::<RotationNumber>().unwrap().to_string(), "2/5");
        let w: RotationNumber = "0.3535".parse().unwrap();
        assert!(!w.is_rational());
        assert!("1/x".parse::<RotationNumber>().is_err());
    }

    #[test]
    fn extended_indices_wrap_with_winding() {
        let c = Configuration::equispaced(2, 5, 1.0, 0.1);
        assert!((c.x(5) - (0.1 + 2.0)).abs() < 1e-15);
        assert!((c.x(-1) - (c.points[4] - 2.0)).abs() < 1e-15);
        assert!(c.gaps().iter().all(|g| (g - 0.4).abs() < 1e-15));
    }

    #[test]
    fn serializes_beta_result() {
        let r = BetaResult {
            beta: -1.5,
            config: Configuration::new(vec![0.0, 1.0], 1, 2.0),
            grad_residual: 0.0,
            starts_tried: 8,
            converged: true,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"beta":-1.5,"points":[0.0,1.0],"winding":1,"grad_residual":0.0,"converged":true}"#
        );
    }
}
