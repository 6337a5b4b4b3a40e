//! Multi-start minimization of the periodic action.
//!
//! Each start runs projected gradient descent with Barzilai–Borwein steps and
//! Armijo backtracking until the gradient is small, then a damped Newton
//! iteration on the cyclic-tridiagonal Hessian. Steps are clipped so every gap
//! stays strictly inside the admissible window.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::action::{action_unchecked, gradient_unchecked, hessian_unchecked};
use super::cyclic::solve_cyclic_tridiagonal;
use super::{BetaResult, Configuration, RotationNumber, TwistSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    /// Number of phase-shifted starting configurations.
    pub starts: usize,
    /// Convergence threshold on the gradient sup-norm, scaled by `|β| + 1`.
    pub tol: f64,
    pub seed: u64,
    /// Start jitter amplitude as a fraction of `period/q`.
    pub jitter: f64,
    /// Residual (scaled like `tol`) at which descent hands over to Newton.
    pub descent_switch: f64,
    pub max_descent_iters: usize,
    pub max_newton_iters: usize,
    /// Largest denominator used when approximating irrational rotation numbers.
    pub q_max: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            starts: 8,
            tol: 1e-10,
            seed: 0,
            jitter: 1e-2,
            descent_switch: 1e-4,
            max_descent_iters: 3000,
            max_newton_iters: 200,
            q_max: 2000,
        }
    }
}

struct StartOutcome {
    cfg: Configuration,
    action: f64,
    residual: f64,
    converged: bool,
}

fn reduced(p: i64, q: u64) -> Result<(i64, usize)> {
    if q == 0 {
        return Err(Error::InvalidRotation("zero denominator".into()));
    }
    match RotationNumber::rational(p, q as i64)? {
        RotationNumber::Rational { p, q } => Ok((p, q as usize)),
        RotationNumber::Irrational { .. } => unreachable!(),
    }
}

fn check_rotation(sys: &dyn TwistSystem, p: i64, q: usize) -> Result<()> {
    let gap = p as f64 * sys.period() / q as f64;
    if !sys.admissible_gap(gap) {
        let (lo, hi) = sys.gap_window();
        return Err(Error::InvalidRotation(format!(
            "{p}/{q}: equispaced gap {gap} outside admissible window ({lo}, {hi})"
        )));
    }
    Ok(())
}

/// Minimizes the periodic action over configurations of rotation number `p/q`.
///
/// Returns the best critical configuration over all starts, preferring
/// converged starts, then lower action, lower residual and lower start index.
pub fn minimize_periodic(sys: &dyn TwistSystem, p: i64, q: u64, opts: &MinimizeOptions) -> Result<BetaResult> {
    let (p, q) = reduced(p, q)?;
    check_rotation(sys, p, q)?;
    let period = sys.period();
    let starts = opts.starts.max(1);
    let outcomes: Vec<StartOutcome> = (0..starts)
        .into_par_iter()
        .map(|j| {
            let phase = j as f64 * period / (q * starts) as f64;
            run_start(sys, p, q, phase, false, stream_seed(opts.seed, j), opts)
        })
        .collect();
    Ok(select(outcomes, q, starts))
}

/// Minimizes with `x_0` held fixed at `x0`.
///
/// The result is a true orbit only when the constrained minimizer happens to
/// be critical in `x_0` as well; its residual reports that.
pub fn minimize_pinned(
    sys: &dyn TwistSystem,
    p: i64,
    q: u64,
    x0: f64,
    opts: &MinimizeOptions,
) -> Result<BetaResult> {
    let (p, q) = reduced(p, q)?;
    check_rotation(sys, p, q)?;
    let starts = opts.starts.max(1);
    let outcomes: Vec<StartOutcome> = (0..starts)
        .into_par_iter()
        .map(|j| run_start(sys, p, q, x0, true, stream_seed(opts.seed, j), opts))
        .collect();
    Ok(select(outcomes, q, starts))
}

/// β at `p/q`.
pub fn beta_rational(sys: &dyn TwistSystem, p: i64, q: u64, opts: &MinimizeOptions) -> Result<f64> {
    let r = minimize_periodic(sys, p, q, opts)?;
    if r.converged {
        Ok(r.beta)
    } else {
        Err(Error::NonConvergence { residual: r.grad_residual })
    }
}

fn stream_seed(seed: u64, start: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (start as u64).wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

fn select(outcomes: Vec<StartOutcome>, q: usize, starts: usize) -> BetaResult {
    let best = outcomes
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| {
            b.converged
                .cmp(&a.converged)
                .then(a.action.total_cmp(&b.action))
                .then(a.residual.total_cmp(&b.residual))
                .then(i.cmp(j))
        })
        .map(|(_, o)| o)
        .expect("at least one start");
    BetaResult {
        beta: best.action / q as f64,
        config: best.cfg,
        grad_residual: best.residual,
        starts_tried: starts,
        converged: best.converged,
    }
}

fn run_start(
    sys: &dyn TwistSystem,
    p: i64,
    q: usize,
    x0: f64,
    pinned: bool,
    seed: u64,
    opts: &MinimizeOptions,
) -> StartOutcome {
    let period = sys.period();
    let gap_min = 1e-9 * period;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcome = None;
    // a collapsed configuration is retried once from a fresh perturbation
    for attempt in 0..2 {
        let amp = opts.jitter * period / q as f64 * if attempt == 0 { 1.0 } else { 0.5 };
        let mut cfg = Configuration::equispaced(p, q, period, x0);
        for (k, x) in cfg.points.iter_mut().enumerate() {
            if !(pinned && k == 0) {
                *x += amp * rng.random_range(-1.0..1.0);
            }
        }
        let out = Descent::new(sys, pinned, gap_min, opts).run(cfg);
        let collapsed = out.cfg.gaps().iter().any(|g| {
            let (lo, hi) = sys.gap_window();
            g - lo < 2.0 * gap_min || hi - g < 2.0 * gap_min
        });
        outcome = Some(out);
        if !collapsed {
            break;
        }
    }
    outcome.expect("one attempt")
}

struct Descent<'a> {
    sys: &'a dyn TwistSystem,
    pinned: bool,
    lo: f64,
    hi: f64,
    opts: &'a MinimizeOptions,
}

impl<'a> Descent<'a> {
    fn new(sys: &'a dyn TwistSystem, pinned: bool, gap_min: f64, opts: &'a MinimizeOptions) -> Self {
        let (lo, hi) = sys.gap_window();
        Descent { sys, pinned, lo: lo + gap_min, hi: hi - gap_min, opts }
    }

    fn eval(&self, cfg: &Configuration) -> (f64, Vec<f64>) {
        let (a, mut g) = gradient_unchecked(self.sys, cfg);
        if self.pinned {
            g[0] = 0.0;
        }
        (a, g)
    }

    fn scale(&self, action: f64, q: usize) -> f64 {
        (action / q as f64).abs() + 1.0
    }

    /// Largest `t ≤ 1` keeping every gap of `x + t·step` inside the window.
    fn clip(&self, cfg: &Configuration, step: &[f64]) -> f64 {
        let q = step.len();
        let gaps = cfg.gaps();
        let mut t_max = f64::INFINITY;
        for k in 0..q {
            let dg = step[(k + 1) % q] - step[k];
            let g = gaps[k];
            if dg < 0.0 && self.lo.is_finite() {
                t_max = t_max.min((g - self.lo).max(0.0) / -dg);
            } else if dg > 0.0 && self.hi.is_finite() {
                t_max = t_max.min((self.hi - g).max(0.0) / dg);
            }
        }
        if t_max >= 1.0 {
            1.0
        } else {
            0.95 * t_max
        }
    }

    fn moved(cfg: &Configuration, step: &[f64], t: f64) -> Configuration {
        let mut next = cfg.clone();
        for (x, d) in next.points.iter_mut().zip(step) {
            *x += t * d;
        }
        next
    }

    fn run(&self, mut cfg: Configuration) -> StartOutcome {
        let q = cfg.len();
        let (mut a, mut g) = self.eval(&cfg);

        // steepest descent with Barzilai–Borwein steps
        let h0 = hessian_unchecked(self.sys, &cfg);
        let lipschitz = (0..q)
            .map(|k| h0.diag[k].abs() + h0.off[k].abs() + h0.off[(k + q - 1) % q].abs())
            .fold(0.0, f64::max)
            .max(1e-12);
        let mut alpha = 1.0 / lipschitz;
        for _ in 0..self.opts.max_descent_iters {
            let res = sup(&g);
            if res < self.opts.descent_switch * self.scale(a, q) {
                break;
            }
            let dir: Vec<f64> = g.iter().map(|x| -alpha * x).collect();
            let slope: f64 = alpha * g.iter().map(|x| x * x).sum::<f64>();
            let mut t = self.clip(&cfg, &dir);
            let mut accepted = None;
            for _ in 0..50 {
                let trial = Self::moved(&cfg, &dir, t);
                let at = action_unchecked(self.sys, &trial);
                if at <= a - 1e-4 * t * slope {
                    accepted = Some((trial, at));
                    break;
                }
                t *= 0.5;
            }
            let Some((next, _)) = accepted else { break };
            let (an, gn) = self.eval(&next);
            let s: Vec<f64> = next.points.iter().zip(&cfg.points).map(|(x, y)| x - y).collect();
            let sy: f64 = s.iter().zip(gn.iter().zip(&g)).map(|(si, (gi, g0))| si * (gi - g0)).sum();
            let ss: f64 = s.iter().map(|v| v * v).sum();
            alpha = if sy > 0.0 { (ss / sy).clamp(1e-6 / lipschitz, 1e6 / lipschitz) } else { 2.0 * t * alpha };
            cfg = next;
            a = an;
            g = gn;
        }

        // damped Newton
        let gap_ref = (cfg.winding as f64 * cfg.period / q as f64).abs().max(cfg.period / q as f64);
        let mut mu = 1e-12 * lipschitz;
        let mut res = sup(&g);
        for _ in 0..self.opts.max_newton_iters {
            if res < self.opts.tol * self.scale(a, q) {
                break;
            }
            let mut h = hessian_unchecked(self.sys, &cfg);
            if self.pinned {
                pin_first(&mut h);
            }
            let rhs: Vec<f64> = g.iter().map(|x| -x).collect();
            let Some(mut step) = solve_cyclic_tridiagonal(&h, mu, &rhs) else {
                mu = (10.0 * mu).max(1e-10 * lipschitz);
                continue;
            };
            if self.pinned {
                step[0] = 0.0;
            }
            let len = sup(&step);
            let trust = 0.5 * gap_ref;
            let t = self.clip(&cfg, &step).min(if len > trust { trust / len } else { 1.0 });
            let trial = Self::moved(&cfg, &step, t);
            let (at, gt) = self.eval(&trial);
            let rt = sup(&gt);
            let slack = 1e-13 * (a.abs() + 1.0);
            if at.is_finite() && at <= a + slack && (rt < res || at < a - slack) {
                cfg = trial;
                a = at;
                g = gt;
                res = rt;
                mu *= 0.1;
            } else {
                mu = (10.0 * mu).max(1e-8 * lipschitz);
                if mu > 1e8 * lipschitz {
                    break;
                }
            }
        }
        let converged = res < self.opts.tol * self.scale(a, q);
        StartOutcome { cfg, action: a, residual: res, converged }
    }
}

fn pin_first(h: &mut super::Hessian) {
    let q = h.diag.len();
    h.diag[0] = 1.0;
    h.off[0] = 0.0;
    h.off[q - 1] = 0.0;
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
