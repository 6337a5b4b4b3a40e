//! Geometric forward maps of the models.
//!
//! These are computed directly from the boundary (reflection, tangency) and
//! are independent of the generating functions, so orbits produced here can
//! be checked against critical points of the periodic action.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{tangent_intersection, ModelTag};
use crate::error::{Error, Result};
use crate::geometry::{cross, normal, tangent, SupportDomain, Vec2};
use crate::roots::bisect_newton;
use crate::twist::Configuration;

const XTOL: f64 = 1e-14;
/// Boundary sampling used to find the tangency of the outer map.
const OUTER_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapState {
    /// Bounce at support angle `phi` leaving at angle `alpha ∈ (0, π)` to the tangent.
    Chord { phi: f64, alpha: f64 },
    /// Two consecutive support angles.
    Pair { t0: f64, t1: f64 },
    /// A point outside the domain.
    Point { x: f64, y: f64 },
}

impl MapState {
    /// The support angle this state carries forward, when there is one.
    pub fn angle(&self) -> Option<f64> {
        match *self {
            MapState::Chord { phi, .. } => Some(phi),
            MapState::Pair { t1, .. } => Some(t1),
            MapState::Point { .. } => None,
        }
    }
}

/// One step of the model's forward map.
pub fn forward_map(dom: &SupportDomain, tag: ModelTag, state: MapState) -> Result<MapState> {
    match (tag, state) {
        (ModelTag::Birkhoff, MapState::Chord { phi, alpha }) => birkhoff_step(dom, phi, alpha),
        (ModelTag::Symplectic, MapState::Pair { t0, t1 }) => symplectic_step(dom, t0, t1),
        (ModelTag::Outer, MapState::Point { x, y }) => outer_step(dom, Vec2::new(x, y)),
        (ModelTag::Fourth, _) => Err(Error::InvalidArgument("the fourth model has no geometric forward map here".into())),
        (tag, s) => Err(Error::InvalidArgument(format!("state {s:?} does not belong to the {tag} map"))),
    }
}

/// The state whose forward orbit should trace `cfg`.
pub fn initial_state(dom: &SupportDomain, tag: ModelTag, cfg: &Configuration) -> Result<MapState> {
    if cfg.is_empty() {
        return Err(Error::InvalidArgument("empty configuration".into()));
    }
    match tag {
        ModelTag::Birkhoff => {
            let (p0, p1) = (bounce_angle(cfg, 0), bounce_angle(cfg, 1));
            let d = dom.point(p1) - dom.point(p0);
            let alpha = (-d.dot(&normal(p0))).atan2(d.dot(&tangent(p0)));
            Ok(MapState::Chord { phi: p0, alpha })
        }
        ModelTag::Symplectic => Ok(MapState::Pair { t0: cfg.x(0), t1: cfg.x(1) }),
        ModelTag::Outer => {
            let m = tangent_intersection(dom, cfg.x(0), cfg.x(1))?;
            Ok(MapState::Point { x: m.x, y: m.y })
        }
        ModelTag::Fourth => Err(Error::InvalidArgument("the fourth model has no geometric forward map here".into())),
    }
}

/// Support angle of the `k`-th bounce of a Birkhoff configuration.
pub fn bounce_angle(cfg: &Configuration, k: isize) -> f64 {
    0.5 * (cfg.x(k) + cfg.x(k + 1))
}

/// `n` forward iterates starting at `state` (the start is included).
pub fn iterate_orbit(dom: &SupportDomain, tag: ModelTag, state: MapState, n: usize) -> Result<Vec<MapState>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(state);
    let mut s = state;
    for _ in 0..n {
        s = forward_map(dom, tag, s)?;
        out.push(s);
    }
    Ok(out)
}

fn birkhoff_step(dom: &SupportDomain, phi: f64, alpha: f64) -> Result<MapState> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::InvalidArgument(format!("reflection angle {alpha} outside (0, π)")));
    }
    let g0 = dom.point(phi);
    let d = alpha.cos() * tangent(phi) - alpha.sin() * normal(phi);
    let f = |t: f64| cross(&d, &(dom.point(t) - g0));
    let df = |t: f64| dom.boundary_point(t).curvature_radius * cross(&d, &tangent(t));
    let eps = 1e-12;
    let phi1 = bisect_newton(f, df, phi + eps, phi + TAU - eps, XTOL);
    let out = d.dot(&normal(phi1));
    let alpha1 = out.atan2(d.dot(&tangent(phi1)));
    Ok(MapState::Chord { phi: phi1, alpha: alpha1 })
}

fn symplectic_step(dom: &SupportDomain, t0: f64, t1: f64) -> Result<MapState> {
    let gap = t1 - t0;
    if !(gap > 0.0 && gap < PI) {
        return Err(Error::GapViolation { index: 0, gap, lo: 0.0, hi: PI });
    }
    // the chord γ(t0)γ(t2) is parallel to the tangent at t1
    let g0 = dom.point(t0);
    let tv = tangent(t1);
    let f = |t: f64| cross(&tv, &(dom.point(t) - g0));
    let df = |t: f64| dom.boundary_point(t).curvature_radius * cross(&tv, &tangent(t));
    let t2 = bisect_newton(f, df, t1, t1 + PI, XTOL);
    Ok(MapState::Pair { t0: t1, t1: t2 })
}

fn outer_step(dom: &SupportDomain, m: Vec2) -> Result<MapState> {
    let f = |t: f64| normal(t).dot(&m) - dom.eval(t, 0);
    let df = |t: f64| tangent(t).dot(&m) - dom.eval(t, 1);
    // the right tangency is where the support excess turns from positive to negative
    let step = TAU / OUTER_SAMPLES as f64;
    let vals: Vec<f64> = (0..OUTER_SAMPLES).map(|j| f(j as f64 * step)).collect();
    if vals.iter().all(|&v| v <= 0.0) {
        return Err(Error::Geometry(format!("point ({}, {}) is not outside the domain", m.x, m.y)));
    }
    let j = (0..OUTER_SAMPLES)
        .find(|&j| vals[j] > 0.0 && vals[(j + 1) % OUTER_SAMPLES] <= 0.0)
        .ok_or_else(|| Error::Geometry("point too close to the boundary".into()))?;
    let a = j as f64 * step;
    let theta = bisect_newton(f, df, a, a + step, XTOL);
    let next = 2.0 * dom.point(theta) - m;
    Ok(MapState::Point { x: next.x, y: next.y })
}
