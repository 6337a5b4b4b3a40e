use std::f64::consts::PI;

use serde::Serialize;

use super::{cross, tangent, SupportDomain};
use crate::roots::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadonReport {
    pub is_centrally_symmetric: bool,
    /// `None` when the curve is not centrally symmetric.
    pub max_defect: Option<f64>,
    pub is_radon: bool,
}

/// Tests whether Birkhoff orthogonality on the boundary is symmetric.
///
/// For each sample point `x = γ(φ)` the point `y` parallel to the tangent at
/// `x` is located by bisection; the defect is the angle (mod π) between `x`
/// and the tangent at `y`.
pub fn radon_check(dom: &SupportDomain, tol: f64) -> RadonReport {
    let symmetric = dom
        .modes()
        .iter()
        .step_by(2)
        .all(|&(a, b)| a.abs() <= tol && b.abs() <= tol);
    if !symmetric {
        return RadonReport { is_centrally_symmetric: false, max_defect: None, is_radon: false };
    }
    let samples = 256;
    let mut worst = 0.0_f64;
    for j in 0..samples {
        let phi = 2.0 * PI * j as f64 / samples as f64;
        let x = dom.point(phi);
        let t = tangent(phi);
        // cross(t, γ(ψ)) increases from −h(φ) to h(φ+π) on (φ, φ+π)
        let psi = bisect(|psi| cross(&t, &dom.point(psi)), phi, phi + PI, 1e-14);
        let ty = tangent(psi);
        let a = cross(&x, &ty).atan2(x.dot(&ty)).abs();
        worst = worst.max(a.min(PI - a));
    }
    RadonReport { is_centrally_symmetric: true, max_defect: Some(worst), is_radon: worst < tol }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_named, NamedFamily};

    #[test]
    fn disk_and_ellipse_are_radon() {
        let d = SupportDomain::disk(1.0).unwrap();
        let r = radon_check(&d, 1e-8);
        assert!(r.is_radon);
        assert!(r.max_defect.unwrap() < 1e-12);

        let e = make_named(NamedFamily::Ellipse { a: 2.0, b: 1.0 }).unwrap();
        let r = radon_check(&e, 1e-8);
        assert!(r.is_centrally_symmetric);
        assert!(r.max_defect.unwrap() < 1e-8, "{:?}", r);
    }

    #[test]
    fn odd_mode_breaks_symmetry() {
        let g = make_named(NamedFamily::Gutkin { n: 3, eps: 0.05 }).unwrap();
        let r = radon_check(&g, 1e-8);
        assert!(!r.is_centrally_symmetric);
        assert!(r.max_defect.is_none());
    }

    #[test]
    fn symmetric_non_radon_curve() {
        let g = make_named(NamedFamily::Gutkin { n: 4, eps: 0.05 }).unwrap();
        let r = radon_check(&g, 1e-8);
        assert!(r.is_centrally_symmetric);
        assert!(!r.is_radon);
    }
}
