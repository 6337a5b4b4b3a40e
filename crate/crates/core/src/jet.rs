//! Second-order forward-mode differentiation in two variables.
//!
//! Every generating function is written once over [`Jet`] and yields its
//! value together with the exact first and second partials that the Newton
//! phase of the minimizer needs.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value, gradient and Hessian `[h00, h01, h11]` of a scalar in `(x0, x1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub g: [f64; 2],
    pub h: [f64; 3],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet { v, g: [0.0; 2], h: [0.0; 3] }
    }

    /// The independent variable `x_i`.
    pub fn var(v: f64, i: usize) -> Self {
        let mut g = [0.0; 2];
        g[i] = 1.0;
        Jet { v, g, h: [0.0; 3] }
    }

    /// Applies a univariate function given its value and first two derivatives
    /// at `self.v`.
    pub fn compose(self, f: f64, df: f64, d2f: f64) -> Self {
        let [g0, g1] = self.g;
        Jet {
            v: f,
            g: [df * g0, df * g1],
            h: [
                d2f * g0 * g0 + df * self.h[0],
                d2f * g0 * g1 + df * self.h[1],
                d2f * g1 * g1 + df * self.h[2],
            ],
        }
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.compose(t, sec2, 2.0 * t * sec2)
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.compose(r, -r * r, 2.0 * r * r * r)
    }

    pub fn scale(self, k: f64) -> Self {
        Jet {
            v: k * self.v,
            g: [k * self.g[0], k * self.g[1]],
            h: [k * self.h[0], k * self.h[1], k * self.h[2]],
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            g: [self.g[0] + o.g[0], self.g[1] + o.g[1]],
            h: [self.h[0] + o.h[0], self.h[1] + o.h[1], self.h[2] + o.h[2]],
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let (a, b) = (self, o);
        Jet {
            v: a.v * b.v,
            g: [a.g[0] * b.v + a.v * b.g[0], a.g[1] * b.v + a.v * b.g[1]],
            h: [
                a.h[0] * b.v + 2.0 * a.g[0] * b.g[0] + a.v * b.h[0],
                a.h[1] * b.v + a.g[0] * b.g[1] + a.g[1] * b.g[0] + a.v * b.h[1],
                a.h[2] * b.v + 2.0 * a.g[1] * b.g[1] + a.v * b.h[2],
            ],
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, c: f64) -> Jet {
        self.v += c;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(f: impl Fn(Jet, Jet) -> Jet, x0: f64, x1: f64) {
        let j = f(Jet::var(x0, 0), Jet::var(x1, 1));
        let e = 1e-5;
        let val = |a: f64, b: f64| f(Jet::constant(a), Jet::constant(b)).v;
        let g0 = (val(x0 + e, x1) - val(x0 - e, x1)) / (2.0 * e);
        let g1 = (val(x0, x1 + e) - val(x0, x1 - e)) / (2.0 * e);
        assert!((j.g[0] - g0).abs() < 1e-7, "{} vs {}", j.g[0], g0);
        assert!((j.g[1] - g1).abs() < 1e-7);
        let e = 1e-4;
        let h00 = (val(x0 + e, x1) - 2.0 * val(x0, x1) + val(x0 - e, x1)) / (e * e);
        let h11 = (val(x0, x1 + e) - 2.0 * val(x0, x1) + val(x0, x1 - e)) / (e * e);
        let h01 = (val(x0 + e, x1 + e) - val(x0 + e, x1 - e) - val(x0 - e, x1 + e)
            + val(x0 - e, x1 - e))
            / (4.0 * e * e);
        assert!((j.h[0] - h00).abs() < 1e-5, "{} vs {}", j.h[0], h00);
        assert!((j.h[1] - h01).abs() < 1e-5, "{} vs {}", j.h[1], h01);
        assert!((j.h[2] - h11).abs() < 1e-5, "{} vs {}", j.h[2], h11);
    }

    #[test]
    fn products_and_quotients_match_finite_differences() {
        fd_check(|a, b| a * b.sin() / (a + b * b + 1.0), 0.3, 1.1);
        fd_check(|a, b| ((b - a) * 0.5).tan() * (a.cos() + 2.0), 0.2, 1.4);
        fd_check(|a, b| -(a * a * b).recip(), 0.7, -1.3);
    }
}
