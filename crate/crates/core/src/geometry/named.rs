use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{fourier, SupportDomain};
use crate::error::{Error, Result};

/// Mode count for families that are not trigonometric polynomials.
pub const PROJECTED_MODES: usize = 64;

/// Width parameter of the squeezing cap `exp(−(1 − cos(φ − π/2))/σ²)`.
const SQUEEZE_SIGMA: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFamily {
    Disk { radius: f64 },
    Ellipse { a: f64, b: f64 },
    /// `h = 1 + ε cos(nφ)`.
    Gutkin { n: usize, eps: f64 },
    /// `h = 1 + ε cos(nφ)` with `n` odd.
    ConstantWidth { eps: f64, n: usize },
    /// Unit disk flattened near the top, rescaled to area `π`.
    SqueezedDisk { eps: f64 },
}

pub fn make_named(family: NamedFamily) -> Result<SupportDomain> {
    match family {
        NamedFamily::Disk { radius } => SupportDomain::disk(radius),
        NamedFamily::Ellipse { a, b } => {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::NonConvex(format!("ellipse semi-axes must be positive, got {a}, {b}")));
            }
            projected(|p| (a * a * p.cos().powi(2) + b * b * p.sin().powi(2)).sqrt())
        }
        NamedFamily::Gutkin { n, eps } | NamedFamily::ConstantWidth { eps, n } => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("mode index must be ≥ 2, got {n}")));
            }
            if matches!(family, NamedFamily::ConstantWidth { .. }) && n % 2 == 0 {
                return Err(Error::InvalidArgument(format!("constant width needs odd n, got {n}")));
            }
            let limit = 1.0 / ((n * n - 1) as f64);
            if eps.abs() >= limit {
                return Err(Error::NonConvex(format!("|ε| = {} ≥ 1/(n²−1) = {limit}", eps.abs())));
            }
            let mut modes = vec![(0.0, 0.0); n];
            modes[n - 1].0 = eps;
            SupportDomain::new(1.0, modes)
        }
        NamedFamily::SqueezedDisk { eps } => {
            let s2 = SQUEEZE_SIGMA * SQUEEZE_SIGMA;
            let raw = projected(|p| 1.0 - eps * (-(1.0 - (p - PI / 2.0).cos()) / s2).exp())?;
            raw.scaled((PI / raw.area()).sqrt())
        }
    }
}

fn projected<F: Fn(f64) -> f64>(f: F) -> Result<SupportDomain> {
    let mut last = None;
    for n in [PROJECTED_MODES, 2 * PROJECTED_MODES, 4 * PROJECTED_MODES] {
        match fourier::project(&f, n, 1e-12) {
            Ok((a0, modes)) => return SupportDomain::new(a0, modes),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one projection attempted"))
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedFamily::Disk { radius } => write!(f, "disk:{radius}"),
            NamedFamily::Ellipse { a, b } => write!(f, "ellipse:{a},{b}"),
            NamedFamily::Gutkin { n, eps } => write!(f, "gutkin:{n},{eps}"),
            NamedFamily::ConstantWidth { eps, n } => write!(f, "constant_width:{eps},{n}"),
            NamedFamily::SqueezedDisk { eps } => write!(f, "squeezed:{eps}"),
        }
    }
}

/// Parses `disk:1`, `ellipse:2,1`, `gutkin:4,0.05`, `constant_width:0.05,3`
/// (alias `cw`) and `squeezed:0.1`.
impl FromStr for NamedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<&str> = params.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let real = |i: usize| -> Result<f64> {
            nums.get(i)
                .ok_or_else(|| Error::Parse(format!("{s}: missing parameter {}", i + 1)))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))
        };
        let int = |i: usize| -> Result<usize> {
            nums.get(i)
                .ok_or_else(|| Error::Parse(format!("{s}: missing parameter {}", i + 1)))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))
        };
        let expect = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("{s}: expected {k} parameter(s), got {}", nums.len())))
            }
        };
        match name {
            "disk" => {
                expect(1)?;
                Ok(NamedFamily::Disk { radius: real(0)? })
            }
            "ellipse" => {
                expect(2)?;
                Ok(NamedFamily::Ellipse { a: real(0)?, b: real(1)? })
            }
            "gutkin" => {
                expect(2)?;
                Ok(NamedFamily::Gutkin { n: int(0)?, eps: real(1)? })
            }
            "constant_width" | "cw" | "constwidth" => {
                expect(2)?;
                Ok(NamedFamily::ConstantWidth { eps: real(0)?, n: int(1)? })
            }
            "squeezed" | "squeezed_disk" => {
                expect(1)?;
                Ok(NamedFamily::SqueezedDisk { eps: real(0)? })
            }
            _ => Err(Error::Parse(format!("unknown domain family '{name}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_width_has_constant_width() {
        let d = make_named(NamedFamily::ConstantWidth { eps: 0.05, n: 3 }).unwrap();
        assert!(d.width_defect() < 1e-14);
    }

    #[test]
    fn gutkin_convexity_margin() {
        let d = make_named(NamedFamily::Gutkin { n: 4, eps: 0.05 }).unwrap();
        let (_, min_rho) = d.grid_minima();
        assert!((min_rho - 0.25).abs() < 1e-12);
        assert!(make_named(NamedFamily::Gutkin { n: 4, eps: 0.07 }).is_err());
    }

    #[test]
    fn squeezed_disk_has_unit_disk_area() {
        let d = make_named(NamedFamily::SqueezedDisk { eps: 0.1 }).unwrap();
        assert!((d.area() - PI).abs() < 1e-10);
        assert!(d.nontrivial_energy() > 1e-4);
        assert!(make_named(NamedFamily::SqueezedDisk { eps: 0.5 }).is_err());
    }

    #[test]
    fn ellipse_projection() {
        let e = make_named(NamedFamily::Ellipse { a: 2.0, b: 1.0 }).unwrap();
        assert_eq!(e.max_mode(), PROJECTED_MODES);
        // arclength quadrature oracle value for the exact ellipse
        assert!((e.perimeter() - 9.688448220547675).abs() < 1e-6);
        assert!((e.area() - 2.0 * PI).abs() < 1e-6);
        assert!(e.is_ellipse(1e-12));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["disk:1", "ellipse:2,1", "gutkin:4,0.05", "constant_width:0.05,3", "squeezed:0.1"] {
            let f: NamedFamily = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("disk".parse::<NamedFamily>().is_err());
        assert!("blob:1".parse::<NamedFamily>().is_err());
        assert!("ellipse:2".parse::<NamedFamily>().is_err());
    }
}
