//! Comparison of a domain's β with the disk's, and the equality cases.
//!
//! Each verifier returns an [`InequalityReport`] whose `gap` is oriented so
//! that `gap ≥ 0` means the expected inequality holds.

mod gutkin;
mod outer;
mod report;
mod sample;

pub use gutkin::{gutkin_equality_check, gutkin_roots, in_r, GutkinRootSet};
pub use outer::{
    invariant_curve_check, midpoint_area_defect, outer_counterexample, outer_quarter_relation, outer_third_relation,
    pinned_spread, triangle_midpoint_property,
};
pub use report::{write_csv, write_jsonl};
pub use sample::{random_domain, random_domains};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::billiards::{beta_disk, make_system, ModelTag};
use crate::error::{Error, Result};
use crate::geometry::SupportDomain;
use crate::twist::{beta, minimize_periodic, MinimizeOptions, RotationNumber, TwistSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// Birkhoff: `β(ρ) ≤ |∂Ω|/2π · β_D(ρ)`.
    #[serde(rename = "T4.2")]
    T4_2,
    /// Symplectic: `β(ρ) ≤ |Ω|/π · β_D(ρ)`.
    #[serde(rename = "T4.3")]
    T4_3,
    /// Outer length: `β(ρ) ≤ |∂Ω|/2π · β_D(ρ)`.
    #[serde(rename = "T4.4")]
    T4_4,
    /// `β_out(1/3) + 4 β_symp(1/3) ≤ 0`.
    #[serde(rename = "C6.3")]
    C6_3,
    /// `β_out(1/4) + 2 β_symp(1/4) ≤ 0`.
    #[serde(rename = "P6.9")]
    P6_9,
    /// Outer billiard against the rescaled disk: `β_out(ρ) < |Ω|/π · β_out,D(ρ)` is possible.
    #[serde(rename = "CE6.5")]
    CE6_5,
    /// `β_out(1/3) ≥ |Ω|/π · β_out,D(1/3)` given an invariant curve of 3-periodic points.
    #[serde(rename = "T6.4")]
    T6_4,
    /// `β_out(1/4) ≥ |Ω|/π · β_out,D(1/4)` given invariant curves of 4-periodic points.
    #[serde(rename = "T6.10")]
    T6_10,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::T4_2,
        Theorem::T4_3,
        Theorem::T4_4,
        Theorem::C6_3,
        Theorem::P6_9,
        Theorem::CE6_5,
        Theorem::T6_4,
        Theorem::T6_10,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::T4_2 => "T4.2",
            Theorem::T4_3 => "T4.3",
            Theorem::T4_4 => "T4.4",
            Theorem::C6_3 => "C6.3",
            Theorem::P6_9 => "P6.9",
            Theorem::CE6_5 => "CE6.5",
            Theorem::T6_4 => "T6.4",
            Theorem::T6_10 => "T6.10",
        }
    }

    /// Model and disk normalization of the three main inequalities.
    fn main_model(&self) -> Option<ModelTag> {
        match self {
            Theorem::T4_2 => Some(ModelTag::Birkhoff),
            Theorem::T4_3 => Some(ModelTag::Symplectic),
            Theorem::T4_4 => Some(ModelTag::Fourth),
            _ => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|gap|` below which a report counts as an equality.
    pub eq_tol: f64,
    /// Slack allowed before a negative gap counts as a violation.
    pub num_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eq_tol: 1e-6, num_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub theorem: Theorem,
    pub rho: RotationNumber,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub holds: bool,
    pub equality: bool,
    /// False when some β behind `lhs`/`rhs` did not converge; the report is
    /// then not trustworthy.
    pub converged: bool,
    /// Auxiliary identity residual (midpoint areas, orbit criticality, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InequalityReport {
    /// Report for `lhs ≤ rhs`.
    pub fn new(theorem: Theorem, rho: RotationNumber, lhs: f64, rhs: f64, tol: &Tolerances) -> Self {
        let gap = rhs - lhs;
        InequalityReport {
            theorem,
            rho,
            lhs,
            rhs,
            gap,
            holds: gap >= -tol.num_tol,
            equality: gap.abs() < tol.eq_tol,
            converged: true,
            defect: None,
            note: None,
        }
    }

    fn with_converged(mut self, c: bool) -> Self {
        self.converged = c;
        if !c {
            self.add_note("β did not converge");
        }
        self
    }

    fn add_note(&mut self, msg: &str) {
        self.note = Some(match self.note.take() {
            Some(n) => format!("{n}; {msg}"),
            None => msg.to_string(),
        });
    }
}

/// β with its convergence flag; rational targets use the full minimizer
/// result rather than failing on non-convergence.
pub(crate) fn beta_flagged(sys: &dyn TwistSystem, rot: &RotationNumber, opts: &MinimizeOptions) -> Result<(f64, bool)> {
    match *rot {
        RotationNumber::Rational { p, q } => {
            let r = minimize_periodic(sys, p, q, opts)?;
            Ok((r.beta, r.converged))
        }
        RotationNumber::Irrational { .. } => {
            let r = beta(sys, rot, opts)?;
            Ok((r.beta, r.converged))
        }
    }
}

/// `rhs` of the main inequalities: the disk's β rescaled by perimeter or area.
pub fn disk_bound(dom: &SupportDomain, theorem: Theorem, rho: f64) -> Result<f64> {
    let tag = theorem
        .main_model()
        .ok_or_else(|| Error::InvalidArgument(format!("{theorem} is not one of T4.2, T4.3, T4.4")))?;
    let scale = match theorem {
        Theorem::T4_3 => dom.area() / PI,
        _ => dom.perimeter() / (2.0 * PI),
    };
    Ok(scale * beta_disk(tag, rho)?)
}

/// `β_Ω(ρ)` against the rescaled disk value for T4.2, T4.3 or T4.4.
pub fn verify_main_inequality(
    dom: &SupportDomain,
    theorem: Theorem,
    rot: &RotationNumber,
    opts: &MinimizeOptions,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let rhs = disk_bound(dom, theorem, rot.value())?;
    let tag = theorem.main_model().expect("checked by disk_bound");
    let (lhs, converged) = beta_flagged(&make_system(dom, tag), rot, opts)?;
    Ok(InequalityReport::new(theorem, *rot, lhs, rhs, tol).with_converged(converged))
}

/// Whether an equality report is explained by the domain: disks for T4.2 and
/// T4.4, ellipses for T4.3.
pub fn equality_is_rigid(dom: &SupportDomain, theorem: Theorem) -> bool {
    match theorem {
        Theorem::T4_3 => dom.is_ellipse(1e-10),
        _ => dom.nontrivial_energy() < 1e-10,
    }
}

/// Birkhoff β at 1/2 against `−|∂Ω|/π`, attained by constant width domains.
pub fn constant_width_equality(dom: &SupportDomain, opts: &MinimizeOptions, tol: &Tolerances) -> Result<InequalityReport> {
    let rot = RotationNumber::Rational { p: 1, q: 2 };
    let mut r = verify_main_inequality(dom, Theorem::T4_2, &rot, opts, tol)?;
    let defect = dom.width_defect();
    r.defect = Some(defect);
    if defect >= 1e-10 {
        r.add_note(&format!("not constant width (width defect {defect:.3e})"));
    }
    Ok(r)
}

/// T4.2, T4.3 and T4.4 over every domain and rotation number, in input order.
///
/// Rotation numbers outside a theorem's range are skipped. Each item is
/// `(domain index, report)`.
pub fn inequality_suite(
    domains: &[SupportDomain],
    rots: &[RotationNumber],
    theorems: &[Theorem],
    opts: &MinimizeOptions,
    tol: &Tolerances,
) -> Result<Vec<(usize, InequalityReport)>> {
    let jobs: Vec<(usize, Theorem, RotationNumber)> = domains
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            rots.iter().flat_map(move |r| theorems.iter().map(move |t| (i, *t, *r)))
        })
        .filter(|(_, t, r)| t.main_model().is_some_and(|m| m.accepts(r.value())))
        .collect();
    jobs.par_iter()
        .map(|&(i, t, r)| verify_main_inequality(&domains[i], t, &r, opts, tol).map(|rep| (i, rep)))
        .collect()
}
