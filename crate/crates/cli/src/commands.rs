use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use billiard_beta::billiards::{bounce_angle, bounce_polygon, make_system, ModelTag};
use billiard_beta::geometry::{make_named, radon_check, NamedFamily, SupportDomain};
use billiard_beta::rigidity::{
    constant_width_equality, gutkin_equality_check, invariant_curve_check, outer_counterexample,
    outer_quarter_relation, outer_third_relation, verify_main_inequality, write_csv, write_jsonl, InequalityReport,
    Theorem, Tolerances,
};
use billiard_beta::twist::{
    beta_irrational, farey, minimize_periodic, toy_table, MinimizeOptions, RotationNumber, ToySystem, TrigPotential,
};
use billiard_beta::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::{BetaArgs, DomainArgs, Format, SweepArgs, ToyArgs, VerifyArgs};

pub enum Failure {
    Usage(String),
    Numeric(String),
    Io(io::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::GapViolation { .. } | Error::Geometry(_) => {
                Failure::Numeric(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

const OK: u8 = 0;
const VIOLATION: u8 = 1;
const NOT_CONVERGED: u8 = 3;

type Run = Result<u8, Failure>;

/// Domain, a label for tables, and the named family when there is one.
fn load_domain(args: &DomainArgs, default: &str) -> Result<(SupportDomain, String, Option<NamedFamily>), Failure> {
    if let Some(path) = &args.domain_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let dom: SupportDomain = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok((dom, path.display().to_string(), None));
    }
    let spec = args.domain.as_deref().unwrap_or(default);
    let family: NamedFamily = spec.parse()?;
    Ok((make_named(family)?, spec.to_string(), Some(family)))
}

fn parse_rots(raw: &[String]) -> Result<Vec<RotationNumber>, Failure> {
    raw.iter()
        .map(|s| {
            let r: RotationNumber = s.parse()?;
            let v = r.value();
            if !(v > 0.0 && v <= 0.5) {
                return Err(Failure::Usage(format!("rotation number {s} outside (0, 1/2]")));
            }
            Ok(r)
        })
        .collect()
}

fn opts(seed: u64) -> MinimizeOptions {
    MinimizeOptions { seed, ..Default::default() }
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct BetaRow {
    model: ModelTag,
    rot: RotationNumber,
    beta: f64,
    lower: f64,
    upper: f64,
    converged: bool,
}

fn beta_row(dom: &SupportDomain, model: ModelTag, rot: RotationNumber, o: &MinimizeOptions) -> Result<BetaRow, Error> {
    let sys = make_system(dom, model);
    match rot {
        RotationNumber::Rational { p, q } => {
            let r = minimize_periodic(&sys, p, q, o)?;
            Ok(BetaRow { model, rot, beta: r.beta, lower: r.beta, upper: r.beta, converged: r.converged })
        }
        RotationNumber::Irrational { omega, tol } => {
            let b = beta_irrational(&sys, omega, tol, o)?;
            Ok(BetaRow { model, rot, beta: b.beta, lower: b.lower, upper: b.upper, converged: b.converged })
        }
    }
}

pub fn beta(a: &BetaArgs) -> Run {
    let (dom, label, _) = load_domain(&a.domain, "disk:1")?;
    let models: Vec<ModelTag> = if a.models.is_empty() {
        ModelTag::ALL.to_vec()
    } else {
        a.models.iter().map(|m| m.parse()).collect::<Result<_, _>>()?
    };
    let rots = parse_rots(&a.rots)?;
    let mut jobs = Vec::new();
    for &m in &models {
        for &r in &rots {
            if m.accepts(r.value()) {
                jobs.push((m, r));
            } else if a.models.is_empty() {
                eprintln!("note: {m} skipped at {r}");
            } else {
                return Err(Failure::Usage(format!("{m} billiard is not defined at rotation number {r}")));
            }
        }
    }
    let o = opts(a.common.seed);
    let rows = jobs
        .par_iter()
        .map(|&(m, r)| beta_row(&dom, m, r, &o))
        .collect::<Result<Vec<_>, _>>()?;

    let mut w = output(a.common.out.as_deref())?;
    match a.common.format {
        Format::Csv => {
            writeln!(w, "domain,model,rho,beta,lower,upper,converged")?;
            for r in &rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    csv_field(&label),
                    r.model,
                    r.rot,
                    r.beta,
                    r.lower,
                    r.upper,
                    r.converged
                )?;
            }
        }
        Format::Json => {
            for r in &rows {
                let v = json!({
                    "domain": label, "model": r.model, "rho": r.rot, "beta": r.beta,
                    "lower": r.lower, "upper": r.upper, "converged": r.converged,
                });
                writeln!(w, "{v}")?;
            }
        }
    }
    w.flush()?;
    Ok(if rows.iter().all(|r| r.converged) { OK } else { NOT_CONVERGED })
}

enum Target {
    Theorem(Theorem),
    Gutkin,
    ConstWidth,
    Radon,
}

fn parse_target(s: &str) -> Result<Target, Failure> {
    Ok(match s.trim().to_ascii_lowercase().as_str() {
        "gutkin" => Target::Gutkin,
        "constwidth" | "constant_width" | "cw" => Target::ConstWidth,
        "radon" => Target::Radon,
        _ => Target::Theorem(s.parse()?),
    })
}

/// Spread of pinned actions below which the invariant-curve hypothesis counts
/// as satisfied.
const CURVE_SPREAD: f64 = 1e-8;

pub fn verify(a: &VerifyArgs) -> Run {
    let target = parse_target(&a.theorem)?;
    if !(a.eq_tol > 0.0 && a.num_tol >= 0.0) {
        return Err(Failure::Usage("tolerances must be positive".into()));
    }
    let tol = Tolerances { eq_tol: a.eq_tol, num_tol: a.num_tol };
    let o = opts(a.common.seed);
    let default_domain = match target {
        Target::Gutkin => "gutkin:4,0.02",
        Target::ConstWidth => "constant_width:0.05,3",
        Target::Theorem(Theorem::CE6_5) => "squeezed:0.1",
        _ => "disk:1",
    };
    let (dom, label, family) = load_domain(&a.domain, default_domain)?;
    let rots = parse_rots(&a.rots)?;
    let no_rot = |what: &str| -> Result<(), Failure> {
        if rots.is_empty() {
            Ok(())
        } else {
            Err(Failure::Usage(format!("{what} takes no --rot")))
        }
    };

    // every statement except the equality checks passes when its reports hold
    let mut need_equality = false;
    let reports: Vec<InequalityReport> = match target {
        Target::Radon => {
            no_rot("radon")?;
            let r = radon_check(&dom, 1e-8);
            let mut w = output(a.common.out.as_deref())?;
            writeln!(w, "{}", json!({ "domain": label, "radon": r }))?;
            w.flush()?;
            return Ok(if r.is_radon { OK } else { VIOLATION });
        }
        Target::Gutkin => {
            no_rot("gutkin")?;
            let Some(NamedFamily::Gutkin { n, eps }) = family else {
                return Err(Failure::Usage("gutkin needs --domain gutkin:N,EPS".into()));
            };
            let n = u32::try_from(n).map_err(|_| Failure::Usage(format!("n = {n} too large")))?;
            need_equality = true;
            vec![gutkin_equality_check(n, eps, &o, &tol)?]
        }
        Target::ConstWidth => {
            no_rot("constwidth")?;
            need_equality = true;
            vec![constant_width_equality(&dom, &o, &tol)?]
        }
        Target::Theorem(t @ (Theorem::T4_2 | Theorem::T4_3 | Theorem::T4_4)) => {
            let rots = if rots.is_empty() { vec![RotationNumber::Rational { p: 1, q: 3 }] } else { rots };
            rots.par_iter()
                .map(|r| verify_main_inequality(&dom, t, r, &o, &tol))
                .collect::<Result<_, _>>()?
        }
        Target::Theorem(Theorem::C6_3) => {
            no_rot("C6.3")?;
            vec![outer_third_relation(&dom, &o, &tol)?]
        }
        Target::Theorem(Theorem::P6_9) => {
            no_rot("P6.9")?;
            vec![outer_quarter_relation(&dom, &o, &tol)?]
        }
        Target::Theorem(Theorem::CE6_5) => {
            let rots = if rots.is_empty() { vec![RotationNumber::Rational { p: 1, q: 4 }] } else { rots };
            rots.iter()
                .map(|r| outer_counterexample(&dom, r, &o, &tol))
                .collect::<Result<_, _>>()?
        }
        Target::Theorem(t @ (Theorem::T6_4 | Theorem::T6_10)) => {
            no_rot(t.as_str())?;
            vec![invariant_curve_check(&dom, if t == Theorem::T6_4 { 3 } else { 4 }, &o, &tol)?]
        }
    };

    let mut w = output(a.common.out.as_deref())?;
    match a.common.format {
        Format::Json => write_jsonl(&mut w, &reports)?,
        Format::Csv => {
            let rows: Vec<(String, InequalityReport)> = reports.iter().map(|r| (label.clone(), r.clone())).collect();
            write_csv(&mut w, &rows)?;
        }
    }
    w.flush()?;
    for r in &reports {
        if let Some(n) = &r.note {
            eprintln!("{} at {}: {n}", r.theorem, r.rho);
        }
    }

    if reports.iter().any(|r| !r.converged) {
        return Ok(NOT_CONVERGED);
    }
    let fails = |r: &InequalityReport| {
        if need_equality {
            // the defect certifies the mechanism: criticality or constant width
            return !r.equality || r.defect.is_some_and(|d| d >= 1e-9);
        }
        let hypothesis = !matches!(r.theorem, Theorem::T6_4 | Theorem::T6_10) || r.defect.is_some_and(|d| d < CURVE_SPREAD);
        hypothesis && !r.holds
    };
    Ok(if reports.iter().any(fails) { VIOLATION } else { OK })
}

/// Reduced `p/q` strictly inside `(0, 1/2)` with `q ≤ q_max`.
fn sweep_grid(q_max: u64) -> Vec<(i64, u64)> {
    farey(q_max, 0.0, 0.5).into_iter().filter(|&(p, q)| p > 0 && 2 * p as u64 != q).collect()
}

pub struct SweepRow {
    pub model: ModelTag,
    pub p: i64,
    pub q: u64,
    pub beta: f64,
    pub converged: bool,
}

pub fn sweep(a: &SweepArgs) -> Run {
    let (dom, label, _) = load_domain(&a.domain, "disk:1")?;
    let grid = sweep_grid(a.qmax);
    if grid.is_empty() {
        return Err(Failure::Usage(format!("--qmax {} gives an empty grid", a.qmax)));
    }
    let o = opts(a.common.seed);
    let jobs: Vec<(ModelTag, i64, u64)> =
        ModelTag::ALL.iter().flat_map(|&m| grid.iter().map(move |&(p, q)| (m, p, q))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(model, p, q)| {
            minimize_periodic(&make_system(&dom, model), p, q, &o)
                .map(|r| SweepRow { model, p, q, beta: r.beta, converged: r.converged })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut w = output(a.common.out.as_deref())?;
    match a.common.format {
        Format::Csv => {
            writeln!(w, "domain,model,p,q,rho,beta,converged")?;
            for r in &rows {
                let rho = r.p as f64 / r.q as f64;
                writeln!(w, "{},{},{},{},{rho},{},{}", csv_field(&label), r.model, r.p, r.q, r.beta, r.converged)?;
            }
        }
        Format::Json => {
            for r in &rows {
                let v = json!({
                    "domain": label, "model": r.model, "p": r.p, "q": r.q,
                    "rho": r.p as f64 / r.q as f64, "beta": r.beta, "converged": r.converged,
                });
                writeln!(w, "{v}")?;
            }
        }
    }
    w.flush()?;

    if a.svg.is_some() || a.orbit.is_some() {
        let orbit = minimize_periodic(&make_system(&dom, ModelTag::Birkhoff), 1, 3, &o)?;
        let bounces = bounce_polygon(&dom, &orbit.config);
        if let Some(path) = &a.orbit {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "k,phi,x,y")?;
            for (k, pt) in bounces.iter().enumerate() {
                let phi = bounce_angle(&orbit.config, k as isize).rem_euclid(std::f64::consts::TAU);
                writeln!(w, "{k},{phi},{},{}", pt.x, pt.y)?;
            }
            w.flush()?;
        }
        if let Some(path) = &a.svg {
            let mut w = BufWriter::new(File::create(path)?);
            crate::svg::write_sweep(&mut w, &label, &rows, &dom, &bounces)?;
            w.flush()?;
        }
    }
    Ok(if rows.iter().all(|r| r.converged) { OK } else { NOT_CONVERGED })
}

fn parse_term(s: &str) -> Result<(u32, f64, f64), Failure> {
    let bad = || Failure::Usage(format!("term '{s}': expected N,A,B"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, a, b] = parts.as_slice() else {
        return Err(bad());
    };
    let n: u32 = n.parse().map_err(|_| bad())?;
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((n, a, b))
}

pub fn toy(a: &ToyArgs) -> Run {
    let v = match a.kappa {
        Some(k) if k.is_finite() => TrigPotential::standard(k),
        Some(k) => return Err(Failure::Usage(format!("--kappa {k} is not finite"))),
        None => TrigPotential::new(a.terms.iter().map(|t| parse_term(t)).collect::<Result<_, _>>()?),
    };
    if a.qmax == 0 {
        return Err(Failure::Usage("--qmax must be positive".into()));
    }
    let sys = ToySystem::quadratic(&v);
    let grid = farey(a.qmax, 0.0, 1.0);
    let o = opts(a.common.seed);
    let rows = grid
        .par_iter()
        .map(|&pq| toy_table(&sys, &[pq], &o).map(|mut r| r.remove(0)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut w = output(a.common.out.as_deref())?;
    match a.common.format {
        Format::Csv => {
            writeln!(w, "p,q,rho,beta_v,beta_0,gap,converged")?;
            for r in &rows {
                let rho = r.p as f64 / r.q as f64;
                writeln!(w, "{},{},{rho},{},{},{},{}", r.p, r.q, r.beta_v, r.beta_0, r.gap, r.converged)?;
            }
        }
        Format::Json => {
            for r in &rows {
                writeln!(w, "{}", serde_json::to_string(r).map_err(io::Error::other)?)?;
            }
        }
    }
    w.flush()?;
    if rows.iter().any(|r| !r.converged) {
        return Ok(NOT_CONVERGED);
    }
    Ok(if rows.iter().any(|r| r.gap < -a.num_tol) { VIOLATION } else { OK })
}
