//! Report output: JSON lines and a CSV summary.

use std::io::{self, Write};

use super::InequalityReport;

/// One JSON object per line, in input order.
pub fn write_jsonl<W: Write>(mut w: W, reports: &[InequalityReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// `domain,theorem,rho,lhs,rhs,gap,holds,equality` rows.
pub fn write_csv<W: Write>(mut w: W, rows: &[(String, InequalityReport)]) -> io::Result<()> {
    writeln!(w, "domain,theorem,rho,lhs,rhs,gap,holds,equality")?;
    for (id, r) in rows {
        writeln!(
            w,
            "{},{},{},{:.15e},{:.15e},{:.6e},{},{}",
            csv_field(id),
            r.theorem,
            r.rho,
            r.lhs,
            r.rhs,
            r.gap,
            r.holds,
            r.equality
        )?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::{Theorem, Tolerances};
    use crate::twist::RotationNumber;

    #[test]
    fn csv_and_jsonl() {
        let r = InequalityReport::new(Theorem::T4_2, RotationNumber::Rational { p: 1, q: 3 }, -2.0, -1.0, &Tolerances::default());
        let mut buf = Vec::new();
        write_csv(&mut buf, &[("gutkin:4,0.05".into(), r.clone())]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 2);
        assert!(s.lines().nth(1).unwrap().starts_with("\"gutkin:4,0.05\",T4.2,1/3,"));

        let mut buf = Vec::new();
        write_jsonl(&mut buf, &[r.clone(), r]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let v: serde_json::Value = serde_json::from_str(s.lines().next().unwrap()).unwrap();
        assert_eq!(v["theorem"], "T4.2");
        assert_eq!(v["rho"], "1/3");
        assert_eq!(v["holds"], true);
        assert!(v.get("note").is_none());
    }
}
