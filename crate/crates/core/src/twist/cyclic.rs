//! Linear solves with the symmetric cyclic-tridiagonal action Hessian.

use super::Hessian;

/// Solves `(H + shift·I) x = rhs` in `O(q)`.
///
/// `q ≥ 3` uses the Thomas algorithm with a Sherman–Morrison correction for
/// the two corner entries; `q ≤ 2` is solved directly. Returns `None` on a
/// vanishing pivot or a non-finite result.
pub fn solve_cyclic_tridiagonal(h: &Hessian, shift: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let q = h.diag.len();
    assert_eq!(rhs.len(), q);
    let d: Vec<f64> = h.diag.iter().map(|x| x + shift).collect();
    let x = match q {
        0 => Vec::new(),
        1 => {
            let a = d[0] + 2.0 * h.off[0];
            vec![rhs[0] / nonzero(a)?]
        }
        2 => {
            let c = h.off[0] + h.off[1];
            let det = nonzero(d[0] * d[1] - c * c)?;
            vec![(d[1] * rhs[0] - c * rhs[1]) / det, (d[0] * rhs[1] - c * rhs[0]) / det]
        }
        _ => {
            let corner = h.off[q - 1];
            let sub = &h.off[..q - 1];
            let gamma = if d[0] != 0.0 { -d[0] } else { -1.0 };
            let mut dm = d.clone();
            dm[0] -= gamma;
            dm[q - 1] -= corner * corner / gamma;
            let y = thomas(sub, &dm, rhs)?;
            let mut u = vec![0.0; q];
            u[0] = gamma;
            u[q - 1] = corner;
            let z = thomas(sub, &dm, &u)?;
            let vy = y[0] + corner / gamma * y[q - 1];
            let vz = z[0] + corner / gamma * z[q - 1];
            let denom = nonzero(1.0 + vz)?;
            let f = vy / denom;
            y.iter().zip(&z).map(|(yi, zi)| yi - f * zi).collect()
        }
    };
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn nonzero(x: f64) -> Option<f64> {
    (x != 0.0 && x.is_finite()).then_some(x)
}

/// Symmetric tridiagonal solve; `off[k]` couples rows `k` and `k+1`.
fn thomas(off: &[f64], diag: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut b = nonzero(diag[0])?;
    c[0] = if n > 1 { off[0] / b } else { 0.0 };
    x[0] = rhs[0] / b;
    for i in 1..n {
        b = nonzero(diag[i] - off[i - 1] * c[i - 1])?;
        if i + 1 < n {
            c[i] = off[i] / b;
        }
        x[i] = (rhs[i] - off[i - 1] * x[i - 1]) / b;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    proptest! {
        #[test]
        fn solves_diagonally_dominant_systems(
            q in 1usize..40,
            seed in proptest::collection::vec(-1.0f64..1.0, 120),
        ) {
            let off: Vec<f64> = (0..q).map(|k| seed[k] * 0.4).collect();
            let diag: Vec<f64> = (0..q).map(|k| 2.0 + seed[40 + k].abs()).collect();
            let rhs: Vec<f64> = (0..q).map(|k| seed[80 + k]).collect();
            let h = Hessian { diag, off };
            let x = solve_cyclic_tridiagonal(&h, 0.0, &rhs).unwrap();
            let r = mat_vec(&h.to_dense(), &x);
            for (a, b) in r.iter().zip(&rhs) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn shift_is_added_to_diagonal() {
        let h = Hessian { diag: vec![1.0, 1.0, 1.0, 1.0], off: vec![-0.5; 4] };
        // H annihilates the constant vector, so (H + μI)·1 = μ·1
        let x = solve_cyclic_tridiagonal(&h, 1e-3, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(x.iter().all(|v| (v - 1000.0).abs() < 1e-6));
    }
}
