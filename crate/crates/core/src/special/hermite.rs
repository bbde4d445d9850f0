use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode::{make_hermite, LinearODE2};
use crate::path::{Jet, PolyPath, TrialPath};

use super::reduction::second_solution_reduction;
use super::rk::rk_integrate;

/// Point at which Hermite second solutions are seeded.
pub const HERMITE_SEED_X: f64 = 1.0;

fn he_values(n: usize, x: f64) -> Vec<f64> {
    let mut v = vec![1.0, x];
    for k in 1..n {
        let next = x * v[k] - k as f64 * v[k - 1];
        v.push(next);
    }
    v.truncate(n + 1);
    v
}

/// He_n with He_n′ = n He_{n−1} and He_n″ = n(n−1) He_{n−2}.
pub fn hermite_he(n: i64, x: f64) -> Result<Jet> {
    if n < 0 {
        return Err(Error::InvalidParameter(format!(
            "Hermite polynomials need n >= 0, got {n}"
        )));
    }
    let n = n as usize;
    let v = he_values(n, x);
    let nf = n as f64;
    let d1 = if n >= 1 { nf * v[n - 1] } else { 0.0 };
    let d2 = if n >= 2 { nf * (nf - 1.0) * v[n - 2] } else { 0.0 };
    Ok(Jet::new(v[n], d1, d2))
}

/// Power-series coefficients of He_n, lowest degree first.
pub fn hermite_he_coeffs(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Second Hermite solution h_n on the guarded sampling window.
///
/// Reduction of order is used when He_n has no zero in the window; otherwise
/// the integrator is seeded at x = 1 with (h, h′) = (−He_n′(1), He_n(1)),
/// which makes the Wronskian with He_n equal −(He_n² + He_n′²) there.
pub fn hermite_second(n: i64) -> Result<Arc<dyn TrialPath>> {
    hermite_second_for(&make_hermite(n))
}

pub(crate) fn hermite_second_for(ode: &LinearODE2) -> Result<Arc<dyn TrialPath>> {
    let n = ode.params["n"] as i64;
    let w = ode.guarded_window();
    let he = hermite_he(n, HERMITE_SEED_X)?;
    let y1: Arc<dyn TrialPath> = Arc::new(PolyPath::new(hermite_he_coeffs(n as usize)));
    match second_solution_reduction(ode, y1, HERMITE_SEED_X, w) {
        Ok(p) => Ok(Arc::new(p)),
        Err(Error::Guard { .. }) => Ok(Arc::new(rk_integrate(
            ode,
            -he.dy,
            he.y,
            HERMITE_SEED_X,
            &[w.lo, w.hi],
        )?)),
        Err(e) => Err(e),
    }
}
