use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode::LinearODE2;
use crate::path::{Interval, Jet, TrialPath};
use crate::quadrature::integrate_adaptive;

const NODES: usize = 65;
const ZERO_SCAN: usize = 512;

/// y2 = y1·I with I(x) = ∫_{x_ref}^{x} dt/(E_s y1²).
///
/// I is tabulated at equispaced nodes over the span and completed at any
/// evaluation point by adaptive quadrature from the nearest node, so the
/// derivatives I′ = 1/(E_s y1²) and I″ = −I′(B + 2y1′/y1) are exact.
pub struct ReducedPath {
    ode: LinearODE2,
    y1: Arc<dyn TrialPath>,
    span: Interval,
    nodes: Vec<f64>,
    integrals: Vec<f64>,
    tol: f64,
}

impl ReducedPath {
    fn integrand(&self, t: f64) -> Result<f64> {
        integrand(&self.ode, &*self.y1, t)
    }
}

fn integrand(ode: &LinearODE2, y1: &dyn TrialPath, t: f64) -> Result<f64> {
    let y = y1.eval(t)?.y;
    if y == 0.0 {
        return Err(Error::guard("first solution vanishes", t));
    }
    Ok(1.0 / (ode.es(t)? * y * y))
}

/// Second solution by reduction of order over `span` (which must contain
/// `x_ref`). Fails when y1 has a zero in the span.
pub fn second_solution_reduction(
    ode: &LinearODE2,
    y1: Arc<dyn TrialPath>,
    x_ref: f64,
    span: Interval,
) -> Result<ReducedPath> {
    if !(span.lo <= x_ref && x_ref <= span.hi) {
        return Err(Error::domain("reference point outside the reduction span", x_ref));
    }
    let mut peak: f64 = 0.0;
    let mut prev_sign = 0.0;
    for i in 0..=ZERO_SCAN {
        let x = span.lo + span.width() * i as f64 / ZERO_SCAN as f64;
        let y = y1.eval(x)?.y;
        let sign = y.signum();
        if y == 0.0 || (prev_sign != 0.0 && sign != prev_sign) {
            return Err(Error::guard("first solution has a zero inside the reduction span", x));
        }
        prev_sign = sign;
        peak = peak.max(integrand(ode, &*y1, x)?.abs());
    }
    let tol = 1e-14 * peak.max(1e-300) * span.width().max(1.0);
    let nodes: Vec<f64> = (0..NODES)
        .map(|i| span.lo + span.width() * i as f64 / (NODES - 1) as f64)
        .collect();
    // Integrate outward from the node nearest x_ref.
    let start = nodes
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - x_ref).abs().total_cmp(&(b.1 - x_ref).abs()))
        .map(|(i, _)| i)
        .unwrap();
    let mut integrals = vec![0.0; NODES];
    let f = |t: f64| integrand(ode, &*y1, t);
    integrals[start] = integrate_adaptive(f, x_ref, nodes[start], tol)?;
    for i in start + 1..NODES {
        integrals[i] = integrals[i - 1] + integrate_adaptive(f, nodes[i - 1], nodes[i], tol)?;
    }
    for i in (0..start).rev() {
        integrals[i] = integrals[i + 1] + integrate_adaptive(f, nodes[i + 1], nodes[i], tol)?;
    }
    Ok(ReducedPath {
        ode: ode.clone(),
        y1,
        span,
        nodes,
        integrals,
        tol,
    })
}

impl TrialPath for ReducedPath {
    fn eval(&self, x: f64) -> Result<Jet> {
        if !(self.span.lo <= x && x <= self.span.hi) {
            return Err(Error::domain("outside the reduction span", x));
        }
        let h = self.span.width() / (NODES - 1) as f64;
        let i = (((x - self.span.lo) / h).round() as usize).min(NODES - 1);
        let integral = self.integrals[i] + integrate_adaptive(|t| self.integrand(t), self.nodes[i], x, self.tol)?;
        let j1 = self.y1.eval(x)?;
        let d1 = self.integrand(x)?;
        let d2 = -d1 * (self.ode.b_at(x)? + 2.0 * j1.dy / j1.y);
        Ok(Jet::new(
            j1.y * integral,
            j1.dy * integral + j1.y * d1,
            j1.d2y * integral + 2.0 * j1.dy * d1 + j1.y * d2,
        ))
    }

    fn domain(&self) -> Interval {
        self.ode.domain
    }
}
