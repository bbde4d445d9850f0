//! Dormand–Prince 5(4) integration of y″ = −B y′ − C y, used as an
//! independent oracle for the closed-form and series evaluators.

use crate::error::{Error, Result};
use crate::ode::LinearODE2;
use crate::path::{Interval, Jet, TrialPath};

const TOL: f64 = 1e-11;
const MAX_STEPS: usize = 1_000_000;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [f64; 2];

fn rhs(ode: &LinearODE2, x: f64, s: State) -> Result<State> {
    Ok([s[1], -ode.b_at(x)? * s[1] - ode.c_at(x)? * s[0]])
}

fn axpy(s: State, h: f64, terms: &[(f64, State)]) -> State {
    let mut out = s;
    for (a, k) in terms {
        out[0] += h * a * k[0];
        out[1] += h * a * k[1];
    }
    out
}

/// One step from (x, s) with derivative k1 at the start; returns the new
/// state, its derivative (FSAL) and the scaled error estimate.
fn step(ode: &LinearODE2, x: f64, s: State, k1: State, h: f64) -> Result<(State, State, f64)> {
    let k2 = rhs(ode, x + C2 * h, axpy(s, h, &[(A21, k1)]))?;
    let k3 = rhs(ode, x + C3 * h, axpy(s, h, &[(A31, k1), (A32, k2)]))?;
    let k4 = rhs(ode, x + C4 * h, axpy(s, h, &[(A41, k1), (A42, k2), (A43, k3)]))?;
    let k5 = rhs(ode, x + C5 * h, axpy(s, h, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)]))?;
    let k6 = rhs(ode, x + h, axpy(s, h, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)]))?;
    let new = axpy(s, h, &[(B1, k1), (B3, k3), (B4, k4), (B5, k5), (B6, k6)]);
    let k7 = rhs(ode, x + h, new)?;
    let mut err: f64 = 0.0;
    for i in 0..2 {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let sc = TOL + TOL * s[i].abs().max(new[i].abs());
        err = err.max((e / sc).abs());
    }
    Ok((new, k7, err))
}

/// Adaptive integration from (x0, s0) to x1; accepted points are passed to
/// `visit`.
fn integrate(ode: &LinearODE2, x0: f64, s0: State, x1: f64, mut visit: impl FnMut(f64, State)) -> Result<State> {
    if x0 == x1 {
        return Ok(s0);
    }
    let dir = (x1 - x0).signum();
    let mut h = dir * (0.01 * (x1 - x0).abs()).min(0.01);
    let (mut x, mut s) = (x0, s0);
    let mut k1 = rhs(ode, x, s)?;
    for _ in 0..MAX_STEPS {
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        let (new, k7, err) = step(ode, x, s, k1, h)?;
        if err <= 1.0 {
            x = if (x + h - x1) * dir >= 0.0 { x1 } else { x + h };
            s = new;
            k1 = k7;
            if !(s[0].is_finite() && s[1].is_finite()) {
                return Err(Error::NonFinite {
                    what: "integrated solution overflowed".into(),
                    x,
                });
            }
            visit(x, s);
            if x == x1 {
                return Ok(s);
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * x.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { x });
        }
    }
    Err(Error::StepSizeUnderflow { x })
}

/// Tabulated integration of one solution, shareable across threads.
#[derive(Debug, Clone)]
pub struct RkPath {
    ode: LinearODE2,
    xs: Vec<f64>,
    states: Vec<State>,
}

impl RkPath {
    /// Range covered by the stored integration nodes.
    pub fn span(&self) -> Interval {
        Interval::new(self.xs[0], *self.xs.last().unwrap())
    }
}

impl TrialPath for RkPath {
    fn eval(&self, x: f64) -> Result<Jet> {
        if !self.ode.domain.contains(x) {
            return Err(Error::domain("outside the equation's domain", x));
        }
        let i = match self.xs.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i == self.xs.len() || x - self.xs[i - 1] < self.xs[i] - x {
                    i - 1
                } else {
                    i
                }
            }
        };
        let s = integrate(&self.ode, self.xs[i], self.states[i], x, |_, _| {})?;
        let d2 = -self.ode.b_at(x)? * s[1] - self.ode.c_at(x)? * s[0];
        Ok(Jet::new(s[0], s[1], d2))
    }

    fn domain(&self) -> Interval {
        self.ode.domain
    }
}

/// Integrate from (x0, y0, y0′) across every point of `xs`.
pub fn rk_integrate(ode: &LinearODE2, y0: f64, yprime0: f64, x0: f64, xs: &[f64]) -> Result<RkPath> {
    let inside = |x: f64| ode.domain.contains(x);
    if !inside(x0) {
        return Err(Error::domain("initial point outside the domain", x0));
    }
    let lo = xs.iter().copied().fold(x0, f64::min);
    let hi = xs.iter().copied().fold(x0, f64::max);
    for x in [lo, hi] {
        if !inside(x) {
            return Err(Error::domain("integration grid leaves the domain", x));
        }
    }
    let s0 = [y0, yprime0];
    let mut left = Vec::new();
    integrate(ode, x0, s0, lo, |x, s| left.push((x, s)))?;
    let mut right = Vec::new();
    integrate(ode, x0, s0, hi, |x, s| right.push((x, s)))?;
    left.reverse();
    left.push((x0, s0));
    left.extend(right);
    let (xs, states) = left.into_iter().unzip();
    Ok(RkPath {
        ode: ode.clone(),
        xs,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{make_airy, make_custom_from_text, make_legendre};
    use crate::special::{airy_ai, legendre_p};
    use std::collections::BTreeMap;

    #[test]
    fn harmonic_oscillator_gives_sine() {
        let ode = make_custom_from_text("0", "1", Interval::REAL, BTreeMap::new()).unwrap();
        let p = rk_integrate(&ode, 0.0, 1.0, 0.0, &[-3.0, 6.0]).unwrap();
        for &x in &[-2.9, -1.0, 0.5, 2.0, 5.9] {
            let j = p.eval(x).unwrap();
            assert!((j.y - x.sin()).abs() < 1e-9, "x={x}");
            assert!((j.dy - x.cos()).abs() < 1e-9);
            assert!((j.d2y + x.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn reproduces_airy() {
        let a0 = airy_ai(0.0).unwrap();
        let p = rk_integrate(&make_airy(), a0.y, a0.dy, 0.0, &[-6.0, 3.0]).unwrap();
        assert!((p.eval(1.0).unwrap().y - airy_ai(1.0).unwrap().y).abs() < 1e-8);
        assert!((p.eval(-5.5).unwrap().y - airy_ai(-5.5).unwrap().y).abs() < 1e-8);
    }

    #[test]
    fn reproduces_legendre() {
        let p2 = legendre_p(2, 0.0).unwrap();
        let p = rk_integrate(&make_legendre(2, 0).unwrap(), p2.y, p2.dy, 0.0, &[-0.9, 0.9]).unwrap();
        assert!((p.eval(0.5).unwrap().y + 0.125).abs() < 1e-9);
    }

    #[test]
    fn singular_points_are_rejected() {
        let ode = make_legendre(1, 0).unwrap();
        assert!(rk_integrate(&ode, 1.0, 0.0, 0.0, &[1.0]).is_err());
    }
}
