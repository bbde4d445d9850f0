//! Riccati and f/g machinery behind the non-standard Lagrangian
//! 1/(f y′ + g y) and its closed form in terms of v̄.

use crate::error::{Error, Result};
use crate::ode::LinearODE2;
use crate::path::{Interval, Jet, TrialPath};
use crate::special::{wronskian, Superposition};

/// |v̄| must exceed this fraction of |c̄1 y1| + |c̄2 y2|.
pub const VBAR_GUARD: f64 = 1e-6;

/// v̄ at x, or a guard error near its zeros.
pub fn vbar_guard(vbar: &Superposition, x: f64) -> Result<Jet> {
    let v = vbar.eval(x)?;
    let amp = vbar.amplitude(x)?;
    if v.y == 0.0 || v.y.abs() < VBAR_GUARD * amp {
        return Err(Error::guard("v̄ is too close to a zero", x));
    }
    Ok(v)
}

/// u = 3 v̄′/v̄ + 2B.
pub fn u_from_vbar(ode: &LinearODE2, vbar: &Superposition, x: f64) -> Result<f64> {
    let v = vbar_guard(vbar, x)?;
    Ok(3.0 * v.dy / v.y + 2.0 * ode.b_at(x)?)
}

/// u as a path; u″ uses v̄‴ from the once-differentiated equation.
pub struct UPath<'a> {
    pub ode: &'a LinearODE2,
    pub vbar: &'a Superposition,
}

pub fn u_path<'a>(ode: &'a LinearODE2, vbar: &'a Superposition) -> UPath<'a> {
    UPath { ode, vbar }
}

impl TrialPath for UPath<'_> {
    fn eval(&self, x: f64) -> Result<Jet> {
        let v = vbar_guard(self.vbar, x)?;
        let c = self.ode.coeffs(x)?;
        let v3 = -c.db * v.dy - c.b * v.d2y - c.dc * v.y - c.c * v.dy;
        let r = v.dy / v.y;
        let r1 = v.d2y / v.y - r * r;
        let r2 = v3 / v.y - 3.0 * v.d2y * v.dy / (v.y * v.y) + 2.0 * r * r * r;
        let d2b = self.ode.db_expr().diff().eval(x)?;
        Ok(Jet::new(3.0 * r + 2.0 * c.b, 3.0 * r1 + 2.0 * c.db, 3.0 * r2 + 2.0 * d2b))
    }

    fn domain(&self) -> Interval {
        self.ode.domain
    }
}

/// u′ + ⅓u² − ⅓uB − [⅔B² + 2B′ − 3C].
pub fn riccati_residual(ode: &LinearODE2, u: &dyn TrialPath, x: f64) -> Result<f64> {
    let j = u.eval(x)?;
    let c = ode.coeffs(x)?;
    Ok(j.dy + j.y * j.y / 3.0 - j.y * c.b / 3.0 - (2.0 / 3.0 * c.b * c.b + 2.0 * c.db - 3.0 * c.c))
}

/// f, g and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FgPair {
    pub f: f64,
    pub df: f64,
    pub g: f64,
    pub dg: f64,
}

/// f = v̄³ E_s², g = −(v̄′/v̄) f.
pub fn fg_from_vbar(ode: &LinearODE2, vbar: &Superposition, x: f64) -> Result<FgPair> {
    let v = vbar_guard(vbar, x)?;
    let c = ode.coeffs(x)?;
    let e2 = c.es * c.es;
    let f = v.y.powi(3) * e2;
    let u = 3.0 * v.dy / v.y + 2.0 * c.b;
    let g = -v.dy * v.y * v.y * e2;
    let dg = -(v.d2y * v.y * v.y + 2.0 * v.y * v.dy * v.dy) * e2 - 2.0 * c.b * v.dy * v.y * v.y * e2;
    Ok(FgPair { f, df: f * u, g, dg })
}

/// Residuals of the two compatibility conditions on f and g:
/// ½f′/f + (3/2)g/f − B and g′/f − ½f′g/f² + ½g²/f² − C.
pub fn fg_conditions(ode: &LinearODE2, fg: FgPair, x: f64) -> Result<(f64, f64)> {
    let (p1, p0) = generic_nsl_el_coefficients(fg.f, fg.df, fg.g, fg.dg, x)?;
    Ok((p1 - ode.b_at(x)?, p0 - ode.c_at(x)?))
}

/// Coefficients (p1, p0) of y″ + p1 y′ + p0 y = 0 produced by the
/// Euler–Lagrange equation of 1/(f y′ + g y).
pub fn generic_nsl_el_coefficients(f: f64, df: f64, g: f64, dg: f64, x: f64) -> Result<(f64, f64)> {
    if f == 0.0 {
        return Err(Error::domain("f vanishes", x));
    }
    let p1 = 0.5 * (df / f + 3.0 * g / f);
    let p0 = dg / f - df * g / (2.0 * f * f) + g * g / (2.0 * f * f);
    Ok((p1, p0))
}

/// 1/([y′v̄ − y v̄′] v̄²).
pub fn hns_direct(y: &Superposition, vbar: &Superposition, x: f64) -> Result<f64> {
    let v = vbar_guard(vbar, x)?;
    let j = y.eval(x)?;
    let d = j.dy * v.y - j.y * v.dy;
    if d == 0.0 || d.abs() <= 1e-10 * ((j.dy * v.y).abs() + (j.y * v.dy).abs()) {
        return Err(Error::guard("y′v̄ − y v̄′ vanishes", x));
    }
    Ok(1.0 / (d * v.y * v.y))
}

/// (c1c̄2 − c̄1c2)⁻¹ W⁻¹ v̄⁻², the same quantity through the Wronskian.
pub fn hns_wronskian(y: &Superposition, vbar: &Superposition, x: f64) -> Result<f64> {
    let det = y.c1 * vbar.c2 - vbar.c1 * y.c2;
    if det == 0.0 || det.abs() <= 1e-14 * ((y.c1 * vbar.c2).abs() + (vbar.c1 * y.c2).abs()) {
        return Err(Error::DeterminantZero { det });
    }
    let v = vbar_guard(vbar, x)?;
    let w = wronskian(&vbar.basis, x)?;
    Ok(1.0 / (det * w * v.y * v.y))
}
