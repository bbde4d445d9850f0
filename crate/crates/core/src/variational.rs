//! Euler–Lagrange residuals, the non-standard recovery identity, the
//! obstruction to varying v̄, and discrete action probes.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::{mixed_lagrangian, nonstandard_lagrangian_unchecked, vbar_guard, Lagrangian};
use crate::ode::LinearODE2;
use crate::path::{Jet, Perturbed, TrialPath};
use crate::quadrature::composite_gauss_legendre;
use crate::special::Superposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElMethod {
    Analytic,
    FiniteDifference,
}

/// Residuals of one check on a grid. `pass` compares each residual with
/// `tolerance` times the local scale 1 + |y| + |y′| + |y″|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ELResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub norm: f64,
    pub method: ElMethod,
    pub tolerance: f64,
    pub pass: bool,
    /// Grid points dropped by a guard (zeros of v̄, y or the NSL denominator).
    pub skipped: Vec<f64>,
}

impl ELResidualReport {
    fn new(method: ElMethod, tolerance: f64) -> Self {
        ELResidualReport {
            grid: Vec::new(),
            residuals: Vec::new(),
            norm: 0.0,
            method,
            tolerance,
            pass: true,
            skipped: Vec::new(),
        }
    }

    fn push(&mut self, x: f64, r: f64, scale: f64) {
        self.grid.push(x);
        self.residuals.push(r);
        self.norm = self.norm.max(r.abs());
        if !(r.abs() <= self.tolerance * scale) {
            self.pass = false;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// CSV with columns x, residual.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "residual"])?;
        for (x, r) in self.grid.iter().zip(&self.residuals) {
            w.serialize((x, r))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// d/dx[∂L/∂y′] − ∂L/∂y along `path` at x.
pub fn el_residual(l: &Lagrangian, path: &dyn TrialPath, x: f64, method: ElMethod) -> Result<f64> {
    let j = path.eval(x)?;
    let r = match method {
        ElMethod::Analytic => {
            let p = l.partials(j.dy, j.y, x)?;
            p.l_px + p.l_py * j.dy + p.l_pp * j.d2y - p.l_y
        }
        ElMethod::FiniteDifference => {
            let h = 1e-5 * x.abs().max(1.0);
            let lp = |t: f64| -> Result<f64> {
                let k = path.eval(t)?;
                l.dl_dp(k.dy, k.y, t)
            };
            (lp(x + h)? - lp(x - h)?) / (2.0 * h) - l.dl_dy(j.dy, j.y, x)?
        }
    };
    if !r.is_finite() {
        return Err(Error::NonFinite {
            what: "Euler–Lagrange residual".into(),
            x,
        });
    }
    Ok(r)
}

/// Worst EL residual of `l` over all trials; PASS iff ≤ 1e−9·scale everywhere.
pub fn verify_annihilation(l: &Lagrangian, trials: &[&dyn TrialPath], grid: &[f64]) -> Result<ELResidualReport> {
    let mut rep = ELResidualReport::new(ElMethod::Analytic, 1e-9);
    for &x in grid {
        // (residual, scale) of the trial with the largest scaled residual
        let mut worst = (0.0f64, 1.0f64);
        for t in trials {
            let r = el_residual(l, *t, x, ElMethod::Analytic)?;
            let s = t.eval(x)?.scale();
            if r.abs() / s >= worst.0.abs() / worst.1 {
                worst = (r, s);
            }
        }
        rep.push(x, worst.0, worst.1);
    }
    Ok(rep)
}

/// Check that the mixed Lagrangian's EL expression
/// vanishes for arbitrary paths.
pub fn verify_ml_annihilation(ode: &LinearODE2, trials: &[&dyn TrialPath]) -> Result<ELResidualReport> {
    verify_annihilation(&mixed_lagrangian(ode), trials, &ode.grid(64))
}

fn nsl_denominator(y: &dyn TrialPath, vbar: &Superposition, x: f64) -> Result<(Jet, Jet, f64)> {
    let v = vbar_guard(vbar, x)?;
    let j = y.eval(x)?;
    let d = j.dy * v.y - j.y * v.dy;
    if d == 0.0 || d.abs() <= 1e-10 * ((j.dy * v.y).abs() + (j.y * v.dy).abs()) {
        return Err(Error::guard("y′v̄ − y v̄′ vanishes", x));
    }
    Ok((j, v, d))
}

/// [y″v̄ − yv̄″]/[y′v̄ − yv̄′] + B.
pub fn el_nonstandard_ratio(ode: &LinearODE2, y: &dyn TrialPath, vbar: &Superposition, x: f64) -> Result<f64> {
    let (j, v, d) = nsl_denominator(y, vbar, x)?;
    Ok((j.d2y * v.y - j.y * v.d2y) / d + ode.b_at(x)?)
}

/// EL(L_ns) along y rescaled by D³/(2E_ns), D = y′v̄ − yv̄′, which equals
/// D̂y − y·D̂v̄/v̄. With v̄ a solution this is the original equation applied
/// to y. Grid points hit by a guard are listed in `skipped`.
pub fn recover_original(ode: &LinearODE2, y: &dyn TrialPath, vbar: &Superposition, grid: &[f64]) -> Result<ELResidualReport> {
    let l = nonstandard_lagrangian_unchecked(ode, vbar);
    let mut rep = ELResidualReport::new(ElMethod::Analytic, 1e-8);
    for &x in grid {
        let v = match vbar_guard(vbar, x) {
            Ok(v) => v,
            Err(Error::Guard { .. }) => {
                rep.skipped.push(x);
                continue;
            }
            Err(e) => return Err(e),
        };
        let j = y.eval(x)?;
        let el = match el_residual(&l, y, x, ElMethod::Analytic) {
            Ok(r) => r,
            Err(Error::Guard { .. }) => {
                rep.skipped.push(x);
                continue;
            }
            Err(e) => return Err(e),
        };
        let d = j.dy * v.y - j.y * v.dy;
        let r = el * d.powi(3) / (2.0 * ode.ens(x)?);
        // v̄″/v̄ enters the identity, so its size joins the scale
        let scale = j.scale() * (1.0 + (v.d2y / v.y).abs() + (v.dy / v.y).abs());
        rep.push(x, r, scale);
    }
    Ok(rep)
}

/// The two sides of the Euler–Lagrange equation of L_ns taken with respect
/// to v̄ at fixed y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Obstruction {
    /// [y″v̄ − yv̄″]/[y′v̄ − yv̄′] + B.
    pub lhs: f64,
    /// v̄′/v̄ − 2y′/y, the surplus as the construction states it.
    pub extra: f64,
    /// 2y′/y − 2v̄′/v̄, the surplus obtained by varying v̄ directly.
    pub derived_extra: f64,
}

pub fn el_wrt_vbar_obstruction(ode: &LinearODE2, y: &Superposition, vbar: &Superposition, x: f64) -> Result<Obstruction> {
    let (j, v, _) = nsl_denominator(y, vbar, x)?;
    if j.y == 0.0 || j.y.abs() < 1e-6 * y.amplitude(x)? {
        return Err(Error::guard("y is too close to a zero", x));
    }
    let lhs = el_nonstandard_ratio(ode, y, vbar, x)?;
    Ok(Obstruction {
        lhs,
        extra: v.dy / v.y - 2.0 * j.dy / j.y,
        derived_extra: 2.0 * j.dy / j.y - 2.0 * v.dy / v.y,
    })
}

/// Closed form of the EL expression of L_ns with respect to v̄:
/// −2yE_ns/(v̄²D²)·[lhs − derived_extra].
pub fn el_wrt_vbar(ode: &LinearODE2, y: &Superposition, vbar: &Superposition, x: f64) -> Result<f64> {
    let (j, v, d) = nsl_denominator(y, vbar, x)?;
    let o = el_wrt_vbar_obstruction(ode, y, vbar, x)?;
    Ok(-2.0 * j.y * ode.ens(x)? / (v.y * v.y * d * d) * (o.lhs - o.derived_extra))
}

const GL_ORDER: usize = 8;

fn action_panels(l: &Lagrangian, path: &dyn TrialPath, a: f64, b: f64, panels: usize) -> Result<f64> {
    composite_gauss_legendre(
        |x| {
            let j = path.eval(x)?;
            l.value(j.dy, j.y, x)
        },
        a,
        b,
        GL_ORDER,
        panels,
    )
}

/// ∫ L(y′, y, x) dx over [a, b] by composite Gauss–Legendre, doubling the
/// panel count until successive values agree to 1e−10. Returns the value and
/// the panel count reached.
pub fn action_with_panels(l: &Lagrangian, path: &dyn TrialPath, a: f64, b: f64) -> Result<(f64, usize)> {
    let mut panels = 2;
    let mut prev = action_panels(l, path, a, b, panels)?;
    while panels < 1 << 14 {
        panels *= 2;
        let next = action_panels(l, path, a, b, panels)?;
        if (next - prev).abs() <= 1e-10 {
            return Ok((next, panels));
        }
        prev = next;
    }
    Err(Error::Accuracy {
        what: "action quadrature did not converge".into(),
        x: b,
    })
}

pub fn action(l: &Lagrangian, path: &dyn TrialPath, a: f64, b: f64) -> Result<f64> {
    Ok(action_with_panels(l, path, a, b)?.0)
}

/// [S(path + ε·bump) − S(path − ε·bump)]/(2ε) on [a, b], both actions on
/// the panel count that converges for the unperturbed path.
pub fn stationarity_probe(
    l: &Lagrangian,
    path: &dyn TrialPath,
    bump: &dyn TrialPath,
    eps: f64,
    a: f64,
    b: f64,
) -> Result<f64> {
    let (_, panels) = action_with_panels(l, path, a, b)?;
    let plus = Perturbed { base: path, bump, eps };
    let minus = Perturbed { base: path, bump, eps: -eps };
    let sp = action_panels(l, &plus, a, b, panels)?;
    let sm = action_panels(l, &minus, a, b, panels)?;
    Ok((sp - sm) / (2.0 * eps))
}
