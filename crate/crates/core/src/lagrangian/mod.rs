//! Standard, mixed, combined, null and non-standard Lagrangians.

mod gauge;
mod nonstandard;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::ode::{make_custom, LinearODE2};
use crate::path::Interval;
use crate::special::Superposition;

pub use gauge::{
    gauge_from_null, stated_gauge_claim, Coefficient, GaugeFunction, StatedGaugeClaim, Provenance,
};
pub use nonstandard::{
    fg_conditions, fg_from_vbar, generic_nsl_el_coefficients, hns_wronskian, hns_direct, riccati_residual,
    u_from_vbar, u_path, vbar_guard, FgPair, UPath, VBAR_GUARD,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LagrangianKind {
    Standard,
    Mixed,
    Combined,
    NullB0,
    Nonstandard,
}

/// L and its partial derivatives at one point (p = y′).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Partials {
    pub l: f64,
    pub l_p: f64,
    pub l_y: f64,
    pub l_pp: f64,
    pub l_py: f64,
    /// Explicit x-derivative of ∂L/∂y′ at fixed (y′, y).
    pub l_px: f64,
}

impl Partials {
    fn plus(self, o: Partials) -> Partials {
        Partials {
            l: self.l + o.l,
            l_p: self.l_p + o.l_p,
            l_y: self.l_y + o.l_y,
            l_pp: self.l_pp + o.l_pp,
            l_py: self.l_py + o.l_py,
            l_px: self.l_px + o.l_px,
        }
    }
}

#[derive(Debug, Clone)]
enum Terms {
    Standard,
    Mixed { cross: f64, square: f64 },
    Combined { cross: f64, square: f64 },
    NullB0 { q: f64 },
    Nonstandard { vbar: Superposition },
}

/// An evaluable L(y′, y, x) with closed-form partials.
#[derive(Debug, Clone)]
pub struct Lagrangian {
    pub kind: LagrangianKind,
    pub ode: LinearODE2,
    terms: Terms,
}

/// Coefficients of the mixed Lagrangian [a B y y′ + s (B′+B²) y²] E_s.
pub const MIXED_CROSS: f64 = 0.5;
pub const MIXED_SQUARE: f64 = 0.25;

pub fn standard_lagrangian(ode: &LinearODE2) -> Lagrangian {
    Lagrangian {
        kind: LagrangianKind::Standard,
        ode: ode.clone(),
        terms: Terms::Standard,
    }
}

pub fn mixed_lagrangian(ode: &LinearODE2) -> Lagrangian {
    mixed_lagrangian_with(ode, MIXED_CROSS, MIXED_SQUARE)
}

/// Mixed Lagrangian with explicit coefficients; anything other than
/// (½, ¼) is a deliberately corrupted form used to exercise the checks.
pub fn mixed_lagrangian_with(ode: &LinearODE2, cross: f64, square: f64) -> Lagrangian {
    Lagrangian {
        kind: LagrangianKind::Mixed,
        ode: ode.clone(),
        terms: Terms::Mixed { cross, square },
    }
}

/// L_s + L_m.
pub fn combined_lagrangian(ode: &LinearODE2) -> Lagrangian {
    Lagrangian {
        kind: LagrangianKind::Combined,
        ode: ode.clone(),
        terms: Terms::Combined {
            cross: MIXED_CROSS,
            square: MIXED_SQUARE,
        },
    }
}

/// The free equation y″ = 0 on the real line, carried by null Lagrangians
/// that are not tied to a particular equation.
pub fn free_equation() -> LinearODE2 {
    let mut ode = make_custom(Expr::constant(0.0), Expr::constant(0.0), Interval::REAL, BTreeMap::new())
        .expect("constant coefficients are evaluable");
    ode.name = "free".into();
    ode.es_closed = Some(Expr::constant(1.0));
    ode
}

/// ½ q y′ y.
pub fn null_lagrangian_b0(q: f64) -> Lagrangian {
    Lagrangian {
        kind: LagrangianKind::NullB0,
        ode: free_equation(),
        terms: Terms::NullB0 { q },
    }
}

/// E_ns / ([y′v̄ − y v̄′] v̄²). Fails with `AuxiliaryConditionViolated` when
/// v̄ does not solve the equation on its guarded grid.
pub fn nonstandard_lagrangian(ode: &LinearODE2, vbar: &Superposition) -> Result<Lagrangian> {
    for x in ode.grid(16) {
        let j = crate::path::TrialPath::eval(vbar, x)?;
        let r = ode.dhat_apply(vbar, x)?;
        if r.abs() > 1e-8 * j.scale() {
            return Err(Error::AuxiliaryConditionViolated {
                residual: r / j.scale(),
                x,
            });
        }
    }
    Ok(nonstandard_lagrangian_unchecked(ode, vbar))
}

/// As [`nonstandard_lagrangian`] without validating v̄; used to show what
/// happens when the auxiliary condition does not hold.
pub fn nonstandard_lagrangian_unchecked(ode: &LinearODE2, vbar: &Superposition) -> Lagrangian {
    Lagrangian {
        kind: LagrangianKind::Nonstandard,
        ode: ode.clone(),
        terms: Terms::Nonstandard { vbar: vbar.clone() },
    }
}

impl Lagrangian {
    pub fn es(&self, x: f64) -> Result<f64> {
        self.ode.es(x)
    }

    pub fn ens(&self, x: f64) -> Result<f64> {
        self.ode.ens(x)
    }

    pub fn vbar(&self) -> Option<&Superposition> {
        match &self.terms {
            Terms::Nonstandard { vbar } => Some(vbar),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match self.terms {
            Terms::NullB0 { q } => Some(q),
            _ => None,
        }
    }

    /// (cross, square) coefficients of a mixed or combined Lagrangian.
    pub fn mixed_coefficients(&self) -> Option<(f64, f64)> {
        match self.terms {
            Terms::Mixed { cross, square } | Terms::Combined { cross, square } => Some((cross, square)),
            _ => None,
        }
    }

    /// True when L vanishes identically (mixed forms with B ≡ 0, q = 0).
    pub fn is_identically_zero(&self) -> bool {
        match self.terms {
            Terms::Mixed { .. } => self.ode.b_is_zero(),
            Terms::NullB0 { q } => q == 0.0,
            _ => false,
        }
    }

    pub fn value(&self, p: f64, y: f64, x: f64) -> Result<f64> {
        Ok(self.partials(p, y, x)?.l)
    }

    pub fn dl_dp(&self, p: f64, y: f64, x: f64) -> Result<f64> {
        Ok(self.partials(p, y, x)?.l_p)
    }

    pub fn dl_dy(&self, p: f64, y: f64, x: f64) -> Result<f64> {
        Ok(self.partials(p, y, x)?.l_y)
    }

    pub fn partials(&self, p: f64, y: f64, x: f64) -> Result<Partials> {
        let out = match &self.terms {
            Terms::Standard => self.standard_partials(p, y, x)?,
            Terms::Mixed { cross, square } => self.mixed_partials(p, y, x, *cross, *square)?,
            Terms::Combined { cross, square } => self
                .standard_partials(p, y, x)?
                .plus(self.mixed_partials(p, y, x, *cross, *square)?),
            Terms::NullB0 { q } => Partials {
                l: 0.5 * q * y * p,
                l_p: 0.5 * q * y,
                l_y: 0.5 * q * p,
                l_pp: 0.0,
                l_py: 0.5 * q,
                l_px: 0.0,
            },
            Terms::Nonstandard { vbar } => self.nonstandard_partials(vbar, p, y, x)?,
        };
        let all = [out.l, out.l_p, out.l_y, out.l_pp, out.l_py, out.l_px];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "Lagrangian partials".into(),
                x,
            });
        }
        Ok(out)
    }

    fn standard_partials(&self, p: f64, y: f64, x: f64) -> Result<Partials> {
        let c = self.ode.coeffs(x)?;
        let e = c.es;
        Ok(Partials {
            l: 0.5 * (p * p - c.c * y * y) * e,
            l_p: p * e,
            l_y: -c.c * y * e,
            l_pp: e,
            l_py: 0.0,
            l_px: p * c.b * e,
        })
    }

    fn mixed_partials(&self, p: f64, y: f64, x: f64, a: f64, s: f64) -> Result<Partials> {
        if self.ode.b_is_zero() {
            return Ok(Partials::default());
        }
        let c = self.ode.coeffs(x)?;
        let e = c.es;
        let g = c.db + c.b * c.b;
        Ok(Partials {
            l: (a * c.b * y * p + s * g * y * y) * e,
            l_p: a * c.b * y * e,
            l_y: (a * c.b * p + 2.0 * s * g * y) * e,
            l_pp: 0.0,
            l_py: a * c.b * e,
            // ∂/∂x (a B y E_s) = a y (B′ + B²) E_s
            l_px: a * y * g * e,
        })
    }

    fn nonstandard_partials(&self, vbar: &Superposition, p: f64, y: f64, x: f64) -> Result<Partials> {
        let v = vbar_guard(vbar, x)?;
        let c = self.ode.coeffs(x)?;
        let ens = c.ens();
        let n = ens / (v.y * v.y);
        let d = p * v.y - y * v.dy;
        if d == 0.0 || d.abs() <= 1e-10 * ((p * v.y).abs() + (y * v.dy).abs()) {
            return Err(Error::guard("y′v̄ − y v̄′ vanishes", x));
        }
        let d2 = d * d;
        let d3 = d2 * d;
        // (N v̄)′ with N v̄ = E_ns / v̄
        let nv_dx = -2.0 * c.b * ens / v.y - ens * v.dy / (v.y * v.y);
        let d_x = p * v.dy - y * v.d2y;
        Ok(Partials {
            l: n / d,
            l_p: -n * v.y / d2,
            l_y: n * v.dy / d2,
            l_pp: 2.0 * n * v.y * v.y / d3,
            l_py: -2.0 * n * v.y * v.dy / d3,
            l_px: -nv_dx / d2 + 2.0 * n * v.y * d_x / d3,
        })
    }

    /// Text rendering in the notation of the constructions.
    pub fn render(&self) -> String {
        let es = render_es(&self.ode);
        let times_es = |s: String| if es == "1" { s } else { format!("{s}*{es}") };
        match &self.terms {
            Terms::Standard => times_es(format!("(1/2)*[(y')^2 - ({})*y^2]", self.ode.c)),
            Terms::Mixed { cross, square } => self.render_mixed(*cross, *square, &es),
            Terms::Combined { cross, square } => format!(
                "{} + {}",
                times_es(format!("(1/2)*[(y')^2 - ({})*y^2]", self.ode.c)),
                self.render_mixed(*cross, *square, &es)
            ),
            Terms::NullB0 { q } => {
                if *q == 0.0 {
                    "0".into()
                } else {
                    format!("({q:?}/2)*y'*y")
                }
            }
            Terms::Nonstandard { vbar } => format!(
                "{}/[(y'*vbar - y*vbar')*vbar^2], vbar = {:?}*{} + {:?}*{}",
                render_ens(&self.ode),
                vbar.c1,
                vbar.basis.labels.0,
                vbar.c2,
                vbar.basis.labels.1
            ),
        }
    }

    fn render_mixed(&self, cross: f64, square: f64, es: &str) -> String {
        if self.ode.b_is_zero() {
            return "0".into();
        }
        let b = &self.ode.b;
        let g = Expr::add(self.ode.db_expr().clone(), Expr::pow(b.clone(), Expr::constant(2.0)));
        let body = format!("[{}*({b})*y*y' + {}*({g})*y^2]", fraction(cross), fraction(square));
        if es == "1" {
            body
        } else {
            format!("{body}*{es}")
        }
    }
}

fn fraction(v: f64) -> String {
    for d in 1..=12 {
        let n = v * d as f64;
        if (n - n.round()).abs() < 1e-12 {
            return if d == 1 {
                format!("{}", n.round())
            } else {
                format!("({}/{d})", n.round())
            };
        }
    }
    format!("{v:?}")
}

/// E_s as text: the closed form when known, otherwise exp(∫B).
pub fn render_es(ode: &LinearODE2) -> String {
    match &ode.es_closed {
        Some(e) => e.to_string(),
        None => format!("exp(int_{{{:?}}}^x ({}) dt)", ode.anchor, ode.b),
    }
}

/// E_ns as text.
pub fn render_ens(ode: &LinearODE2) -> String {
    match &ode.es_closed {
        Some(e) if e.as_const() == Some(1.0) => "1".into(),
        _ => format!("({})^(-2)", render_es(ode)),
    }
}
