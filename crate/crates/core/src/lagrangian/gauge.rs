use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::ode::{BesselKind, EquationKind, LinearODE2};
use crate::path::TrialPath;

use super::{Lagrangian, LagrangianKind};

/// expr(x)·E_s(x)^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    pub expr: Expr,
    pub es_power: i32,
}

impl Coefficient {
    pub fn constant(c: f64) -> Coefficient {
        Coefficient {
            expr: Expr::constant(c),
            es_power: 0,
        }
    }

    pub fn value(&self, ode: &LinearODE2, x: f64) -> Result<f64> {
        let v = self.expr.eval(x)?;
        if self.es_power == 0 {
            return Ok(v);
        }
        Ok(v * ode.es(x)?.powi(self.es_power))
    }

    /// (expr′ + k B expr) E_s^k.
    pub fn derivative(&self, ode: &LinearODE2, x: f64) -> Result<f64> {
        let d = self.expr.diff().eval(x)?;
        if self.es_power == 0 {
            return Ok(d);
        }
        let k = self.es_power as f64;
        Ok((d + k * ode.b_at(x)? * self.expr.eval(x)?) * ode.es(x)?.powi(self.es_power))
    }

    pub fn scaled(&self, s: f64) -> Coefficient {
        let expr = match &self.expr {
            Expr::Mul(a, b) if a.as_const().is_some() => {
                Expr::mul(Expr::constant(s * a.as_const().unwrap_or(1.0)), (**b).clone())
            }
            e => Expr::mul(Expr::constant(s), e.clone()),
        };
        Coefficient {
            expr,
            es_power: self.es_power,
        }
    }

    pub fn render(&self, ode: &LinearODE2) -> String {
        let es = super::render_es(ode);
        match self.es_power {
            0 => format!("{}", self.expr),
            1 if es == "1" => format!("{}", self.expr),
            1 => format!("({})*{es}", self.expr),
            k => format!("({})*({es})^{k}", self.expr),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    PaperStated,
    DerivedByIntegration,
}

/// φ(x, y) = coeff(x)·y².
#[derive(Debug, Clone)]
pub struct GaugeFunction {
    pub coeff: Coefficient,
    pub provenance: Provenance,
    pub ode: LinearODE2,
}

impl GaugeFunction {
    pub fn value(&self, y: f64, x: f64) -> Result<f64> {
        Ok(self.coeff.value(&self.ode, x)? * y * y)
    }

    /// dφ/dx along a path: coeff′ y² + 2 coeff y y′.
    pub fn total_derivative(&self, path: &dyn TrialPath, x: f64) -> Result<f64> {
        let j = path.eval(x)?;
        let a = self.coeff.value(&self.ode, x)?;
        let da = self.coeff.derivative(&self.ode, x)?;
        Ok(da * j.y * j.y + 2.0 * a * j.y * j.dy)
    }

    pub fn render(&self) -> String {
        format!("phi = {}*y^2", self.coeff.render(&self.ode))
    }
}

/// Split L = a(x) y y′ + b(x) y² for the shapes that admit it.
fn split(l: &Lagrangian) -> Option<(Coefficient, Coefficient)> {
    match l.kind {
        LagrangianKind::NullB0 => Some((Coefficient::constant(0.5 * l.q()?), Coefficient::constant(0.0))),
        LagrangianKind::Mixed => {
            let (cross, square) = l.mixed_coefficients()?;
            let b = l.ode.b.clone();
            let g = Expr::add(l.ode.db_expr().clone(), Expr::pow(b.clone(), Expr::constant(2.0)));
            Some((
                Coefficient {
                    expr: Expr::mul(Expr::constant(cross), b),
                    es_power: 1,
                },
                Coefficient {
                    expr: Expr::mul(Expr::constant(square), g),
                    es_power: 1,
                },
            ))
        }
        _ => None,
    }
}

/// φ = ½a(x) y² for L = a y y′ + b y², accepted when ½a′ = b on the
/// guarded grid of the Lagrangian's equation.
pub fn gauge_from_null(l: &Lagrangian) -> Result<GaugeFunction> {
    let grid = l.ode.grid(64);
    let Some((a, b)) = split(l) else {
        return Err(Error::NotTotalDerivative {
            residual: f64::INFINITY,
            x: grid[0],
        });
    };
    for &x in &grid {
        let av = a.value(&l.ode, x)?;
        let half_da = 0.5 * a.derivative(&l.ode, x)?;
        let bv = b.value(&l.ode, x)?;
        let residual = bv - half_da;
        let tol = 1e-9 * (av.abs() * (1.0 + l.ode.b_at(x)?.abs()) + bv.abs() + half_da.abs());
        if residual.abs() > tol {
            return Err(Error::NotTotalDerivative { residual, x });
        }
    }
    Ok(GaugeFunction {
        coeff: a.scaled(0.5),
        provenance: Provenance::DerivedByIntegration,
        ode: l.ode.clone(),
    })
}

/// What the source construction asserts about a gauge function.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum StatedGaugeClaim {
    /// A stated closed form (φ = q y²/8 for the B ≡ 0 null Lagrangian and
    /// φ = y²/8 for the α = 1 Bessel equations).
    Stated(GaugeFunction),
    /// The assertion that no gauge function can be defined.
    NotDefinable,
    NoClaim,
}

pub fn stated_gauge_claim(l: &Lagrangian) -> StatedGaugeClaim {
    let stated = |coeff: Coefficient| {
        StatedGaugeClaim::Stated(GaugeFunction {
            coeff,
            provenance: Provenance::PaperStated,
            ode: l.ode.clone(),
        })
    };
    match (l.kind, l.ode.kind) {
        (LagrangianKind::NullB0, _) => stated(Coefficient::constant(l.q().unwrap_or(0.0) / 8.0)),
        (LagrangianKind::Mixed, EquationKind::Bessel { kind, .. }) => match kind {
            // L_m = ½ y y′ when α = 1; stated φ = y²/8
            BesselKind::Regular | BesselKind::Modified => stated(Coefficient::constant(0.125)),
            BesselKind::Spherical | BesselKind::ModifiedSpherical => StatedGaugeClaim::NotDefinable,
        },
        (LagrangianKind::Mixed, EquationKind::Legendre { .. } | EquationKind::Hermite { .. }) => {
            StatedGaugeClaim::NotDefinable
        }
        _ => StatedGaugeClaim::NoClaim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::{mixed_lagrangian, null_lagrangian_b0, standard_lagrangian};
    use crate::ode::{make_bessel, make_legendre};
    use crate::path::{FnPath, Jet};

    fn sin_path() -> impl TrialPath {
        FnPath::new(|x: f64| Jet::new(x.sin(), x.cos(), -x.sin()))
    }

    #[test]
    fn null_lagrangian_gauge_is_quarter_q() {
        let l = null_lagrangian_b0(2.0);
        let g = gauge_from_null(&l).unwrap();
        assert_eq!(g.coeff.value(&l.ode, 0.0).unwrap(), 0.5);
        let path = sin_path();
        for &x in &[0.2, 1.0, 2.5] {
            let j = path.eval(x).unwrap();
            let lv = l.value(j.dy, j.y, x).unwrap();
            assert!((g.total_derivative(&path, x).unwrap() - lv).abs() < 1e-15);
        }
        let StatedGaugeClaim::Stated(stated) = stated_gauge_claim(&l) else { panic!() };
        let j = path.eval(1.0).unwrap();
        let ratio = l.value(j.dy, j.y, 1.0).unwrap() / stated.total_derivative(&path, 1.0).unwrap();
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spherical_bessel_gauge_is_half_x() {
        let ode = make_bessel(BesselKind::Spherical, 1.0).unwrap();
        let g = gauge_from_null(&mixed_lagrangian(&ode)).unwrap();
        for &x in &[0.5, 3.0] {
            assert!((g.coeff.value(&ode, x).unwrap() - 0.5 * x).abs() < 1e-14);
        }
        assert!(matches!(stated_gauge_claim(&mixed_lagrangian(&ode)), StatedGaugeClaim::NotDefinable));
    }

    #[test]
    fn mutated_mixed_form_is_not_a_total_derivative() {
        let ode = make_legendre(2, 0).unwrap();
        let l = crate::lagrangian::mixed_lagrangian_with(&ode, 0.5, 1.0 / 3.0);
        assert!(matches!(gauge_from_null(&l), Err(Error::NotTotalDerivative { .. })));
        assert!(matches!(
            gauge_from_null(&standard_lagrangian(&ode)),
            Err(Error::NotTotalDerivative { .. })
        ));
    }
}
