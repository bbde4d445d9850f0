use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode::{BesselKind, EquationKind, LinearODE2};
use crate::path::{Jet, PolyPath, TrialPath, TryFnPath};

use super::airy::{airy_ai, airy_bi};
use super::bessel::{bessel_i, bessel_j, bessel_k, bessel_y, spherical_i, spherical_j, spherical_k, spherical_y};
use super::hermite::{hermite_he_coeffs, hermite_second_for, HERMITE_SEED_X};
use super::legendre::{assoc_p, assoc_q};
use super::rk::rk_integrate;

/// Two linearly independent solutions of one equation.
#[derive(Clone)]
pub struct SolutionBasis {
    pub ode: LinearODE2,
    pub y1: Arc<dyn TrialPath>,
    pub y2: Arc<dyn TrialPath>,
    pub labels: (String, String),
    /// Interior point used to seed integrator cross-checks.
    pub seed_x: f64,
}

impl std::fmt::Debug for SolutionBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolutionBasis")
            .field("ode", &self.ode.name)
            .field("labels", &self.labels)
            .finish()
    }
}

/// y1′ y2 − y1 y2′.
pub fn wronskian(basis: &SolutionBasis, x: f64) -> Result<f64> {
    let a = basis.y1.eval(x)?;
    let b = basis.y2.eval(x)?;
    Ok(a.dy * b.y - a.y * b.dy)
}

/// c1 y1 + c2 y2 on a shared basis.
#[derive(Clone, Debug)]
pub struct Superposition {
    pub c1: f64,
    pub c2: f64,
    pub basis: Arc<SolutionBasis>,
}

impl Superposition {
    pub fn new(basis: Arc<SolutionBasis>, c1: f64, c2: f64) -> Result<Superposition> {
        if c1 == 0.0 && c2 == 0.0 {
            return Err(Error::InvalidParameter("superposition constants are both zero".into()));
        }
        if !(c1.is_finite() && c2.is_finite()) {
            return Err(Error::InvalidParameter("superposition constants must be finite".into()));
        }
        Ok(Superposition { c1, c2, basis })
    }

    /// |c1 y1| + |c2 y2|, the local amplitude used by zero guards.
    pub fn amplitude(&self, x: f64) -> Result<f64> {
        Ok((self.c1 * self.basis.y1.eval(x)?.y).abs() + (self.c2 * self.basis.y2.eval(x)?.y).abs())
    }
}

impl TrialPath for Superposition {
    fn eval(&self, x: f64) -> Result<Jet> {
        let a = self.basis.y1.eval(x)?.scaled(self.c1);
        let b = self.basis.y2.eval(x)?.scaled(self.c2);
        Ok(a.plus(b))
    }

    fn domain(&self) -> crate::path::Interval {
        self.basis.ode.domain
    }
}

fn closure<F>(ode: &LinearODE2, f: F) -> Arc<dyn TrialPath>
where
    F: Fn(f64) -> Result<Jet> + Send + Sync + 'static,
{
    Arc::new(TryFnPath::on(f, ode.domain))
}

type JetFn = Box<dyn Fn(f64) -> Jet + Send + Sync>;

/// e^{λx}·(a cos Ωx + b sin Ωx) style solutions of y″ + γy′ + ω²y = 0.
fn damped_pair(gamma: f64, omega: f64) -> (JetFn, JetFn, (String, String)) {
    let disc = omega * omega - 0.25 * gamma * gamma;
    let lam = -0.5 * gamma;
    if disc > 0.0 {
        let w = disc.sqrt();
        // e^{λx}cos(wx), e^{λx}sin(wx)
        let mk = |phase: f64| {
            move |x: f64| {
                let e = (lam * x).exp();
                let (s, c) = (w * x + phase).sin_cos();
                let y = e * c;
                let dy = e * (lam * c - w * s);
                let d2y = e * ((lam * lam - w * w) * c - 2.0 * lam * w * s);
                Jet::new(y, dy, d2y)
            }
        };
        (
            Box::new(mk(0.0)),
            Box::new(mk(-std::f64::consts::FRAC_PI_2)),
            ("e^(-gx/2) cos(Wx)".into(), "e^(-gx/2) sin(Wx)".into()),
        )
    } else if disc < 0.0 {
        let r = (-disc).sqrt();
        let exp_jet = |k: f64| move |x: f64| {
            let e = (k * x).exp();
            Jet::new(e, k * e, k * k * e)
        };
        (
            Box::new(exp_jet(lam + r)),
            Box::new(exp_jet(lam - r)),
            ("e^(l+ x)".into(), "e^(l- x)".into()),
        )
    } else {
        (
            Box::new(move |x: f64| {
                let e = (lam * x).exp();
                Jet::new(e, lam * e, lam * lam * e)
            }),
            Box::new(move |x: f64| {
                let e = (lam * x).exp();
                Jet::new(x * e, e * (1.0 + lam * x), e * lam * (2.0 + lam * x))
            }),
            ("e^(-gx/2)".into(), "x e^(-gx/2)".into()),
        )
    }
}

fn rk_pair(ode: &LinearODE2, seed: f64) -> Result<(Arc<dyn TrialPath>, Arc<dyn TrialPath>)> {
    let w = ode.guarded_window();
    let ends = [w.lo, w.hi];
    Ok((
        Arc::new(rk_integrate(ode, 1.0, 0.0, seed, &ends)?),
        Arc::new(rk_integrate(ode, 0.0, 1.0, seed, &ends)?),
    ))
}

/// The library solution pair for an equation.
pub fn basis_for(ode: &LinearODE2) -> Result<SolutionBasis> {
    let labels = |a: &str, b: &str| (a.to_string(), b.to_string());
    let (y1, y2, names, seed_x) = match ode.kind {
        EquationKind::Airy => (closure(ode, airy_ai), closure(ode, airy_bi), labels("Ai", "Bi"), 0.0),
        EquationKind::Bessel { kind, order: mu } => {
            let integer = mu.fract() == 0.0;
            let l = mu as i64;
            let (y1, y2, names) = match (kind, integer) {
                (BesselKind::Regular, true) => (
                    closure(ode, move |x| bessel_j(mu, x)),
                    closure(ode, move |x| bessel_y(mu, x)),
                    labels("J_mu", "Y_mu"),
                ),
                (BesselKind::Regular, false) => (
                    closure(ode, move |x| bessel_j(mu, x)),
                    closure(ode, move |x| bessel_j(-mu, x)),
                    labels("J_mu", "J_-mu"),
                ),
                (BesselKind::Modified, true) => (
                    closure(ode, move |x| bessel_i(mu, x)),
                    closure(ode, move |x| bessel_k(mu, x)),
                    labels("I_mu", "K_mu"),
                ),
                (BesselKind::Modified, false) => (
                    closure(ode, move |x| bessel_i(mu, x)),
                    closure(ode, move |x| bessel_i(-mu, x)),
                    labels("I_mu", "I_-mu"),
                ),
                (BesselKind::Spherical, _) => (
                    closure(ode, move |x| spherical_j(l, x)),
                    closure(ode, move |x| spherical_y(l, x)),
                    labels("j_l", "y_l"),
                ),
                (BesselKind::ModifiedSpherical, _) => (
                    closure(ode, move |x| spherical_i(l, x)),
                    closure(ode, move |x| spherical_k(l, x)),
                    labels("i_l", "k_l"),
                ),
            };
            (y1, y2, names, 1.0)
        }
        EquationKind::Legendre { l, m } => {
            let (l, m) = (l as i64, m as i64);
            (
                closure(ode, move |x| assoc_p(l, m, x)),
                closure(ode, move |x| assoc_q(l, m, x)),
                if m == 0 { labels("P_l", "Q_l") } else { labels("P_l^m", "Q_l^m") },
                0.0,
            )
        }
        EquationKind::Hermite { n } if n >= 0 => {
            let y1: Arc<dyn TrialPath> = Arc::new(PolyPath::new(hermite_he_coeffs(n as usize)));
            (y1, hermite_second_for(ode)?, labels("He_n", "h_n"), HERMITE_SEED_X)
        }
        EquationKind::Hermite { .. } => {
            let (a, b) = rk_pair(ode, HERMITE_SEED_X)?;
            (a, b, labels("u_n", "v_n"), HERMITE_SEED_X)
        }
        EquationKind::CaldirolaKanai { gamma, omega } => {
            let (a, b, names) = damped_pair(gamma, omega);
            let y1 = closure(ode, move |x| Ok(a(x)));
            let y2 = closure(ode, move |x| Ok(b(x)));
            (y1, y2, names, 0.0)
        }
        EquationKind::Custom => {
            let seed = ode.guarded_window().mid();
            let (a, b) = rk_pair(ode, seed)?;
            (a, b, labels("y_(1,0)", "y_(0,1)"), seed)
        }
    };
    Ok(SolutionBasis {
        ode: ode.clone(),
        y1,
        y2,
        labels: names,
        seed_x,
    })
}
