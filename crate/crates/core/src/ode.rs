//! Linear second-order equations y″ + B(x) y′ + C(x) y = 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{integral_of_b, parse_expr, Expr};
use crate::path::{Interval, TrialPath};

/// The four Bessel types, with (α, β, γ) from the standard table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BesselKind {
    Regular,
    Modified,
    Spherical,
    ModifiedSpherical,
}

impl BesselKind {
    pub const ALL: [BesselKind; 4] = [
        BesselKind::Regular,
        BesselKind::Modified,
        BesselKind::Spherical,
        BesselKind::ModifiedSpherical,
    ];

    /// (α, β, γ).
    pub fn constants(self) -> (i32, i32, i32) {
        match self {
            BesselKind::Regular => (1, 1, -1),
            BesselKind::Modified => (1, -1, 1),
            BesselKind::Spherical => (2, 1, -1),
            BesselKind::ModifiedSpherical => (2, -1, 1),
        }
    }

    pub fn is_spherical(self) -> bool {
        matches!(self, BesselKind::Spherical | BesselKind::ModifiedSpherical)
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            BesselKind::Regular => "bessel-regular",
            BesselKind::Modified => "bessel-modified",
            BesselKind::Spherical => "bessel-spherical",
            BesselKind::ModifiedSpherical => "bessel-modified-spherical",
        }
    }
}

/// Which family an equation belongs to; selects the solution basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum EquationKind {
    Airy,
    /// `order` is μ for the cylindrical kinds and l for the spherical ones.
    Bessel { kind: BesselKind, order: f64 },
    Legendre { l: u32, m: i32 },
    Hermite { n: i64 },
    CaldirolaKanai { gamma: f64, omega: f64 },
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearODE2 {
    pub name: String,
    pub kind: EquationKind,
    pub b: Expr,
    pub c: Expr,
    db: Expr,
    dc: Expr,
    /// Validity interval (open; endpoints may be infinite).
    pub domain: Interval,
    /// Finite sampling window inside the domain, before singular guards.
    pub window: Interval,
    /// Lower limit of ∫B in E_s and E_ns.
    pub anchor: f64,
    pub params: BTreeMap<String, f64>,
    /// Closed form of E_s used for rendering, when one is known.
    pub es_closed: Option<Expr>,
}

/// Pointwise coefficient data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coeffs {
    pub b: f64,
    pub db: f64,
    pub c: f64,
    pub dc: f64,
    /// exp(∫_{anchor}^{x} B)
    pub es: f64,
}

impl Coeffs {
    pub fn ens(&self) -> f64 {
        1.0 / (self.es * self.es)
    }
}

fn params_of(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl LinearODE2 {
    #[allow(clippy::too_many_arguments)]
    fn build(
        name: &str,
        kind: EquationKind,
        b: &str,
        c: &str,
        params: BTreeMap<String, f64>,
        domain: Interval,
        window: Interval,
        anchor: f64,
        es_closed: Option<&str>,
    ) -> LinearODE2 {
        let b = parse_expr(b, &params).expect("catalog expression");
        let c = parse_expr(c, &params).expect("catalog expression");
        let es_closed = es_closed.map(|s| parse_expr(s, &params).expect("catalog expression"));
        LinearODE2::assemble(name, kind, b, c, params, domain, window, anchor, es_closed)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: &str,
        kind: EquationKind,
        b: Expr,
        c: Expr,
        params: BTreeMap<String, f64>,
        domain: Interval,
        window: Interval,
        anchor: f64,
        es_closed: Option<Expr>,
    ) -> LinearODE2 {
        LinearODE2 {
            name: name.to_string(),
            kind,
            db: b.diff(),
            dc: c.diff(),
            b,
            c,
            domain,
            window,
            anchor,
            params,
            es_closed,
        }
    }

    pub fn db_expr(&self) -> &Expr {
        &self.db
    }

    pub fn b_at(&self, x: f64) -> Result<f64> {
        self.b.eval(x)
    }

    pub fn c_at(&self, x: f64) -> Result<f64> {
        self.c.eval(x)
    }

    /// E_s(x) = exp(∫_{anchor}^{x} B).
    pub fn es(&self, x: f64) -> Result<f64> {
        let v = integral_of_b(&self.b, self.anchor, x)?.exp();
        if !v.is_finite() || v == 0.0 {
            return Err(Error::domain("E_s over- or underflows", x));
        }
        Ok(v)
    }

    /// E_ns(x) = exp(-2 ∫_{anchor}^{x} B).
    pub fn ens(&self, x: f64) -> Result<f64> {
        let es = self.es(x)?;
        Ok(1.0 / (es * es))
    }

    pub fn coeffs(&self, x: f64) -> Result<Coeffs> {
        Ok(Coeffs {
            b: self.b.eval(x)?,
            db: self.db.eval(x)?,
            c: self.c.eval(x)?,
            dc: self.dc.eval(x)?,
            es: self.es(x)?,
        })
    }

    /// True when B is the literal zero coefficient.
    pub fn b_is_zero(&self) -> bool {
        self.b.is_zero()
    }

    /// Half-width of the exclusion band around finite domain endpoints.
    pub fn guard_delta(&self) -> f64 {
        let width = if self.domain.width().is_finite() {
            self.domain.width()
        } else {
            self.window.width()
        };
        0.05 * width.min(1.0)
    }

    /// Sampling window with singular-point neighbourhoods removed.
    pub fn guarded_window(&self) -> Interval {
        let d = self.guard_delta();
        let mut w = self.window;
        if self.domain.lo.is_finite() && w.lo - self.domain.lo < d {
            w.lo = self.domain.lo + d;
        }
        if self.domain.hi.is_finite() && self.domain.hi - w.hi < d {
            w.hi = self.domain.hi - d;
        }
        w
    }

    /// `n` Chebyshev points of the first kind in the guarded window, ascending.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        chebyshev_grid(self.guarded_window(), n)
    }

    /// y″ + B y′ + C y at x.
    pub fn dhat_apply(&self, path: &dyn TrialPath, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::domain(format!("x outside the domain of {}", self.name), x));
        }
        let j = path.eval(x)?;
        Ok(j.d2y + self.b.eval(x)? * j.dy + self.c.eval(x)? * j.y)
    }
}

/// Chebyshev–Gauss nodes mapped to `w`, ascending; endpoints excluded.
pub fn chebyshev_grid(w: Interval, n: usize) -> Vec<f64> {
    (0..n)
        .rev()
        .map(|k| {
            let t = (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64).cos();
            w.mid() + 0.5 * w.width() * t
        })
        .collect()
}

/// y″ − x y = 0 on (−∞, ∞).
pub fn make_airy() -> LinearODE2 {
    LinearODE2::build(
        "airy",
        EquationKind::Airy,
        "0",
        "-x",
        BTreeMap::new(),
        Interval::REAL,
        Interval::new(-6.0, 3.0),
        0.0,
        Some("1"),
    )
}

/// y″ + (α/x) y′ + β(1 + γ μ²/x²) y = 0 on (0, ∞).
///
/// `order` is μ (any real) for the cylindrical kinds and the non-negative
/// integer l, with μ² = l(l+1), for the spherical kinds.
pub fn make_bessel(kind: BesselKind, order: f64) -> Result<LinearODE2> {
    if !order.is_finite() {
        return Err(Error::InvalidParameter(format!("Bessel order {order}")));
    }
    let (alpha, beta, gamma) = kind.constants();
    let mut params = params_of(&[("alpha", alpha as f64), ("beta", beta as f64), ("gamma", gamma as f64)]);
    let c = if kind.is_spherical() {
        if order < 0.0 || order.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "spherical Bessel order must be a non-negative integer, got {order}"
            )));
        }
        params.insert("l".into(), order);
        "beta*(1+gamma*l*(l+1)/x^2)"
    } else {
        params.insert("mu".into(), order);
        "beta*(1+gamma*mu^2/x^2)"
    };
    let window = match kind {
        BesselKind::Regular | BesselKind::Spherical => Interval::new(0.0, 10.0),
        BesselKind::Modified | BesselKind::ModifiedSpherical => Interval::new(0.0, 5.0),
    };
    Ok(LinearODE2::build(
        kind.cli_name(),
        EquationKind::Bessel { kind, order },
        "alpha/x",
        c,
        params,
        Interval::new(0.0, f64::INFINITY),
        window,
        1.0,
        Some("x^alpha"),
    ))
}

/// Regular (m = 0) and associated Legendre equations on (−1, 1).
pub fn make_legendre(l: i64, m: i64) -> Result<LinearODE2> {
    if l < 0 || m.abs() > l {
        return Err(Error::InvalidParameter(format!(
            "Legendre degree/order need l >= 0 and -l <= m <= l, got l={l}, m={m}"
        )));
    }
    let name = if m == 0 { "legendre" } else { "legendre-associated" };
    Ok(LinearODE2::build(
        name,
        EquationKind::Legendre { l: l as u32, m: m as i32 },
        "-2*x/(1-x^2)",
        "l*(l+1)/(1-x^2)-m^2/(1-x^2)^2",
        params_of(&[("l", l as f64), ("m", m as f64)]),
        Interval::new(-1.0, 1.0),
        Interval::new(-1.0, 1.0),
        0.0,
        Some("1-x^2"),
    ))
}

/// y″ − x y′ + n y = 0 on (0, ∞).
pub fn make_hermite(n: i64) -> LinearODE2 {
    LinearODE2::build(
        "hermite",
        EquationKind::Hermite { n },
        "-x",
        "n",
        params_of(&[("n", n as f64)]),
        Interval::new(0.0, f64::INFINITY),
        Interval::new(0.0, 4.0),
        0.0,
        Some("exp(-x^2/2)"),
    )
}

/// Constant damping: y″ + γ y′ + ω² y = 0.
pub fn make_caldirola_kanai(gamma: f64, omega: f64) -> LinearODE2 {
    LinearODE2::build(
        "caldirola-kanai",
        EquationKind::CaldirolaKanai { gamma, omega },
        "g",
        "w^2",
        params_of(&[("g", gamma), ("w", omega)]),
        Interval::REAL,
        Interval::new(-5.0, 5.0),
        0.0,
        Some("exp(g*x)"),
    )
}

/// Equation from user-supplied coefficients. Infinite domain ends are
/// replaced by a finite sampling window; E_s is anchored at 0 when 0 lies in
/// the guarded window and at the window midpoint otherwise.
pub fn make_custom(b: Expr, c: Expr, domain: Interval, params: BTreeMap<String, f64>) -> Result<LinearODE2> {
    if !(domain.lo < domain.hi) {
        return Err(Error::InvalidParameter(format!(
            "empty domain ({}, {})",
            domain.lo, domain.hi
        )));
    }
    let window = match (domain.lo.is_finite(), domain.hi.is_finite()) {
        (true, true) => domain,
        (true, false) => Interval::new(domain.lo, domain.lo + 10.0),
        (false, true) => Interval::new(domain.hi - 10.0, domain.hi),
        (false, false) => Interval::new(-5.0, 5.0),
    };
    let mut ode = LinearODE2::assemble("custom", EquationKind::Custom, b, c, params, domain, window, 0.0, None);
    let guarded = ode.guarded_window();
    ode.anchor = if guarded.lo <= 0.0 && 0.0 <= guarded.hi {
        0.0
    } else {
        guarded.mid()
    };
    // Coefficients must be evaluable across the sampled window.
    for i in 0..=32 {
        let x = guarded.lo + guarded.width() * i as f64 / 32.0;
        ode.coeffs(x)?;
    }
    Ok(ode)
}

/// Parse-and-build convenience for custom equations.
pub fn make_custom_from_text(b: &str, c: &str, domain: Interval, params: BTreeMap<String, f64>) -> Result<LinearODE2> {
    let b = parse_expr(b, &params)?;
    let c = parse_expr(c, &params)?;
    make_custom(b, c, domain, params)
}

/// One representative instance of every catalog family, used by the
/// verification suites and the default CLI parameters.
pub fn catalog_instances() -> Vec<LinearODE2> {
    let mut v = vec![make_airy()];
    v.push(make_bessel(BesselKind::Regular, 0.0).unwrap());
    v.push(make_bessel(BesselKind::Regular, 1.0).unwrap());
    v.push(make_bessel(BesselKind::Regular, 0.5).unwrap());
    v.push(make_bessel(BesselKind::Modified, 0.0).unwrap());
    v.push(make_bessel(BesselKind::Modified, 1.0).unwrap());
    v.push(make_bessel(BesselKind::Spherical, 1.0).unwrap());
    v.push(make_bessel(BesselKind::ModifiedSpherical, 1.0).unwrap());
    v.push(make_legendre(2, 0).unwrap());
    v.push(make_legendre(2, 1).unwrap());
    v.push(make_hermite(2));
    v.push(make_caldirola_kanai(0.1, 1.0));
    v
}
