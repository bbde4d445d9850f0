use super::Expr;
use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;

/// Coefficient shapes with closed-form antiderivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BShape {
    /// B = k (k may be zero).
    Constant(f64),
    /// B = k / x.
    InverseX(f64),
    /// B = k x.
    LinearX(f64),
    /// B = k x / (1 - x^2).
    LegendreLike(f64),
    General,
}

impl BShape {
    pub fn classify(b: &Expr) -> BShape {
        if !b.depends_on_x() {
            return match b.eval(0.0) {
                Ok(k) => BShape::Constant(k),
                Err(_) => BShape::General,
            };
        }
        if let Some(k) = linear_coefficient(b) {
            return BShape::LinearX(k);
        }
        if let Expr::Div(num, den) = b {
            if !num.depends_on_x() {
                if let (Ok(k), Some(c)) = (num.eval(0.0), linear_coefficient(den)) {
                    if c != 0.0 {
                        return BShape::InverseX(k / c);
                    }
                }
            }
            if is_one_minus_x_squared(den) {
                if let Some(k) = linear_coefficient(num) {
                    return BShape::LegendreLike(k);
                }
            }
        }
        BShape::General
    }
}

/// If `e` is syntactically k·x for a constant k, return k.
fn linear_coefficient(e: &Expr) -> Option<f64> {
    match e {
        Expr::X => Some(1.0),
        Expr::Neg(a) => linear_coefficient(a).map(|k| -k),
        Expr::Mul(a, b) => {
            if !a.depends_on_x() {
                Some(a.eval(0.0).ok()? * linear_coefficient(b)?)
            } else if !b.depends_on_x() {
                Some(linear_coefficient(a)? * b.eval(0.0).ok()?)
            } else {
                None
            }
        }
        Expr::Div(a, b) if !b.depends_on_x() => {
            let d = b.eval(0.0).ok()?;
            (d != 0.0).then_some(linear_coefficient(a)? / d)
        }
        _ => None,
    }
}

fn is_one_minus_x_squared(e: &Expr) -> bool {
    let Expr::Sub(one, sq) = e else { return false };
    if one.as_const() != Some(1.0) {
        return false;
    }
    match &**sq {
        Expr::Pow(base, exp) => matches!(**base, Expr::X) && exp.as_const() == Some(2.0),
        Expr::Mul(a, b) => matches!(**a, Expr::X) && matches!(**b, Expr::X),
        _ => false,
    }
}

/// ∫_{x0}^{x} B(t) dt.
///
/// Uses closed forms for constant, k/x, k·x and k·x/(1-x^2) coefficients
/// and adaptive Gauss–Kronrod quadrature (absolute 1e-12) otherwise. A
/// singularity of B inside the interval is a domain error.
pub fn integral_of_b(b: &Expr, x0: f64, x: f64) -> Result<f64> {
    if x0 == x {
        return Ok(0.0);
    }
    let (lo, hi) = (x0.min(x), x0.max(x));
    match BShape::classify(b) {
        BShape::Constant(k) => Ok(k * (x - x0)),
        BShape::LinearX(k) => Ok(0.5 * k * (x * x - x0 * x0)),
        BShape::InverseX(k) => {
            if lo <= 0.0 && hi >= 0.0 {
                return Err(Error::domain("k/x is singular inside the interval", 0.0));
            }
            Ok(k * (x / x0).ln())
        }
        BShape::LegendreLike(k) => {
            for s in [-1.0, 1.0] {
                if lo <= s && hi >= s {
                    return Err(Error::domain("k x/(1-x^2) is singular inside the interval", s));
                }
            }
            // ∫ k t/(1-t^2) dt = -(k/2) ln|1-t^2|
            let ratio = (1.0 - x * x) / (1.0 - x0 * x0);
            Ok(-0.5 * k * ratio.ln())
        }
        BShape::General => integrate_adaptive(|t| b.eval(t), x0, x, 1e-12),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use std::collections::BTreeMap;

    fn p(src: &str) -> Expr {
        parse_expr(src, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn shapes_are_recognized() {
        assert_eq!(BShape::classify(&p("0")), BShape::Constant(0.0));
        assert_eq!(BShape::classify(&p("1/x")), BShape::InverseX(1.0));
        assert_eq!(BShape::classify(&p("1/(8*x)")), BShape::InverseX(0.125));
        assert_eq!(BShape::classify(&p("-x")), BShape::LinearX(-1.0));
        assert_eq!(BShape::classify(&p("-2*x/(1-x^2)")), BShape::LegendreLike(-2.0));
        assert_eq!(BShape::classify(&p("sin(x)")), BShape::General);
    }

    #[test]
    fn integral_examples() {
        let e = std::f64::consts::E;
        assert!((integral_of_b(&p("1/x"), 1.0, e).unwrap() - 1.0).abs() < 1e-15);
        assert!((integral_of_b(&p("-x"), 0.0, 2.0).unwrap() + 2.0).abs() < 1e-15);
        let v = integral_of_b(&p("-2*x/(1-x^2)"), 0.0, 0.5).unwrap();
        // quadrature oracle through the general path
        let oracle = integrate_adaptive(|t| Ok(-2.0 * t / (1.0 - t * t)), 0.0, 0.5, 1e-14).unwrap();
        assert!((v - oracle).abs() < 1e-13);
        assert!((v - 0.75f64.ln()).abs() < 1e-15);
        assert!((v + 0.287682).abs() < 1e-6);
    }

    #[test]
    fn singular_intervals_are_rejected() {
        assert!(integral_of_b(&p("1/x"), -1.0, 1.0).is_err());
        assert!(integral_of_b(&p("-2*x/(1-x^2)"), 0.0, 1.5).is_err());
        assert!(integral_of_b(&p("1/(x-0.5)"), 0.0, 1.0).is_err());
    }

    #[test]
    fn general_path_uses_quadrature() {
        let v = integral_of_b(&p("cos(x)"), 0.0, 1.0).unwrap();
        assert!((v - 1f64.sin()).abs() < 1e-12);
    }
}
