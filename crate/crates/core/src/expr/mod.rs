//! Expression trees over the independent variable `x` and named constants.
//!
//! Expressions are immutable and cheap to clone (children are shared behind
//! `Arc`). Simplification is limited to constant folding and the 0/1
//! identities applied by the smart constructors; equality of two forms is
//! always checked numerically.

mod integral;
mod parse;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use integral::{integral_of_b, BShape};
pub use parse::parse_expr;

/// Elementary functions understood by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    X,
    /// A named constant bound at construction time.
    Param { name: Arc<str>, value: f64 },
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Pow(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Func(Func, Arc<Expr>),
}

// Folding constructors, named after the operations they build.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn x() -> Expr {
        Expr::X
    }

    pub fn param(name: &str, value: f64) -> Expr {
        Expr::Param {
            name: Arc::from(name),
            value,
        }
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_const(&self, v: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == v)
    }

    /// True when the expression mentions `x` anywhere.
    pub fn depends_on_x(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Param { .. } => false,
            Expr::X => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.depends_on_x() || b.depends_on_x()
            }
            Expr::Neg(a) | Expr::Func(_, a) => a.depends_on_x(),
        }
    }

    /// True when the expression is the literal constant zero after folding.
    pub fn is_zero(&self) -> bool {
        self.is_const(0.0)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p + q),
            _ if a.is_zero() => b,
            _ if b.is_zero() => a,
            _ => Expr::Add(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p - q),
            _ if b.is_zero() => a,
            _ if a.is_zero() => Expr::neg(b),
            _ => Expr::Sub(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p * q),
            _ if a.is_zero() || b.is_zero() => Expr::Const(0.0),
            _ if a.is_const(1.0) => b,
            _ if b.is_const(1.0) => a,
            _ if a.is_const(-1.0) => Expr::neg(b),
            _ if b.is_const(-1.0) => Expr::neg(a),
            _ => Expr::Mul(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(p), Expr::Const(q)) if *q != 0.0 => Expr::Const(p / q),
            _ if a.is_zero() && !b.is_zero() => Expr::Const(0.0),
            _ if b.is_const(1.0) => a,
            _ => Expr::Div(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        if b.is_zero() {
            return Expr::Const(1.0);
        }
        if b.is_const(1.0) {
            return a;
        }
        if let (Expr::Const(p), Expr::Const(q)) = (&a, &b) {
            let v = p.powf(*q);
            if v.is_finite() && (*p >= 0.0 || q.fract() == 0.0) {
                return Expr::Const(v);
            }
        }
        Expr::Pow(Arc::new(a), Arc::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(inner) => (*inner).clone(),
            other => Expr::Neg(Arc::new(other)),
        }
    }

    pub fn func(f: Func, a: Expr) -> Expr {
        if let Expr::Const(c) = a {
            if let Ok(v) = apply_func(f, c, 0.0) {
                return Expr::Const(v);
            }
        }
        Expr::Func(f, Arc::new(a))
    }

    /// Evaluate at `x`. Division by zero, logarithms of non-positive
    /// numbers, square roots of negative numbers and non-finite results are
    /// reported as domain errors.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::X => x,
            Expr::Param { value, .. } => *value,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let den = b.eval(x)?;
                if den == 0.0 {
                    return Err(Error::domain("division by zero", x));
                }
                a.eval(x)? / den
            }
            Expr::Pow(a, b) => power(a.eval(x)?, b.eval(x)?, x)?,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Func(f, a) => apply_func(*f, a.eval(x)?, x)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("non-finite value of {self}"), x))
        }
    }

    /// Exact symbolic derivative with respect to `x`.
    pub fn diff(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Param { .. } => Expr::Const(0.0),
            Expr::X => Expr::Const(1.0),
            Expr::Add(a, b) => Expr::add(a.diff(), b.diff()),
            Expr::Sub(a, b) => Expr::sub(a.diff(), b.diff()),
            Expr::Mul(a, b) => Expr::add(
                Expr::mul(a.diff(), (**b).clone()),
                Expr::mul((**a).clone(), b.diff()),
            ),
            Expr::Div(a, b) => Expr::div(
                Expr::sub(
                    Expr::mul(a.diff(), (**b).clone()),
                    Expr::mul((**a).clone(), b.diff()),
                ),
                Expr::pow((**b).clone(), Expr::Const(2.0)),
            ),
            Expr::Pow(a, b) => {
                let (base, exp) = ((**a).clone(), (**b).clone());
                if !b.depends_on_x() {
                    // n * a^(n-1) * a'
                    Expr::mul(
                        Expr::mul(exp.clone(), Expr::pow(base, Expr::sub(exp, Expr::Const(1.0)))),
                        a.diff(),
                    )
                } else if !a.depends_on_x() {
                    // a^b * ln(a) * b'
                    Expr::mul(
                        Expr::mul(self.clone(), Expr::func(Func::Ln, base)),
                        b.diff(),
                    )
                } else {
                    // a^b * (b' ln a + b a'/a)
                    Expr::mul(
                        self.clone(),
                        Expr::add(
                            Expr::mul(b.diff(), Expr::func(Func::Ln, base.clone())),
                            Expr::div(Expr::mul(exp, a.diff()), base),
                        ),
                    )
                }
            }
            Expr::Neg(a) => Expr::neg(a.diff()),
            Expr::Func(f, a) => {
                let inner = (**a).clone();
                let outer = match f {
                    Func::Exp => self.clone(),
                    Func::Ln => Expr::div(Expr::Const(1.0), inner),
                    Func::Sin => Expr::func(Func::Cos, inner),
                    Func::Cos => Expr::neg(Expr::func(Func::Sin, inner)),
                    Func::Sqrt => Expr::div(Expr::Const(0.5), self.clone()),
                };
                Expr::mul(outer, a.diff())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if *c < 0.0 || c.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn power(base: f64, exp: f64, x: f64) -> Result<f64> {
    if exp.fract() == 0.0 && exp.abs() < 2f64.powi(31) {
        if base == 0.0 && exp < 0.0 {
            return Err(Error::domain("zero raised to a negative power", x));
        }
        return Ok(base.powi(exp as i32));
    }
    if base < 0.0 {
        return Err(Error::domain("negative base with non-integer exponent", x));
    }
    if base == 0.0 && exp < 0.0 {
        return Err(Error::domain("zero raised to a negative power", x));
    }
    Ok(base.powf(exp))
}

fn apply_func(f: Func, v: f64, x: f64) -> Result<f64> {
    Ok(match f {
        Func::Exp => v.exp(),
        Func::Ln => {
            if v <= 0.0 {
                return Err(Error::domain("logarithm of a non-positive number", x));
            }
            v.ln()
        }
        Func::Sin => v.sin(),
        Func::Cos => v.cos(),
        Func::Sqrt => {
            if v < 0.0 {
                return Err(Error::domain("square root of a negative number", x));
            }
            v.sqrt()
        }
    })
}

struct Child<'a>(&'a Expr, u8);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints in the grammar accepted by [`parse_expr`].
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.fract() == 0.0 && c.abs() < 1e15 => write!(f, "{c}"),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::X => f.write_str("x"),
            Expr::Param { name, .. } => f.write_str(name),
            Expr::Add(a, b) => write!(f, "{}+{}", Child(a, 1), Child(b, 2)),
            Expr::Sub(a, b) => write!(f, "{}-{}", Child(a, 1), Child(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Child(a, 2), Child(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Child(a, 2), Child(b, 3)),
            Expr::Pow(a, b) => write!(f, "{}^{}", Child(a, 5), Child(b, 3)),
            Expr::Neg(a) => write!(f, "-{}", Child(a, 3)),
            Expr::Func(func, a) => write!(f, "{}({})", func.name(), a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn p(src: &str) -> Expr {
        parse_expr(src, &BTreeMap::new()).unwrap()
    }

    fn fd(e: &Expr, x: f64) -> f64 {
        let h = 1e-6 * x.abs().max(1.0);
        (e.eval(x + h).unwrap() - e.eval(x - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("ln(x)").eval(1.0).unwrap(), 0.0);
        assert_eq!(p("x^2").eval(-2.0).unwrap(), 4.0);
        assert!(matches!(p("1/x").eval(0.0), Err(Error::Domain { .. })));
        assert!(matches!(p("sqrt(x)").eval(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(p("ln(x)").eval(0.0), Err(Error::Domain { .. })));
        assert!(matches!(p("x^0.5").eval(-4.0), Err(Error::Domain { .. })));
        assert!(matches!(p("exp(x)").eval(1000.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn diff_examples() {
        assert_eq!(p("exp(x)").diff(), p("exp(x)"));
        assert_eq!(p("7").diff(), Expr::Const(0.0));

        // -2x/(1-x^2) against the central-difference oracle
        let e = p("-2*x/(1-x^2)");
        let d = e.diff();
        let closed = p("(-2-2*x^2)/(1-x^2)^2");
        for i in 0..10 {
            let x = -0.9 + 1.8 * (i as f64 + 0.37) / 10.0;
            let oracle = fd(&e, x);
            let got = d.eval(x).unwrap();
            assert!((got - oracle).abs() <= 1e-6 * oracle.abs().max(1.0), "x={x}");
            assert!((got - closed.eval(x).unwrap()).abs() < 1e-12 * got.abs().max(1.0));
        }
    }

    #[test]
    fn diff_covers_every_node_kind() {
        let cases = [
            "sin(x)*cos(2*x)",
            "sqrt(1+x^2)",
            "ln(2+x)/x",
            "x^x",
            "2^x",
            "-x^3+x/3",
            "exp(-x^2/2)",
        ];
        for src in cases {
            let e = p(src);
            let d = e.diff();
            for &x in &[0.3, 0.7, 1.3, 2.2] {
                let oracle = fd(&e, x);
                let got = d.eval(x).unwrap();
                assert!(
                    (got - oracle).abs() <= 1e-6 * oracle.abs().max(1.0),
                    "{src} at {x}: {got} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn folding_identities() {
        assert_eq!(Expr::mul(Expr::Const(0.0), Expr::X), Expr::Const(0.0));
        assert_eq!(Expr::add(Expr::X, Expr::Const(0.0)), Expr::X);
        assert_eq!(Expr::pow(Expr::X, Expr::Const(1.0)), Expr::X);
        assert_eq!(Expr::neg(Expr::neg(Expr::X)), Expr::X);
        assert_eq!(Expr::mul(Expr::Const(2.0), Expr::Const(3.0)), Expr::Const(6.0));
    }

    #[test]
    fn display_examples() {
        assert_eq!(p("exp(-x^2/2)").to_string(), "exp(-x^2/2)");
        assert_eq!(p("-2*x/(1-x^2)").to_string(), "-2*x/(1-x^2)");
        assert_eq!(p("0.25*x").to_string(), "0.25*x");
        assert_eq!(p("(-x)^2").to_string(), "(-x)^2");
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(p("-x^2").eval(3.0).unwrap(), -9.0);
        assert_eq!(p("2^-1").eval(0.0).unwrap(), 0.5);
        assert_eq!(p("2^3^2").eval(0.0).unwrap(), 512.0);
    }
}
