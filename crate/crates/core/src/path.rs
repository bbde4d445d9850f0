//! Twice-differentiable scalar paths x ↦ (y, y′, y″).

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Value and first two derivatives of a path at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet {
    pub y: f64,
    pub dy: f64,
    pub d2y: f64,
}

impl Jet {
    pub fn new(y: f64, dy: f64, d2y: f64) -> Jet {
        Jet { y, dy, d2y }
    }

    /// 1 + |y| + |y′| + |y″|, the reference magnitude for residual tolerances.
    pub fn scale(&self) -> f64 {
        1.0 + self.y.abs() + self.dy.abs() + self.d2y.abs()
    }

    pub fn scaled(self, k: f64) -> Jet {
        Jet::new(k * self.y, k * self.dy, k * self.d2y)
    }

    pub fn plus(self, other: Jet) -> Jet {
        Jet::new(self.y + other.y, self.dy + other.dy, self.d2y + other.d2y)
    }
}

/// An open interval; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// A smooth path that can be sampled with its first two derivatives.
pub trait TrialPath: Send + Sync {
    fn eval(&self, x: f64) -> Result<Jet>;

    fn domain(&self) -> Interval {
        Interval::REAL
    }
}

impl<T: TrialPath + ?Sized> TrialPath for Arc<T> {
    fn eval(&self, x: f64) -> Result<Jet> {
        (**self).eval(x)
    }

    fn domain(&self) -> Interval {
        (**self).domain()
    }
}

impl<T: TrialPath + ?Sized> TrialPath for &T {
    fn eval(&self, x: f64) -> Result<Jet> {
        (**self).eval(x)
    }

    fn domain(&self) -> Interval {
        (**self).domain()
    }
}

/// Polynomial path with coefficients in increasing powers of x.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPath {
    pub coeffs: Vec<f64>,
}

impl PolyPath {
    pub fn new(coeffs: Vec<f64>) -> PolyPath {
        PolyPath { coeffs }
    }
}

impl TrialPath for PolyPath {
    fn eval(&self, x: f64) -> Result<Jet> {
        let (mut y, mut dy, mut d2y) = (0.0, 0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            d2y = d2y * x + 2.0 * dy;
            dy = dy * x + y;
            y = y * x + c;
        }
        Ok(Jet::new(y, dy, d2y))
    }
}

/// Path given by closures for y, y′ and y″.
pub struct FnPath<F> {
    f: F,
    domain: Interval,
}

impl<F> FnPath<F>
where
    F: Fn(f64) -> Jet + Send + Sync,
{
    pub fn new(f: F) -> Self {
        FnPath {
            f,
            domain: Interval::REAL,
        }
    }

    pub fn on(f: F, domain: Interval) -> Self {
        FnPath { f, domain }
    }
}

impl<F> TrialPath for FnPath<F>
where
    F: Fn(f64) -> Jet + Send + Sync,
{
    fn eval(&self, x: f64) -> Result<Jet> {
        Ok((self.f)(x))
    }

    fn domain(&self) -> Interval {
        self.domain
    }
}

/// Path given by a fallible closure returning the full jet.
pub struct TryFnPath<F> {
    f: F,
    domain: Interval,
}

impl<F> TryFnPath<F>
where
    F: Fn(f64) -> Result<Jet> + Send + Sync,
{
    pub fn on(f: F, domain: Interval) -> Self {
        TryFnPath { f, domain }
    }
}

impl<F> TrialPath for TryFnPath<F>
where
    F: Fn(f64) -> Result<Jet> + Send + Sync,
{
    fn eval(&self, x: f64) -> Result<Jet> {
        (self.f)(x)
    }

    fn domain(&self) -> Interval {
        self.domain
    }
}

/// `base + eps * bump`.
pub struct Perturbed<'a> {
    pub base: &'a dyn TrialPath,
    pub bump: &'a dyn TrialPath,
    pub eps: f64,
}

impl TrialPath for Perturbed<'_> {
    fn eval(&self, x: f64) -> Result<Jet> {
        Ok(self.base.eval(x)?.plus(self.bump.eval(x)?.scaled(self.eps)))
    }

    fn domain(&self) -> Interval {
        self.base.domain()
    }
}

/// sin(π (x - a)/(b - a)): vanishes at both ends of [a, b].
pub fn sine_bump(a: f64, b: f64) -> impl TrialPath {
    let k = std::f64::consts::PI / (b - a);
    FnPath::new(move |x| {
        let t = k * (x - a);
        Jet::new(t.sin(), k * t.cos(), -k * k * t.sin())
    })
}

/// Smooth random path on a window: a cubic, a sinusoid and an exponential,
/// all in the normalized coordinate t = (x - mid)/half.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomSmoothPath {
    pub poly: [f64; 4],
    pub amp: f64,
    pub freq: f64,
    pub phase: f64,
    pub exp_amp: f64,
    pub rate: f64,
    pub mid: f64,
    pub half: f64,
}

impl RandomSmoothPath {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, window: Interval) -> RandomSmoothPath {
        let mut poly = [0.0; 4];
        for c in poly.iter_mut() {
            *c = rng.gen_range(-1.0..1.0);
        }
        RandomSmoothPath {
            poly,
            amp: rng.gen_range(-1.0..1.0),
            freq: rng.gen_range(0.5..4.0),
            phase: rng.gen_range(0.0..std::f64::consts::TAU),
            exp_amp: rng.gen_range(-0.5..0.5),
            rate: rng.gen_range(-1.0..1.0),
            mid: window.mid(),
            half: 0.5 * window.width(),
        }
    }
}

impl TrialPath for RandomSmoothPath {
    fn eval(&self, x: f64) -> Result<Jet> {
        let s = 1.0 / self.half;
        let t = (x - self.mid) * s;
        let [a0, a1, a2, a3] = self.poly;
        let p = a0 + t * (a1 + t * (a2 + t * a3));
        let dp = a1 + t * (2.0 * a2 + t * 3.0 * a3);
        let d2p = 2.0 * a2 + 6.0 * a3 * t;
        let arg = self.freq * t + self.phase;
        let (sn, cs) = arg.sin_cos();
        let e = self.exp_amp * (self.rate * t).exp();
        let y = p + self.amp * sn + e;
        let dy = dp + self.amp * self.freq * cs + self.rate * e;
        let d2y = d2p - self.amp * self.freq * self.freq * sn + self.rate * self.rate * e;
        Ok(Jet::new(y, dy * s, d2y * s * s))
    }
}

/// Central-difference check of a path's derivatives at `x`; returns the
/// worst relative mismatch of (y′ vs FD y) and (y″ vs FD y′).
pub fn derivative_mismatch(path: &dyn TrialPath, x: f64, h: f64) -> Result<f64> {
    let p = path.eval(x + h)?;
    let m = path.eval(x - h)?;
    let c = path.eval(x)?;
    let fd1 = (p.y - m.y) / (2.0 * h);
    let fd2 = (p.dy - m.dy) / (2.0 * h);
    let e1 = (c.dy - fd1).abs() / fd1.abs().max(1.0);
    let e2 = (c.d2y - fd2).abs() / fd2.abs().max(1.0);
    Ok(e1.max(e2))
}
