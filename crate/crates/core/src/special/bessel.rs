//! Cylindrical and spherical Bessel functions of real argument x > 0.
//!
//! J and I come from their ascending series, Y and K of integer order from
//! the logarithmic series of Abramowitz & Stegun 9.1.11 and 9.6.11, and the
//! spherical kinds from series (j, i) or closed forms with upward recurrence
//! (y, k). Every evaluator returns (f, f′, f″) computed without using the
//! differential equation itself.

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::path::Jet;

const MAX_X: f64 = 30.0;
const MAX_TERMS: usize = 200;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_x(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("{what} requires x > 0"), x));
    }
    if x > MAX_X {
        return Err(Error::Accuracy {
            what: format!("{what} series is limited to x <= 30"),
            x,
        });
    }
    Ok(())
}

fn nonconvergence(what: &str, x: f64) -> Error {
    Error::Accuracy {
        what: format!("{what} series did not converge"),
        x,
    }
}

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

fn recip_gamma(z: f64) -> f64 {
    if z <= 0.0 && is_integer(z) {
        0.0
    } else {
        1.0 / gamma(z)
    }
}

/// Σ_k t_k x^{2k+ν} with t_{k+1}/t_k = sign·(x²/4)/((k+1)(k+1+ν)) and
/// t_0 = (x/2)^ν/Γ(ν+1), returned with its first two derivatives.
fn ascending(nu: f64, x: f64, sign: f64, what: &str) -> Result<Jet> {
    let q = sign * 0.25 * x * x;
    let mut t = (0.5 * x).powf(nu) * recip_gamma(nu + 1.0);
    let (mut y, mut dy, mut d2y) = (0.0, 0.0, 0.0);
    for k in 0..MAX_TERMS {
        let p = 2.0 * k as f64 + nu;
        let (a, b, c) = (t, t * p / x, t * p * (p - 1.0) / (x * x));
        y += a;
        dy += b;
        d2y += c;
        let small = |term: f64, sum: f64| term.abs() <= 1e-16 * sum.abs() || term == 0.0;
        if k > 0 && small(a, y) && small(b, dy) && small(c, d2y) {
            return Ok(Jet::new(y, dy, d2y));
        }
        let kf = k as f64;
        // Negative integer orders are reflected by the callers, so this never vanishes.
        let denom = (kf + 1.0) * (kf + 1.0 + nu);
        t *= q / denom;
    }
    Err(nonconvergence(what, x))
}

/// J_ν(x) for real ν.
pub fn bessel_j(nu: f64, x: f64) -> Result<Jet> {
    check_x(x, "J")?;
    if nu < 0.0 && is_integer(nu) {
        let s = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(bessel_j(-nu, x)?.scaled(s));
    }
    ascending(nu, x, -1.0, "J")
}

/// I_ν(x) for real ν.
pub fn bessel_i(nu: f64, x: f64) -> Result<Jet> {
    check_x(x, "I")?;
    if nu < 0.0 && is_integer(nu) {
        return bessel_i(-nu, x);
    }
    ascending(nu, x, 1.0, "I")
}

fn harmonic(k: usize) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Value only of Y_n or K_n (n ≥ 0) from the logarithmic series.
/// `modified` selects K.
fn log_series(n: usize, x: f64, modified: bool) -> Result<f64> {
    let h = 0.5 * x;
    let q = 0.25 * x * x;
    let what = if modified { "K" } else { "Y" };
    // finite part
    let mut finite = 0.0;
    for k in 0..n {
        let sgn = if modified && k % 2 == 1 { -1.0 } else { 1.0 };
        finite += sgn * factorial(n - k - 1) / factorial(k) * q.powi(k as i32);
    }
    finite *= h.powi(-(n as i32));
    // infinite part with ψ(k+1) + ψ(n+k+1) = -2γ + H_k + H_{n+k}
    let mut t = h.powi(n as i32) / factorial(n);
    let (mut hk, mut hnk) = (0.0, harmonic(n));
    let mut series = 0.0;
    let mut converged = false;
    for k in 0..MAX_TERMS {
        let term = t * (hk + hnk - 2.0 * EULER_GAMMA);
        series += term;
        if k > 0 && (term.abs() <= 1e-16 * series.abs() || term == 0.0) {
            converged = true;
            break;
        }
        let kf = k as f64;
        let sign = if modified { 1.0 } else { -1.0 };
        t *= sign * q / ((kf + 1.0) * (kf + 1.0 + n as f64));
        hk += 1.0 / (kf + 1.0);
        hnk += 1.0 / (kf + 1.0 + n as f64);
    }
    if !converged {
        return Err(nonconvergence(what, x));
    }
    let ln = h.ln();
    let pi = std::f64::consts::PI;
    if modified {
        let i = ascending(n as f64, x, 1.0, "I")?.y;
        let odd = n % 2 == 1;
        let s_log = if odd { 1.0 } else { -1.0 }; // (-1)^{n+1}
        let s_ser = if odd { -1.0 } else { 1.0 }; // (-1)^n
        Ok(0.5 * finite + s_log * ln * i + s_ser * 0.5 * series)
    } else {
        let j = ascending(n as f64, x, -1.0, "J")?.y;
        Ok(-finite / pi + 2.0 / pi * ln * j - series / pi)
    }
}

fn y_int(n: i64, x: f64) -> Result<f64> {
    let v = log_series(n.unsigned_abs() as usize, x, false)?;
    Ok(if n < 0 && n % 2 != 0 { -v } else { v })
}

fn k_int(n: i64, x: f64) -> Result<f64> {
    log_series(n.unsigned_abs() as usize, x, true)
}

fn integer_order(nu: f64, what: &str) -> Result<i64> {
    if !is_integer(nu) || nu.abs() > 100.0 {
        return Err(Error::InvalidParameter(format!("{what} is implemented for integer orders, got {nu}")));
    }
    Ok(nu as i64)
}

/// Y_n(x) for integer n. Derivatives from
/// Y′ = (Y_{n−1} − Y_{n+1})/2 and Y″ = (Y_{n−2} − 2Y_n + Y_{n+2})/4.
pub fn bessel_y(nu: f64, x: f64) -> Result<Jet> {
    check_x(x, "Y")?;
    let n = integer_order(nu, "Y")?;
    let y = y_int(n, x)?;
    let dy = 0.5 * (y_int(n - 1, x)? - y_int(n + 1, x)?);
    let d2y = 0.25 * (y_int(n - 2, x)? - 2.0 * y + y_int(n + 2, x)?);
    Ok(Jet::new(y, dy, d2y))
}

/// K_n(x) for integer n. Derivatives from
/// K′ = −(K_{n−1} + K_{n+1})/2 and K″ = (K_{n−2} + 2K_n + K_{n+2})/4.
pub fn bessel_k(nu: f64, x: f64) -> Result<Jet> {
    check_x(x, "K")?;
    let n = integer_order(nu, "K")?;
    let k = k_int(n, x)?;
    let dk = -0.5 * (k_int(n - 1, x)? + k_int(n + 1, x)?);
    let d2k = 0.25 * (k_int(n - 2, x)? + 2.0 * k + k_int(n + 2, x)?);
    Ok(Jet::new(k, dk, d2k))
}

fn spherical_order(l: i64) -> Result<usize> {
    if !(0..=100).contains(&l) {
        return Err(Error::InvalidParameter(format!("spherical order must be in 0..=100, got {l}")));
    }
    Ok(l as usize)
}

/// x^l Σ (±x²/2)^k/(k! (2l+2k+1)!!) with derivatives.
fn spherical_series(l: usize, x: f64, sign: f64, what: &str) -> Result<Jet> {
    let q = sign * 0.5 * x * x;
    let double_fact: f64 = (0..=l).map(|j| (2 * j + 1) as f64).product();
    let mut t = x.powi(l as i32) / double_fact;
    let (mut y, mut dy, mut d2y) = (0.0, 0.0, 0.0);
    for k in 0..MAX_TERMS {
        let p = (l + 2 * k) as f64;
        let (a, b, c) = (t, t * p / x, t * p * (p - 1.0) / (x * x));
        y += a;
        dy += b;
        d2y += c;
        let small = |term: f64, sum: f64| term.abs() <= 1e-16 * sum.abs() || term == 0.0;
        if k > 0 && small(a, y) && small(b, dy) && small(c, d2y) {
            return Ok(Jet::new(y, dy, d2y));
        }
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (2.0 * (l as f64) + 2.0 * kf + 3.0));
    }
    Err(nonconvergence(what, x))
}

/// Spherical j_l(x).
pub fn spherical_j(l: i64, x: f64) -> Result<Jet> {
    check_x(x, "j")?;
    spherical_series(spherical_order(l)?, x, -1.0, "j")
}

/// Modified spherical i_l(x) (first kind).
pub fn spherical_i(l: i64, x: f64) -> Result<Jet> {
    check_x(x, "i")?;
    spherical_series(spherical_order(l)?, x, 1.0, "i")
}

/// Jets of an upward-recurrent family f_0..f_l given values f_0..f_{l+2}
/// and the derivative rule f′_n = s·f_{n−1} − (n+1)/x·f_n (n ≥ 1),
/// f′_0 = s₀·f_1.
fn recurrent_jet(vals: &[f64], l: usize, x: f64, s: f64, s0: f64) -> Jet {
    let d = |n: usize| -> f64 {
        if n == 0 {
            s0 * vals[1]
        } else {
            s * vals[n - 1] - (n as f64 + 1.0) / x * vals[n]
        }
    };
    let d2 = if l == 0 {
        s0 * d(1)
    } else {
        let lf = l as f64;
        s * d(l - 1) + (lf + 1.0) / (x * x) * vals[l] - (lf + 1.0) / x * d(l)
    };
    Jet::new(vals[l], d(l), d2)
}

/// Spherical y_l(x) from y_0 = −cos x/x, y_1 = −cos x/x² − sin x/x and
/// y_{n+1} = (2n+1)/x·y_n − y_{n−1}.
pub fn spherical_y(l: i64, x: f64) -> Result<Jet> {
    check_x(x, "y")?;
    let l = spherical_order(l)?;
    let (s, c) = x.sin_cos();
    let mut v = vec![-c / x, -c / (x * x) - s / x];
    for n in 1..=l {
        let next = (2 * n + 1) as f64 / x * v[n] - v[n - 1];
        v.push(next);
    }
    Ok(recurrent_jet(&v, l, x, 1.0, -1.0))
}

/// Modified spherical k_l(x) = e^{−x}/x · Σ (polynomial in 1/x), normalized
/// so that k_0 = e^{−x}/x, with k_{n+1} = k_{n−1} + (2n+1)/x·k_n.
pub fn spherical_k(l: i64, x: f64) -> Result<Jet> {
    check_x(x, "k")?;
    let l = spherical_order(l)?;
    let e = (-x).exp();
    let mut v = vec![e / x, e * (1.0 / x + 1.0 / (x * x))];
    for n in 1..=l {
        let next = v[n - 1] + (2 * n + 1) as f64 / x * v[n];
        v.push(next);
    }
    Ok(recurrent_jet(&v, l, x, -1.0, -1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn reference_values_at_one() {
        assert!(close(bessel_j(0.0, 1.0).unwrap().y, 0.765_197_686_557_966_6, 1e-15));
        assert!(close(bessel_j(1.0, 1.0).unwrap().y, 0.440_050_585_744_933_55, 1e-15));
        assert!(close(bessel_y(0.0, 1.0).unwrap().y, 0.088_256_964_215_676_97, 1e-14));
        assert!(close(bessel_y(1.0, 1.0).unwrap().y, -0.781_212_821_300_288_7, 1e-14));
        assert!(close(bessel_i(0.0, 1.0).unwrap().y, 1.266_065_877_752_008_2, 1e-15));
        assert!(close(bessel_i(1.0, 1.0).unwrap().y, 0.565_159_103_992_485_1, 1e-15));
        assert!(close(bessel_k(0.0, 1.0).unwrap().y, 0.421_024_438_240_708_34, 1e-14));
        assert!(close(bessel_k(1.0, 1.0).unwrap().y, 0.601_907_230_197_234_6, 1e-14));
        assert!(close(bessel_j(0.5, 1.0).unwrap().y, 0.671_396_707_141_803_1, 1e-14));
    }

    #[test]
    fn derivative_identities() {
        // J0' = -J1, K0' = -K1, Y0' = -Y1
        for &x in &[0.3, 1.0, 4.5, 9.0] {
            assert!(close(bessel_j(0.0, x).unwrap().dy, -bessel_j(1.0, x).unwrap().y, 1e-13));
            assert!(close(bessel_y(0.0, x).unwrap().dy, -bessel_y(1.0, x).unwrap().y, 1e-12));
        }
        assert!(close(bessel_k(0.0, 2.0).unwrap().dy, -bessel_k(1.0, 2.0).unwrap().y, 1e-13));
        assert!(close(bessel_i(0.0, 2.0).unwrap().dy, bessel_i(1.0, 2.0).unwrap().y, 1e-14));
    }

    #[test]
    fn half_order_closed_forms() {
        let x: f64 = 2.3;
        let c = (2.0 / (PI * x)).sqrt();
        assert!(close(bessel_j(0.5, x).unwrap().y, c * x.sin(), 1e-14));
        assert!(close(bessel_j(-0.5, x).unwrap().y, c * x.cos(), 1e-14));
        assert!(close(bessel_i(0.5, x).unwrap().y, c * x.sinh(), 1e-14));
    }

    #[test]
    fn negative_integer_orders_reflect() {
        assert!(close(bessel_j(-1.0, 2.0).unwrap().y, -bessel_j(1.0, 2.0).unwrap().y, 1e-15));
        assert!(close(bessel_i(-2.0, 2.0).unwrap().y, bessel_i(2.0, 2.0).unwrap().y, 1e-15));
        assert!(close(bessel_y(-1.0, 2.0).unwrap().y, -bessel_y(1.0, 2.0).unwrap().y, 1e-15));
        assert!(close(bessel_k(-1.0, 2.0).unwrap().y, bessel_k(1.0, 2.0).unwrap().y, 1e-15));
    }

    #[test]
    fn small_argument_limit() {
        assert!(close(bessel_j(0.0, 1e-8).unwrap().y, 1.0, 1e-15));
    }

    #[test]
    fn spherical_closed_forms() {
        let x = PI / 2.0;
        assert!(close(spherical_j(0, x).unwrap().y, 2.0 / PI, 1e-15));
        let x: f64 = 1.7;
        let j1 = x.sin() / (x * x) - x.cos() / x;
        assert!(close(spherical_j(1, x).unwrap().y, j1, 1e-14));
        assert!(close(spherical_i(0, x).unwrap().y, x.sinh() / x, 1e-14));
        let y1 = spherical_y(1, x).unwrap();
        assert!(close(y1.y, -x.cos() / (x * x) - x.sin() / x, 1e-15));
        // j_l y_l' - j_l' y_l = 1/x^2
        for l in 0..4 {
            let j = spherical_j(l, x).unwrap();
            let y = spherical_y(l, x).unwrap();
            assert!(close(j.y * y.dy - j.dy * y.y, 1.0 / (x * x), 1e-12), "l={l}");
        }
    }

    #[test]
    fn derivative_consistency_by_differences() {
        let h = 1e-5;
        let fns: Vec<Box<dyn Fn(f64) -> Jet>> = vec![
            Box::new(|x| bessel_y(2.0, x).unwrap()),
            Box::new(|x| bessel_k(1.0, x).unwrap()),
            Box::new(|x| spherical_y(3, x).unwrap()),
            Box::new(|x| spherical_k(2, x).unwrap()),
            Box::new(|x| spherical_i(2, x).unwrap()),
        ];
        for f in &fns {
            for &x in &[0.7, 2.0, 4.0] {
                let c = f(x);
                let fd1 = (f(x + h).y - f(x - h).y) / (2.0 * h);
                let fd2 = (f(x + h).dy - f(x - h).dy) / (2.0 * h);
                assert!(close(c.dy, fd1, 1e-7));
                assert!(close(c.d2y, fd2, 1e-7));
            }
        }
    }

    #[test]
    fn domain_and_accuracy_errors() {
        assert!(matches!(bessel_j(0.0, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_j(0.0, 31.0), Err(Error::Accuracy { .. })));
        assert!(bessel_y(0.5, 1.0).is_err());
    }
}
