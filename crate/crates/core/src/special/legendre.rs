//! Legendre functions of the first and second kind on (−1, 1), regular and
//! associated, with first and second derivatives.

use crate::error::{Error, Result};
use crate::path::Jet;

fn check(l: i64, m: i64, x: f64) -> Result<()> {
    if l < 0 || m.abs() > l {
        return Err(Error::InvalidParameter(format!(
            "Legendre functions need l >= 0 and |m| <= l, got l={l}, m={m}"
        )));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::domain("Legendre functions require |x| < 1", x));
    }
    Ok(())
}

/// D^j F_k for j = 0..=jmax and k = 0..=l, where F_0, F_1 are given with all
/// their derivatives. Values use the three-term recurrence, derivatives use
/// D^j F_{k+1} = D^j F_{k−1} + (2k+1) D^{j−1} F_k.
fn derivative_table(l: usize, jmax: usize, x: f64, f0: &[f64], f1: &[f64]) -> Vec<Vec<f64>> {
    let mut t = vec![f0.to_vec(), f1.to_vec()];
    for k in 1..l {
        let kf = k as f64;
        let mut next = vec![0.0; jmax + 1];
        next[0] = ((2.0 * kf + 1.0) * x * t[k][0] - kf * t[k - 1][0]) / (kf + 1.0);
        for j in 1..=jmax {
            next[j] = t[k - 1][j] + (2.0 * kf + 1.0) * t[k][j - 1];
        }
        t.push(next);
    }
    t
}

fn p_table(l: usize, jmax: usize, x: f64) -> Vec<f64> {
    let mut f0 = vec![0.0; jmax + 1];
    let mut f1 = vec![0.0; jmax + 1];
    f0[0] = 1.0;
    f1[0] = x;
    if jmax >= 1 {
        f1[1] = 1.0;
    }
    derivative_table(l, jmax, x, &f0, &f1).swap_remove(l)
}

fn q_table(l: usize, jmax: usize, x: f64) -> Vec<f64> {
    // D^j Q_0 = ½ (j−1)! [(1−x)^{−j} + (−1)^{j−1} (1+x)^{−j}] for j ≥ 1
    let mut f0 = vec![0.5 * ((1.0 + x) / (1.0 - x)).ln()];
    let mut fact = 1.0;
    for j in 1..=jmax {
        if j > 1 {
            fact *= (j - 1) as f64;
        }
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        f0.push(0.5 * fact * ((1.0 - x).powi(-(j as i32)) + sign * (1.0 + x).powi(-(j as i32))));
    }
    // Q_1 = x Q_0 − 1, so D^j Q_1 = x D^j Q_0 + j D^{j−1} Q_0
    let mut f1 = vec![x * f0[0] - 1.0];
    for j in 1..=jmax {
        f1.push(x * f0[j] + j as f64 * f0[j - 1]);
    }
    derivative_table(l, jmax, x, &f0, &f1).swap_remove(l)
}

/// (−1)^m (1−x²)^{m/2} D^m F_l with two derivatives, for m ≥ 0.
fn associate(d: &[f64], m: usize, x: f64) -> Jet {
    let mf = m as f64;
    let s = 1.0 - x * x;
    let w = s.powf(0.5 * mf);
    let (dw, d2w) = if m == 0 {
        (0.0, 0.0)
    } else {
        (
            -mf * x * s.powf(0.5 * mf - 1.0),
            -mf * s.powf(0.5 * mf - 1.0) + mf * (mf - 2.0) * x * x * s.powf(0.5 * mf - 2.0),
        )
    };
    let (g, dg, d2g) = (d[m], d[m + 1], d[m + 2]);
    let phase = if m % 2 == 1 { -1.0 } else { 1.0 };
    Jet::new(w * g, dw * g + w * dg, d2w * g + 2.0 * dw * dg + w * d2g).scaled(phase)
}

/// Associated Legendre function P_l^m with the Condon–Shortley phase.
/// Negative m is evaluated as |m|; the equation only involves m².
pub fn assoc_p(l: i64, m: i64, x: f64) -> Result<Jet> {
    check(l, m, x)?;
    let m = m.unsigned_abs() as usize;
    Ok(associate(&p_table(l as usize, m + 2, x), m, x))
}

/// Associated Legendre function of the second kind Q_l^m, |m| as above.
pub fn assoc_q(l: i64, m: i64, x: f64) -> Result<Jet> {
    check(l, m, x)?;
    let m = m.unsigned_abs() as usize;
    Ok(associate(&q_table(l as usize, m + 2, x), m, x))
}

pub fn legendre_p(l: i64, x: f64) -> Result<Jet> {
    assoc_p(l, 0, x)
}

pub fn legendre_q(l: i64, x: f64) -> Result<Jet> {
    assoc_q(l, 0, x)
}
