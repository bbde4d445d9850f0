use crate::error::{Error, Result};
use crate::path::Jet;

/// Ai(0) = 1/(3^{2/3} Γ(2/3)).
pub const AIRY_C1: f64 = 0.355_028_053_887_817_2;
/// −Ai′(0) = 1/(3^{1/3} Γ(1/3)).
pub const AIRY_C2: f64 = 0.258_819_403_792_806_8;

const MAX_ABS_X: f64 = 12.0;
const MAX_TERMS: usize = 200;

/// The two Maclaurin series f, g with Ai = c1 f − c2 g and
/// Bi = √3 (c1 f + c2 g), each returned as (value, derivative).
fn series(x: f64) -> Result<((f64, f64), (f64, f64))> {
    if !(x.abs() <= MAX_ABS_X) {
        return Err(Error::Accuracy {
            what: "Airy series is limited to |x| <= 12".into(),
            x,
        });
    }
    let x3 = x * x * x;
    // f = Σ a_k x^{3k}, a_0 = 1, a_{k+1} = a_k / ((3k+2)(3k+3))
    // g = Σ b_k x^{3k+1}, b_0 = 1, b_{k+1} = b_k / ((3k+3)(3k+4))
    let (mut tf, mut tg) = (1.0, x);
    let (mut f, mut df) = (1.0, 0.0);
    let (mut g, mut dg) = (x, 1.0);
    let mut converged = false;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        // d/dx x^{3k} = 3k x^{3k-1}, folded into the ratio of successive terms
        let nf = tf * x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        let ng = tg * x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        let tdf = tf * x * x / (3.0 * kf + 2.0);
        let tdg = tg * x * x / (3.0 * kf + 3.0);
        tf = nf;
        tg = ng;
        f += tf;
        g += tg;
        df += tdf;
        dg += tdg;
        let small = |t: f64, s: f64| t.abs() <= 1e-16 * s.abs() || t == 0.0;
        if small(tf, f) && small(tg, g) && small(tdf, df) && small(tdg, dg) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Accuracy {
            what: "Airy series did not converge".into(),
            x,
        });
    }
    Ok(((f, df), (g, dg)))
}

/// Ai with first and second derivative (Ai″ = x Ai).
pub fn airy_ai(x: f64) -> Result<Jet> {
    let ((f, df), (g, dg)) = series(x)?;
    let y = AIRY_C1 * f - AIRY_C2 * g;
    let dy = AIRY_C1 * df - AIRY_C2 * dg;
    Ok(Jet::new(y, dy, x * y))
}

/// Bi with first and second derivative (Bi″ = x Bi).
pub fn airy_bi(x: f64) -> Result<Jet> {
    let ((f, df), (g, dg)) = series(x)?;
    let s3 = 3f64.sqrt();
    let y = s3 * (AIRY_C1 * f + AIRY_C2 * g);
    let dy = s3 * (AIRY_C1 * df + AIRY_C2 * dg);
    Ok(Jet::new(y, dy, x * y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // A&S Table 10.11
        assert!((airy_ai(1.0).unwrap().y - 0.135_292_416_312_881_4).abs() < 1e-14);
        assert!((airy_bi(1.0).unwrap().y - 1.207_423_594_952_871_3).abs() < 1e-13);
        assert!((airy_ai(-2.0).unwrap().y - 0.227_407_428_201_685_6).abs() < 1e-13);
        assert!((airy_ai(1.0).unwrap().dy + 0.159_147_441_296_793_2).abs() < 1e-14);
    }

    #[test]
    fn normalization_ratio() {
        let r = airy_ai(0.0).unwrap().y / airy_bi(0.0).unwrap().y;
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn wronskian_is_one_over_pi() {
        for &x in &[-6.0, -2.5, 0.0, 1.0, 3.0] {
            let a = airy_ai(x).unwrap();
            let b = airy_bi(x).unwrap();
            let w = a.y * b.dy - a.dy * b.y;
            assert!((w * std::f64::consts::PI - 1.0).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(airy_ai(12.5).is_err());
        assert!(airy_bi(f64::NAN).is_err());
    }
}
