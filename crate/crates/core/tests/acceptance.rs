//! Acceptance gate: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use varlagr::helmholtz::{helmholtz_check, vbar_ansatz_check, Multiplier, ResidualForm};
use varlagr::lagrangian::{
    gauge_from_null, hns_wronskian, mixed_lagrangian, mixed_lagrangian_with, null_lagrangian_b0, stated_gauge_claim,
    standard_lagrangian, StatedGaugeClaim,
};
use varlagr::ode::{
    catalog_instances, make_airy, make_bessel, make_caldirola_kanai, make_custom_from_text, make_hermite,
    make_legendre, BesselKind,
};
use varlagr::path::{sine_bump, PolyPath};
use varlagr::report::{
    hns_forms_worst, gauge_identity_worst, mismatched_vbar, nsl_loop_worst, obstruction_fractions, stated_ratio,
    probe_interval, random_trials, standard_identity_worst,
};
use varlagr::special::{basis_for, rk_integrate, wronskian, Superposition};
use varlagr::variational::{action, recover_original, stationarity_probe, verify_annihilation, verify_ml_annihilation};
use varlagr::{Interval, LinearODE2, Result, TrialPath};

const SEED: u64 = 42;
const TRIALS: usize = 20;

type Outcome = Result<(bool, String)>;

fn trials_of(ode: &LinearODE2) -> Vec<varlagr::path::RandomSmoothPath> {
    random_trials(ode, TRIALS, SEED)
}

fn refs<T: TrialPath>(v: &[T]) -> Vec<&dyn TrialPath> {
    v.iter().map(|t| t as &dyn TrialPath).collect()
}

fn defaults(ode: &LinearODE2) -> Result<(Superposition, Superposition)> {
    let basis = Arc::new(basis_for(ode)?);
    Ok((
        Superposition::new(basis.clone(), 1.0, 0.5)?,
        Superposition::new(basis, 0.25, 1.0)?,
    ))
}

fn table_fidelity() -> Outcome {
    let table = [
        (BesselKind::Regular, 1.0, 1.0, -1.0),
        (BesselKind::Modified, 1.0, -1.0, 1.0),
        (BesselKind::Spherical, 2.0, 1.0, -1.0),
        (BesselKind::ModifiedSpherical, 2.0, -1.0, 1.0),
    ];
    let mut ok = true;
    for (kind, a, b, g) in table {
        let ode = make_bessel(kind, 1.0)?;
        let stored = (ode.params["alpha"], ode.params["beta"], ode.params["gamma"]);
        let (ca, cb, cg) = kind.constants();
        ok &= stored == (a, b, g) && (ca as f64, cb as f64, cg as f64) == (a, b, g);
    }
    Ok((ok, "four Bessel kinds".into()))
}

fn standard_identity() -> Outcome {
    let mut worst = 0.0f64;
    for ode in catalog_instances() {
        let t = trials_of(&ode);
        worst = worst.max(standard_identity_worst(&ode, &refs(&t), &ode.grid(64))?);
    }
    Ok((worst <= 1e-8, format!("worst relative gap {worst:.2e}")))
}

fn ml_annihilation() -> Outcome {
    let mut all = true;
    let mut mutated_all = true;
    let mut worst = 0.0f64;
    for ode in catalog_instances() {
        let t = trials_of(&ode);
        let r = verify_ml_annihilation(&ode, &refs(&t))?;
        all &= r.pass;
        worst = worst.max(r.norm);
        let m = verify_annihilation(&mixed_lagrangian_with(&ode, 0.5, 1.0 / 3.0), &refs(&t), &ode.grid(64))?;
        mutated_all &= m.pass;
    }
    Ok((
        all && !mutated_all,
        format!("max |EL(L_m)| {worst:.2e}; mutated 1/4 -> 1/3 verdict {}", if mutated_all { "PASS" } else { "FAIL" }),
    ))
}

fn gauge_identity() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut ratios = Vec::new();
    for ode in catalog_instances().iter().filter(|o| !o.b_is_zero()) {
        let l = mixed_lagrangian(ode);
        let g = gauge_from_null(&l)?;
        let t = trials_of(ode);
        let grid = ode.grid(64);
        for &x in &grid {
            let want = 0.25 * ode.b_at(x)? * ode.es(x)?;
            ok &= (g.coeff.value(ode, x)? - want).abs() <= 1e-12 * want.abs().max(1.0);
        }
        worst = worst.max(gauge_identity_worst(&l, &g, &refs(&t), &grid)?);
        if let StatedGaugeClaim::Stated(p) = stated_gauge_claim(&l) {
            ratios.push(stated_ratio(&l, &p, &refs(&t), &grid)?);
        }
    }
    for q in [1.0, 2.5] {
        let l = null_lagrangian_b0(q);
        let g = gauge_from_null(&l)?;
        ok &= g.coeff.value(&l.ode, 0.0)? == 0.25 * q;
        let t = trials_of(&l.ode);
        worst = worst.max(gauge_identity_worst(&l, &g, &refs(&t), &l.ode.grid(64))?);
        if let StatedGaugeClaim::Stated(p) = stated_gauge_claim(&l) {
            ratios.push(stated_ratio(&l, &p, &refs(&t), &l.ode.grid(64))?);
        }
    }
    // null q = 1, 2.5 and the regular and modified Bessel instances
    let off = ratios.iter().map(|r| r.map_or(f64::INFINITY, |r| (r - 2.0).abs())).fold(0.0, f64::max);
    ok &= worst <= 1e-9 && ratios.len() >= 4 && off <= 1e-10;
    Ok((ok, format!("identity gap {worst:.2e}; {} stated 1/8 claims off by ratio 2 within {off:.1e}", ratios.len())))
}

fn nsl_loop() -> Outcome {
    let mut ok = true;
    let (mut ric, mut fg, mut gen, mut rec) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut mismatch_failed = true;
    for ode in catalog_instances() {
        let (y, vbar) = defaults(&ode)?;
        let grid = ode.grid(64);
        let (a, b, c) = nsl_loop_worst(&ode, &vbar, &grid)?;
        ric = ric.max(a);
        fg = fg.max(b);
        gen = gen.max(c);
        let r = recover_original(&ode, &y, &vbar, &grid)?;
        ok &= r.pass && !r.grid.is_empty();
        rec = rec.max(r.norm);
        let bad = recover_original(&ode, &y, &mismatched_vbar(&ode, 0.25, 1.0)?, &grid)?;
        mismatch_failed &= !bad.pass;
    }
    ok &= ric <= 1e-8 && fg <= 1e-8 && gen <= 1e-8 && mismatch_failed;
    Ok((
        ok,
        format!("riccati {ric:.1e}, f/g {fg:.1e}, coefficients {gen:.1e}, recovery {rec:.1e}, mismatched v-bar fails: {mismatch_failed}"),
    ))
}

fn hns_forms() -> Outcome {
    let mut worst = 0.0f64;
    let mut det_ok = true;
    for ode in catalog_instances() {
        let (y, vbar) = defaults(&ode)?;
        worst = worst.max(hns_forms_worst(&y, &vbar, &ode.grid(32))?);
        let prop = Superposition::new(y.basis.clone(), 3.0, 1.5)?;
        let x = ode.guarded_window().mid();
        det_ok &= matches!(hns_wronskian(&y, &prop, x), Err(varlagr::Error::DeterminantZero { .. }));
    }
    Ok((worst <= 1e-10 && det_ok, format!("worst relative gap {worst:.2e}; proportional constants rejected: {det_ok}")))
}

fn obstruction() -> Outcome {
    let mut least = 1.0f64;
    let mut least_derived = 1.0f64;
    for ode in catalog_instances() {
        let (y, vbar) = defaults(&ode)?;
        let (s, d) = obstruction_fractions(&ode, &y, &vbar, &ode.grid(64))?;
        least = least.min(s);
        least_derived = least_derived.min(d);
    }
    Ok((
        least >= 0.9,
        format!("min fraction with |extra| > 1e-3: {least:.3} (directly derived surplus: {least_derived:.3})"),
    ))
}

fn helmholtz() -> Outcome {
    let mut ok = true;
    let mut one_gap = 0.0f64;
    let free = make_custom_from_text("0", "0", Interval::REAL, BTreeMap::new())?;
    let mut odes = catalog_instances();
    odes.push(free);
    for ode in &odes {
        let grid = ode.grid(64);
        let one = helmholtz_check(&ResidualForm::new(ode, Multiplier::One), &grid)?;
        for (&x, &r) in one.grid.iter().zip(&one.residuals) {
            let want = 2.0 * ode.b_at(x)?;
            one_gap = one_gap.max((r - want).abs() / want.abs().max(1.0));
        }
        ok &= one.verdict(3).is_pass() == ode.b_is_zero();
        let es = helmholtz_check(&ResidualForm::new(ode, Multiplier::Es), &grid)?;
        ok &= es.all_pass();
        for (&x, &r) in es.grid.iter().zip(&es.residuals) {
            ok &= r.abs() <= 1e-10 * ode.es(x)?;
        }
    }
    ok &= one_gap <= 1e-12;
    let member = make_custom_from_text("1/(8*x)", "3/(16*x^2)", Interval::new(0.0, 5.0), BTreeMap::new())?;
    let m = vbar_ansatz_check(&member, &member.grid(64))?;
    let member_ok = m.aux_pass && m.subset_pass && m.equivalent;
    let mut legendre_ok = true;
    for (l, mm) in [(1, 0), (2, 0), (2, 1)] {
        let leg = make_legendre(l, mm)?;
        let r = vbar_ansatz_check(&leg, &leg.grid(64))?;
        legendre_ok &= !r.aux_pass && !r.subset_pass && r.equivalent;
    }
    Ok((
        ok && member_ok && legendre_ok,
        format!("M=one vs 2B gap {one_gap:.1e}; subset member both pass: {member_ok}; Legendre both fail: {legendre_ok}"),
    ))
}

fn oracle_agreement() -> Outcome {
    let mut worst_rk = 0.0f64;
    let mut worst_abel = 0.0f64;
    for ode in catalog_instances() {
        let basis = basis_for(&ode)?;
        let grid = ode.grid(64);
        let w = ode.guarded_window();
        let seed = basis.seed_x;
        for y in [&basis.y1, &basis.y2] {
            let j = y.eval(seed)?;
            let rk = rk_integrate(&ode, j.y, j.dy, seed, &[w.lo, w.hi])?;
            for &x in &grid {
                let (a, b) = (y.eval(x)?, rk.eval(x)?);
                worst_rk = worst_rk.max((a.y - b.y).abs().max((a.dy - b.dy).abs()) / a.scale());
            }
        }
        let w0 = wronskian(&basis, seed)? * ode.es(seed)?;
        for &x in &grid {
            worst_abel = worst_abel.max((wronskian(&basis, x)? * ode.es(x)? / w0 - 1.0).abs());
        }
    }
    let j0 = make_bessel(BesselKind::Regular, 0.0)?;
    let basis = basis_for(&j0)?;
    let mut worst_j0 = 0.0f64;
    for x in j0.grid(64) {
        worst_j0 = worst_j0.max((x * wronskian(&basis, x)?.abs() - 2.0 / PI).abs());
    }
    Ok((
        worst_rk <= 1e-7 && worst_j0 <= 1e-8 && worst_abel <= 1e-7,
        format!("evaluator vs integrator {worst_rk:.1e}; x*W(J0,Y0) - 2/pi {worst_j0:.1e}; W*E_s drift {worst_abel:.1e}"),
    ))
}

fn stationarity() -> Outcome {
    let odes = [
        make_airy(),
        make_hermite(2),
        make_legendre(2, 0)?,
        make_bessel(BesselKind::Regular, 0.0)?,
        make_caldirola_kanai(0.1, 1.0),
    ];
    let mut ok = true;
    let (mut sol, mut non, mut nul) = (0.0f64, f64::INFINITY, 0.0f64);
    for ode in &odes {
        let (y, _) = defaults(ode)?;
        let iv = probe_interval(ode);
        let bump = sine_bump(iv.lo, iv.hi);
        let l = standard_lagrangian(ode);
        let s = action(&l, &y, iv.lo, iv.hi)?;
        let p = stationarity_probe(&l, &y, &bump, 1e-4, iv.lo, iv.hi)?;
        ok &= p.abs() <= 1e-6 * s.abs().max(1.0);
        sol = sol.max(p.abs() / s.abs().max(1.0));
        let sq = PolyPath::new(vec![0.0, 0.0, 1.0]);
        let q = stationarity_probe(&l, &sq, &bump, 1e-4, iv.lo, iv.hi)?;
        ok &= q.abs() > 1e-3;
        non = non.min(q.abs());
        if !ode.b_is_zero() {
            let lm = mixed_lagrangian(ode);
            for t in trials_of(ode).iter().take(5) {
                let r = stationarity_probe(&lm, t, &bump, 1e-4, iv.lo, iv.hi)?;
                ok &= r.abs() <= 1e-9;
                nul = nul.max(r.abs());
            }
        }
    }
    Ok((ok, format!("solutions {sol:.1e}; non-solution min {non:.2e}; L_m alone {nul:.1e}")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Bessel (alpha, beta, gamma) table fidelity", table_fidelity),
        ("EL(L_s) = (y'' + B y' + C y) E_s", standard_identity),
        ("mixed Lagrangian annihilation and mutation", ml_annihilation),
        ("gauge identity with phi = B E_s y^2 / 4", gauge_identity),
        ("Riccati, f/g and recovery loop", nsl_loop),
        ("direct vs Wronskian form of H_ns", hns_forms),
        ("obstruction to varying v-bar", obstruction),
        ("Helmholtz condition 3 and subset ansatz", helmholtz),
        ("special functions vs integrator, Abel identity", oracle_agreement),
        ("action stationarity probes", stationarity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {:>2}: {name} ({detail}) [{secs:.2}s]", if ok { "PASS" } else { "FAIL" }, i + 1);
        failed += (!ok) as usize;
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
