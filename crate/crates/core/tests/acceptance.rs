//! Acceptance suite. Each test prints one `criterion <n>: PASS/FAIL` line;
//! run with `cargo test --test acceptance -- --nocapture` to see them all.

mod common;

use common::{annulus, bisect, conclude, example_problem, fit_loglog, middle_root_oracle, TAU};
use dwell_core::cubic::{
    correspondence_check, e_poly, g_poly, kappa, kappa_cubed, solve_e, solve_g,
};
use dwell_core::functional::{eval_k, lp_norm, taylor_decompose, PNorm};
use dwell_core::probe::{
    bump_profile, candidate_profiles, evaluate_assertions, frechet_probe, local_max_certificate,
    lp_nonextremum_probe, smooth_perturbations, stationarity_residual, stationary_point,
    sup_norm_probe,
};
use dwell_core::problem::eval_h;
use dwell_core::quadrature::simpson;
use dwell_core::radial::{build_radial_potential, gamma_n, weighted_potential_residual};

const PI: f64 = std::f64::consts::PI;

#[test]
fn criterion_01_cubic_identities() {
    let mut worst_residual = 0.0f64;
    let mut violations = 0usize;
    for &lambda in &[0.5f64, 1.5, 3.0, 10.0] {
        let kc: f64 = kappa_cubed(lambda);
        let k = kappa(lambda);
        let tol = 1e-12 * kc.max(1.0);
        for i in 0..1000 {
            let a = kc * (2.0 * (i as f64 + 0.5) / 1000.0 - 1.0);
            let t = solve_g(a, lambda).unwrap();
            for z in [t.z1, t.z2, t.z3] {
                worst_residual =
                    worst_residual.max((g_poly(z, lambda) - a).abs() / tol.max(1e-300));
            }
            let ordered = t.z1 < t.z2 && t.z2 < t.z3;
            let brackets =
                t.z1 > -2.0 * k && t.z1 < -k && t.z2 > -k && t.z2 < k && t.z3 > k && t.z3 < 2.0 * k;
            if !ordered || !brackets {
                violations += 1;
            }
        }
    }
    conclude(
        "1 cubic-identities",
        worst_residual < 1.0 && violations == 0,
        &format!("max residual {worst_residual:.3e} of tolerance, {violations} bracket violations"),
    );
}

#[test]
fn criterion_02_correspondence() {
    let mut worst = 0.0f64;
    for &lambda in &[1.5, 3.0] {
        let kc = kappa_cubed(lambda);
        for i in 0..1000 {
            let a = kc * (i as f64 + 0.5) / 1000.0;
            for r in correspondence_check(a, lambda, 1.0).unwrap() {
                worst = worst.max(r);
            }
        }
    }
    conclude(
        "2 correspondence",
        worst < 1e-10,
        &format!("max |z_j E_sigma(j)^-1(A^2) - A| = {worst:.3e}"),
    );
}

#[test]
fn criterion_03_stationarity() {
    let (p, f) = example_problem(2048);
    let v = stationary_point(&p, &f).unwrap();
    let resid = stationarity_residual(&p, &f, &v, 20).unwrap();
    let oracle = middle_root_oracle(1.0, 3.0); // F(pi) = 1 analytically
    let frozen = -0.33987688662318255;
    let value_ok = (v.value(1024) - oracle).abs() < 1e-6 && (oracle - frozen).abs() < 1e-12;
    conclude(
        "3 stationarity",
        resid < 1e-8 && value_ok,
        &format!(
            "max |T(h_j)| = {resid:.3e}, v(pi) = {} vs oracle {oracle}",
            v.value(1024)
        ),
    );
}

#[test]
fn criterion_04_taylor_identity() {
    let (p, f) = example_problem(1024);
    let vs = smooth_perturbations(0.0, TAU, 1024, 100, (0.05, 0.9), 101).unwrap();
    let hs = smooth_perturbations(0.0, TAU, 1024, 100, (0.02, 0.6), 202).unwrap();
    let mut worst = 0.0f64;
    for (v, h) in vs.iter().zip(hs.iter()) {
        let t = taylor_decompose(&p, &f, v, h).unwrap();
        worst = worst.max(t.identity_residual() / (1.0 + t.k_at_v_plus_h.abs()));
    }
    conclude(
        "4 taylor-identity",
        worst < 1e-10,
        &format!("max relative residual over 100 seeded pairs = {worst:.3e}"),
    );
}

#[test]
fn criterion_05_sup_norm_local_max() {
    let (p, f) = example_problem(2048);
    let v = stationary_point(&p, &f).unwrap();
    let cert = local_max_certificate(&p, &v).unwrap();

    // derived: plug the bisection-oracle gamma into the closed formulas
    let gamma_oracle = middle_root_oracle(1.0, 3.0).abs();
    let eta_oracle = -(1.5 * gamma_oracle * gamma_oracle - 3.0) / 2.0;
    let eps_oracle = 2.0 * ((gamma_oracle * gamma_oracle + 2.0 * eta_oracle).sqrt() - gamma_oracle);
    let cert_ok = (cert.gamma_bar - gamma_oracle).abs() < 1e-6
        && (cert.eta - eta_oracle).abs() < 1e-6
        && (cert.epsilon - eps_oracle).abs() < 1e-6;

    let report = sup_norm_probe(&p, &f, &v, 1000, 42).unwrap();
    let negatives = report.samples.iter().filter(|s| s.value_2 < 0.0).count();
    conclude(
        "5 sup-norm-local-max",
        cert_ok && report.verdict.pass && negatives == 1000,
        &format!(
            "certificate ({}, {}, {}) vs oracle ({gamma_oracle}, {eta_oracle}, {eps_oracle}); {negatives}/1000 trials negative",
            cert.gamma_bar, cert.eta, cert.epsilon
        ),
    );
}

#[test]
fn criterion_06_lp_non_extremum() {
    let (p, f) = example_problem(2048);
    let v = stationary_point(&p, &f).unwrap();
    let out = lp_nonextremum_probe(
        &p,
        &f,
        &v,
        PNorm::Finite(2.0),
        &[10, 100, 1_000, 10_000],
        Some(0.9),
    )
    .unwrap();

    // closed-form L2 norms match (2/3)^{1/2} n^{-0.05}
    let mut norms_exact = true;
    for s in &out.not_max.samples {
        let formula = (2.0f64 / 3.0).sqrt() * (s.index as f64).powf(-0.05);
        norms_exact &= (s.value_1 - formula).abs() <= 1e-14 * formula;
    }
    let norms_vanish = out
        .not_max
        .samples
        .windows(2)
        .all(|w| w[1].value_1 < w[0].value_1);
    let smooth_ok = out.not_min.verdict.pass;
    conclude(
        "6 lp-non-extremum",
        norms_exact
            && norms_vanish
            && out.n_star.is_some()
            && out.not_max.verdict.pass
            && smooth_ok,
        &format!(
            "n* = {:?}, norms exact: {norms_exact}, spike verdict: {}, smooth verdict: {}",
            out.n_star, out.not_max.verdict.pass, smooth_ok
        ),
    );
}

const FIT_NS: [u64; 5] = [
    1_000_000,
    10_000_000,
    100_000_000,
    1_000_000_000,
    10_000_000_000,
];

#[test]
fn criterion_07_frechet_dichotomy() {
    let (p, f) = example_problem(1024);
    // profile crossing the branch bound so all expansion terms share a sign
    let v = bump_profile(&p, 1024, 6.0f64.sqrt()).unwrap();
    let gamma = 0.9;
    let mut all_ok = true;
    let mut detail = String::new();

    for pv in [1.0, 2.0, 3.0] {
        let r = frechet_probe(&p, &f, &v, PNorm::Finite(pv), 4, &FIT_NS, Some(gamma)).unwrap();
        let expected = (1.0 - pv + 3.0 * gamma) / pv;
        let fitted = r.remainder_fitted_slope.unwrap();
        // independent fit over the reported remainder samples
        let pts: Vec<(f64, f64)> = r
            .samples
            .iter()
            .filter(|s| s.series == "remainder")
            .map(|s| (s.x_or_n, s.value_2))
            .collect();
        let refit = fit_loglog(&pts);
        let ok = (fitted - expected).abs() <= 0.1 * expected.abs()
            && (refit - fitted).abs() < 1e-6
            && r.verdict.pass;
        all_ok &= ok;
        detail.push_str(&format!("p={pv}: slope {fitted:.4} vs {expected:.4}; "));
    }
    for pn in [PNorm::Finite(4.0), PNorm::Finite(8.0), PNorm::Infinity] {
        let r = frechet_probe(&p, &f, &v, pn, 4, &FIT_NS, Some(gamma)).unwrap();
        let ratios: Vec<f64> = r
            .samples
            .iter()
            .filter(|s| s.series == "remainder")
            .map(|s| s.value_2)
            .collect();
        let decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
        all_ok &= decreasing && r.verdict.pass;
        detail.push_str(&format!("p={pn}: decreasing {decreasing}; "));
    }
    conclude("7 frechet-dichotomy", all_ok, &detail);
}

#[test]
fn criterion_08_moment_rates() {
    let (p, f) = example_problem(1024);
    let v = bump_profile(&p, 1024, 6.0f64.sqrt()).unwrap();
    let gamma = 0.9;
    let mut all_ok = true;
    let mut detail = String::new();
    for (s, pv) in [(2u32, 1.0), (3, 2.0), (4, 2.0)] {
        let r = frechet_probe(&p, &f, &v, PNorm::Finite(pv), s, &FIT_NS, Some(gamma)).unwrap();
        let expected = (gamma * (s as f64 - 1.0) - (pv - 1.0)) / pv;
        let fitted = r.fitted_slope.unwrap();
        let ok = (fitted - expected).abs() <= 0.1 * expected.abs() && r.verdict.pass;
        all_ok &= ok;
        detail.push_str(&format!("(s={s},p={pv}): {fitted:.4} vs {expected:.4}; "));
    }
    for (s, pn) in [
        (2u32, PNorm::Finite(2.0)),
        (3, PNorm::Finite(4.0)),
        (2, PNorm::Infinity),
    ] {
        let r = frechet_probe(&p, &f, &v, pn, s, &FIT_NS, Some(gamma)).unwrap();
        let ratios: Vec<f64> = r
            .samples
            .iter()
            .filter(|sm| sm.series == "moment")
            .map(|sm| sm.value_2)
            .collect();
        let decreasing = ratios.windows(2).all(|w| w[1] <= w[0]);
        all_ok &= decreasing;
        detail.push_str(&format!("(s={s},p={pn}): decreasing {decreasing}; "));
    }
    conclude("8 moment-rates", all_ok, &detail);
}

#[test]
fn criterion_09_candidate_refutation() {
    let (p, f) = example_problem(2048);
    let v = stationary_point(&p, &f).unwrap();
    let c = candidate_profiles(&p, &f).unwrap();
    let root = 6.0f64.sqrt();
    let endpoints_ok = (c.first.value(0) - root).abs() < 1e-9
        && (c.first.value(2048) - root).abs() < 1e-9
        && (c.second.value(0) + root).abs() < 1e-9
        && (c.second.value(2048) + root).abs() < 1e-9;
    let third_matches = c
        .third
        .values()
        .iter()
        .zip(v.values())
        .all(|(a, b)| (a - b).abs() < 1e-12);

    let sup = sup_norm_probe(&p, &f, &v, 200, 42).unwrap();
    let lp =
        lp_nonextremum_probe(&p, &f, &v, PNorm::Finite(2.0), &[10, 100, 1_000], Some(0.9)).unwrap();
    let a = evaluate_assertions(&v, &c, &sup, &lp);
    let assertions_ok = a.assertions_true == vec!["maximizer_u3".to_string()]
        && a.assertions_false == vec!["minimizer_u1".to_string(), "minimizer_u2".to_string()];
    conclude(
        "9 candidate-refutation",
        endpoints_ok && third_matches && assertions_ok,
        &format!(
            "endpoints ok: {endpoints_ok}, third = stationary: {third_matches}, true: {:?}, false: {:?}",
            a.assertions_true, a.assertions_false
        ),
    );
}

#[test]
fn criterion_10_radial_reduction() {
    let rp = annulus(2048);

    // exact shell constants
    let constants_ok = gamma_n::<f64>(2) == 2.0 * PI && gamma_n::<f64>(3) == 4.0 * PI;

    // direct polar quadrature vs the reduced functional on 10 smooth profiles
    let m = 4096;
    let f_pot = build_radial_potential(&rp, m).unwrap();
    let reduced = rp.reduced().unwrap();
    let profiles = smooth_perturbations(1.0, 2.0, m, 10, (0.05, 0.6), 7).unwrap();
    let mut worst_rel = 0.0f64;
    for (j, v) in profiles.iter().enumerate() {
        let u = dwell_core::probe::integrate_profile(v, 0.1 * j as f64).unwrap();
        let i_reduced = 2.0 * PI * eval_k(&reduced, &f_pot, v).unwrap();
        let integrand: Vec<f64> = (0..=m)
            .map(|i| {
                let r = v.x(i);
                let f_val = rp.forcing().eval(r).unwrap();
                (eval_h(v.value(i), rp.lambda()) * rp.nu() - f_val * u.value(i)) * r
            })
            .collect();
        let radial_part = simpson(&integrand, v.spacing());
        let ring: Vec<f64> = (0..=64).map(|_| radial_part).collect();
        let i_direct = simpson(&ring, 2.0 * PI / 64.0);
        worst_rel = worst_rel.max((i_reduced - i_direct).abs() / i_direct.abs());
    }

    // weighted potential consistency
    let wres = weighted_potential_residual(&rp, &f_pot).unwrap();

    // criteria 3-6 on the reduced problem, verbatim
    let f2048 = build_radial_potential(&rp, 2048).unwrap();
    let v_bar = stationary_point(&reduced, &f2048).unwrap();
    let resid = stationarity_residual(&reduced, &f2048, &v_bar, 20).unwrap();
    let mid_oracle = middle_root_oracle(1.0 / 6.0, 1.5);
    let c3 = resid < 1e-8 && (v_bar.value(1024) - mid_oracle).abs() < 1e-6;

    let vs = smooth_perturbations(1.0, 2.0, 2048, 100, (0.02, 0.4), 11).unwrap();
    let hs = smooth_perturbations(1.0, 2.0, 2048, 100, (0.02, 0.3), 12).unwrap();
    let mut taylor_worst = 0.0f64;
    for (v, h) in vs.iter().zip(hs.iter()) {
        let t = taylor_decompose(&reduced, &f2048, v, h).unwrap();
        taylor_worst = taylor_worst.max(t.identity_residual() / (1.0 + t.k_at_v_plus_h.abs()));
    }
    let c4 = taylor_worst < 1e-10;

    let gamma_oracle = middle_root_oracle(3.0 - 2.0 * 2.0f64.sqrt(), 1.5).abs();
    let cert = local_max_certificate(&reduced, &v_bar).unwrap();
    let sup = sup_norm_probe(&reduced, &f2048, &v_bar, 1000, 42).unwrap();
    let c5 = (cert.gamma_bar - gamma_oracle).abs() < 1e-6 && sup.verdict.pass;

    let lp = lp_nonextremum_probe(
        &reduced,
        &f2048,
        &v_bar,
        PNorm::Finite(2.0),
        &[10, 100, 1_000, 10_000],
        Some(0.9),
    )
    .unwrap();
    let c6 = lp.pass() && lp.n_star.is_some();

    conclude(
        "10 radial-reduction",
        constants_ok && worst_rel < 1e-8 && wres < 1e-8 && c3 && c4 && c5 && c6,
        &format!(
            "constants {constants_ok}, polar rel {worst_rel:.3e}, weighted resid {wres:.3e}, \
             c3 {c3} (v(1.5) vs {mid_oracle}), c4 {c4} ({taylor_worst:.3e}), c5 {c5}, c6 {c6} (n* {:?})",
            lp.n_star
        ),
    );
}

#[test]
fn solver_consistency_spot_checks() {
    // the e-solver agrees with direct bisection on the companion cubic
    let t = solve_e(0.25, 1.5, 1.0).unwrap();
    let direct = bisect(|y| e_poly(y, 1.5, 1.0) - 0.25, 0.0, 0.5);
    assert!((t.e1 - direct).abs() < 1e-12);
    let direct3 = bisect(|y| -(e_poly(y, 1.5, 1.0) - 0.25), -1.5, -1.0);
    assert!((t.e3 - direct3).abs() < 1e-12);
    // lp norm of a plain sine against its analytic value
    let g = dwell_core::grid::GridFunction::sample(0.0, TAU, 2048, |x: f64| x.sin()).unwrap();
    assert!((lp_norm(&g, PNorm::Finite(2.0)).unwrap() - PI.sqrt()).abs() < 1e-10);
}
