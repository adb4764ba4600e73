//! Acceptance suite: every release-gating check, one test per criterion,
//! each printing a PASS line with the measured numbers (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Needs data/zeros_100k.txt at the workspace root (regenerate with
//! tools/gen_zeros.py).

use std::path::PathBuf;
use std::sync::OnceLock;

use num_complex::Complex64;

use goldbach_core::circle::{contour_psi20, parseval_check, CircleContext};
use goldbach_core::explicit::{
    complex_gamma, fujii_residual, gamma_half_line_modulus, smooth_psi_residual, smooth_residual,
    sum_rho,
};
use goldbach_core::goldbach::{big_g, psi2_direct, psi2_fft, psi20_sum};
use goldbach_core::kahan::KahanSum;
use goldbach_core::zeros::{load_zeros, ZeroLimit};
use goldbach_core::zfr::{critical_point, omega, omega_asymptotic, varpi, EtaFamily};
use goldbach_core::{LambdaTable, Psi2Series, ZeroTable};

const TABLE_SIZE: u64 = 5_000_000;
const SERIES_SIZE: u64 = 1_000_000;

fn table() -> &'static LambdaTable {
    static T: OnceLock<LambdaTable> = OnceLock::new();
    T.get_or_init(|| LambdaTable::build(TABLE_SIZE).expect("sieve build"))
}

fn psi2_series() -> &'static Psi2Series {
    static S: OnceLock<Psi2Series> = OnceLock::new();
    S.get_or_init(|| psi2_direct(table(), SERIES_SIZE).expect("psi2 series"))
}

/// prefix[n] = sum_{k<=n} (psi2(k) - 2 psi(k-1) + (k-1)).
fn psi20_prefix() -> &'static Vec<f64> {
    static P: OnceLock<Vec<f64>> = OnceLock::new();
    P.get_or_init(|| {
        let t = table();
        let values = psi2_series().values();
        let mut out = vec![0.0; values.len()];
        let mut acc = KahanSum::new();
        for n in 1..values.len() {
            acc.add(values[n] - 2.0 * t.psi(n as u64 - 1).unwrap() + (n - 1) as f64);
            out[n] = acc.value();
        }
        out
    })
}

fn zeros() -> &'static ZeroTable {
    static Z: OnceLock<ZeroTable> = OnceLock::new();
    Z.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt");
        let z = load_zeros(&path, ZeroLimit::All).expect("zero table");
        assert!(z.len() >= 100_000, "need at least 1e5 ordinates, got {}", z.len());
        z
    })
}

/// Consecutive-ratio growth guard with a floor for near-zero constants.
fn max_consecutive_ratio(consts: &[f64]) -> f64 {
    consts
        .windows(2)
        .map(|w| w[1] / w[0].max(1e-12))
        .fold(0.0, f64::max)
}

#[test]
fn c01_lemma1_exact_identity_suite() {
    let t = table();
    let prefix = psi20_prefix();
    let mut worst = 0.0f64;
    let mut worst_n = 0u64;
    let mut check = |n: u64| {
        let nf = n as f64;
        let g = big_g(t, n).unwrap().g;
        let recon = 2.0 * t.psi1(n).unwrap() - nf * (nf - 1.0) / 2.0 + prefix[n as usize];
        let tol = 1e-8 * (nf * nf * 1e-6).max(1.0);
        let scaled = (g - recon).abs() / tol;
        assert!(scaled <= 1.0, "N={n}: |G - reconstruction| = {} > {tol}", (g - recon).abs());
        if scaled > worst {
            worst = scaled;
            worst_n = n;
        }
    };
    for n in 4..=20_000 {
        check(n);
    }
    check(100_000);
    check(1_000_000);
    println!("criterion 01 exact identity suite: PASS (worst dev/tol {worst:.3e} at N={worst_n})");
}

#[test]
fn c02_lambda0_convolution_identity() {
    let t = table();
    let series = psi2_series();
    let mut worst = 0.0f64;
    let mut worst_n = 0u64;
    let mut check = |n: u64| {
        let s = psi20_sum(t, series, n).unwrap();
        let denom = s.via_definition.abs().max(s.via_remainder.abs()).max(1.0);
        let rel = (s.via_definition - s.via_remainder).abs() / denom;
        assert!(rel <= 1e-8, "N={n}: routes differ by {rel:e}");
        if rel > worst {
            worst = rel;
            worst_n = n;
        }
    };
    for n in 4..=20_000 {
        check(n);
    }
    check(100_000);
    check(1_000_000);
    println!("criterion 02 shifted-convolution two-route identity: PASS (worst rel {worst:.3e} at N={worst_n})");
}

#[test]
fn c03_fft_direct_oracle_equivalence() {
    let t = table();
    let direct = psi2_direct(t, 10_000).unwrap();
    let fft = psi2_fft(t, 10_000).unwrap();
    let mut max_diff = 0.0f64;
    for n in 0..=10_000u64 {
        max_diff = max_diff.max((direct.value(n).unwrap() - fft.value(n).unwrap()).abs());
    }
    assert!(max_diff <= 1e-6, "max |fft - direct| = {max_diff:e}");
    println!("criterion 03 FFT/direct equivalence: PASS (max entrywise diff {max_diff:.3e})");
}

#[test]
fn c04_contour_identity() {
    let t = table();
    let prefix = psi20_prefix();
    let mut report = String::new();
    for (n, tol) in [(10u64, 1e-8), (50, 1e-4), (200, 1e-4), (500, 1e-4)] {
        let ctx = CircleContext::new(n).unwrap();
        assert_eq!(ctx.n_cut(), 40 * n);
        if n == 500 {
            assert!(ctx.m() >= 1 << 15);
        }
        let res = contour_psi20(t, &ctx).unwrap();
        let truth = prefix[n as usize];
        let rel = (res.value - truth).abs() / truth.abs();
        assert!(rel <= tol, "N={n}: contour rel err {rel:e} > {tol:e}");
        assert!(res.imag_part.abs() <= 1e-8 * res.value.abs());
        report.push_str(&format!(" N={n}:{rel:.2e}"));
    }
    println!("criterion 04 contour identity: PASS ({report})");
}

#[test]
fn c05_parseval_and_coefficient_bound() {
    let t = table();
    let mut fit = 0.0f64;
    let mut report = String::new();
    for n in [16u64, 100, 1000] {
        let ctx = CircleContext::new(n).unwrap();
        let p = parseval_check(t, &ctx).unwrap();
        let rel = (p.lhs - p.rhs).abs() / p.rhs;
        assert!(rel <= 1e-10, "N={n}: parseval rel {rel:e}");
        fit = fit.max(p.rhs / (n as f64 * (n as f64).ln()));
        report.push_str(&format!(" N={n}:{rel:.2e}"));
    }
    assert!(fit <= 3.0, "N log N coefficient constant {fit}");
    println!("criterion 05 parseval + N log N bound: PASS ({report}, fitted c {fit:.3})");
}

#[test]
fn c06_fujii_residual_stability() {
    let t = table();
    let z = zeros();
    let height = z.max_gamma();
    let mut consts = Vec::new();
    for n in [1_000u64, 10_000, 100_000, 1_000_000] {
        let rec = fujii_residual(t, z, n, height).unwrap();
        let c = rec.constant();
        assert!(c.is_finite());
        consts.push(c);
    }
    let ratio = max_consecutive_ratio(&consts);
    assert!(ratio <= 3.0, "decade ratio {ratio} (constants {consts:?})");
    let pretty: Vec<String> = consts.iter().map(|c| format!("{c:.3e}")).collect();
    println!(
        "criterion 06 Fujii residual stability: PASS (constants {pretty:?}, max decade ratio {ratio:.3})"
    );
}

#[test]
fn c07_psi_explicit_envelope() {
    let t = table();
    let z = zeros();
    let mut fitted = 0.0f64;
    for x in [1_000u64, 10_000, 100_000] {
        let xf = x as f64;
        let r = t.psi(x).unwrap() - xf;
        for tt in [1e2, 1e3, 1e4] {
            let s = sum_rho(z, xf, tt).unwrap();
            let envelope = xf * xf.ln() * xf.ln().ln() / tt + xf.ln();
            fitted = fitted.max((r + s.value).abs() / envelope);
        }
    }
    assert!(fitted <= 10.0, "fitted C = {fitted}");
    println!("criterion 07 psi explicit-formula envelope: PASS (fitted C {fitted:.4})");
}

#[test]
fn c08_smoothed_explicit_formulas() {
    let t = table();
    let z = zeros();
    let mut psi_consts = Vec::new();
    let mut f_consts = Vec::new();
    let mut scale_fit = 0.0f64;
    for n in [100u64, 1_000, 10_000, 100_000] {
        let eps = 1e-2 / n as f64;
        let pr = smooth_psi_residual(t, z, n, eps).unwrap();
        psi_consts.push(pr.constant()); // N * |psi residual|
        let fr = smooth_residual(t, z, n, eps).unwrap();
        f_consts.push(fr.constant()); // |F residual| / N
        let nf = n as f64;
        scale_fit = scale_fit.max((fr.truth - nf * nf).abs() / nf.powf(1.5));
    }
    let psi_ratio = max_consecutive_ratio(&psi_consts);
    let f_ratio = max_consecutive_ratio(&f_consts);
    assert!(psi_ratio <= 3.0, "psi-residual growth {psi_ratio} ({psi_consts:?})");
    assert!(f_ratio <= 3.0, "F-residual growth {f_ratio} ({f_consts:?})");
    assert!(scale_fit <= 10.0, "|F - N^2| / N^(3/2) fitted c = {scale_fit}");
    println!(
        "criterion 08 smoothed formulas: PASS (N*psi-resid {psi_consts:.4?}, F-resid/N {f_consts:.4?}, scale c {scale_fit:.3})"
    );
}

#[test]
fn c09_gamma_kernel() {
    let one = complex_gamma(Complex64::new(1.0, 0.0)).unwrap();
    assert!((one - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    let half = complex_gamma(Complex64::new(0.5, 0.0)).unwrap();
    assert!((half.re - std::f64::consts::PI.sqrt()).abs() <= 1e-12);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let t = 30.0 * k as f64 / 49.0;
        let lhs = complex_gamma(Complex64::new(0.5, t)).unwrap().norm();
        worst = worst.max((lhs - gamma_half_line_modulus(t)).abs());
    }
    assert!(worst <= 1e-10, "modulus identity deviation {worst:e}");
    println!("criterion 09 gamma kernel: PASS (50-point modulus identity, worst {worst:.3e})");
}

#[test]
fn c10_transfer_minimizers() {
    // closed forms for constant eta
    let eta = EtaFamily::constant(0.5).unwrap();
    for x in [1e2, 1e6, 1e12] {
        let om = omega(&eta, x).unwrap();
        assert!((om.value - 0.5 * x.ln()).abs() <= 1e-12);
        let va = varpi(&eta, x).unwrap();
        assert!((va.value - 0.5 * x.ln()).abs() <= 1e-12);
    }

    // dense-grid oracle agreement for both log-power families
    let classic = EtaFamily::log_power(1.0, 1.0, 0.0).unwrap();
    let kv = EtaFamily::log_power(1.0, 2.0 / 3.0, 1.0 / 3.0).unwrap();
    let dense_omega = |eta: &EtaFamily, x: f64| {
        let log_x: f64 = x.ln();
        let v_max = (2.0 * eta.eta(1.0) * log_x).max(1.0);
        let n = 2_000_000;
        (0..=n)
            .map(|i| {
                let v = v_max * i as f64 / n as f64;
                eta.eta(v.exp()) * log_x + v
            })
            .fold(f64::INFINITY, f64::min)
    };
    for eta in [&classic, &kv] {
        for x in [1e3, 1e6, 1e12] {
            let om = omega(eta, x).unwrap();
            let oracle = dense_omega(eta, x);
            assert!((om.value - oracle).abs() <= 1e-6, "x={x}: {} vs {oracle}", om.value);
        }
    }

    // critical-point route vs minimizer route
    let u0 = critical_point(&classic, 1e8).unwrap();
    let om = omega(&classic, 1e8).unwrap();
    assert!((om.u_star - u0).abs() / u0 <= 1e-3);

    // asymptotic main term against the numeric minimum at x = 1e12
    let mut ratios = Vec::new();
    for (eta, a, b) in [(&classic, 1.0, 0.0), (&kv, 2.0 / 3.0, 1.0 / 3.0)] {
        let numeric = omega(eta, 1e12).unwrap().value;
        let main = omega_asymptotic(1.0, a, b, 1e12).unwrap();
        let ratio = main / numeric;
        assert!((0.6..=1.4).contains(&ratio), "(a,b)=({a},{b}): ratio {ratio}");
        ratios.push(ratio);
    }
    println!("criterion 10 omega/varpi minimizers: PASS (asymptotic ratios {ratios:.4?})");
}

#[test]
fn c11_transfer_inequalities() {
    let eta = EtaFamily::log_power(1.0, 1.0, 0.0).unwrap();
    let xs = [1e2, 1e4, 1e6, 1e8, 1e10, 1e12];
    for &x in &xs {
        for a in [1.5, 2.0, 5.0] {
            let lhs = varpi(&eta, (x / 2.0f64).powf(1.0 / a)).unwrap().value;
            let rhs = varpi(&eta, x / 2.0).unwrap().value / a;
            assert!(lhs >= rhs - 1e-9, "x={x} A={a}: {lhs} < {rhs}");
        }
    }
    let mut prev = f64::NEG_INFINITY;
    for &x in &xs {
        let v = x.ln() - varpi(&eta, x).unwrap().value;
        assert!(v >= prev - 1e-9, "log x - varpi(x) dropped at x={x}");
        prev = v;
    }
    println!("criterion 11 transfer inequalities: PASS (A-root bound + monotone log x - varpi)");
}

#[test]
fn c12_r1_oscillation_scale() {
    let t = table();
    // stream psi1(N) = psi1(N-1) + psi(N-1) over N <= 1e6
    let mut psi1 = KahanSum::new();
    let mut best = 0.0f64;
    let mut best_n = 0u64;
    for n in 1..=1_000_000u64 {
        psi1.add(t.psi(n - 1).unwrap());
        let nf = n as f64;
        let r1 = psi1.value() - nf * nf / 2.0;
        let scaled = r1.abs() / nf.powf(1.5);
        if scaled > best {
            best = scaled;
            best_n = n;
        }
    }
    assert!(best >= 0.01, "max |R1(N)|/N^(3/2) = {best}");
    println!("criterion 12 R1 oscillation scale: PASS (max {best:.4} at N={best_n})");
}
