//! Generating functions on the circle |z| = e^{-1/N}: the contour identity
//! for sum psi2^0(n), the truncating kernel K_N, the Parseval check, and
//! the |1-z| comparison profile.
//!
//! Quadrature is a uniform M-point sample of the unit-period integrands
//! (a discrete Fourier sum). With M > 2 n_cut the quadrature is exact for
//! the truncated trigonometric polynomials involved, so the only error
//! sources are the r^{n_cut} series tail and rounding. Grid values of the
//! truncated series are produced by one FFT of the coefficient vector,
//! which agrees with per-point evaluation to rounding (cross-checked in
//! tests).

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::sieve::LambdaTable;

const MAX_QUADRATURE: usize = 1 << 26;

/// Evaluation context: radius r = e^{-1/N}, series cut, quadrature order.
#[derive(Debug, Clone, Copy)]
pub struct CircleContext {
    n: u64,
    r: f64,
    n_cut: u64,
    m: usize,
}

impl CircleContext {
    /// Defaults: n_cut = 40 N (tail below e^{-40}), M = twice the next
    /// power of two above 2 n_cut.
    pub fn new(n: u64) -> Result<Self> {
        let n_cut = 40 * n;
        let m = 2 * (2 * n_cut as usize).next_power_of_two();
        Self::with_params(n, n_cut, m)
    }

    /// Explicit parameters; M must be a power of two above 2 n_cut.
    pub fn with_params(n: u64, n_cut: u64, m: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::domain(format!("circle context needs N >= 4, got {n}")));
        }
        if m > MAX_QUADRATURE {
            return Err(Error::Capacity { requested: m as u64, limit: MAX_QUADRATURE as u64 });
        }
        if !m.is_power_of_two() || m as u64 <= 2 * n_cut {
            return Err(Error::Aliasing { m, n_cut });
        }
        Ok(CircleContext { n, r: (-1.0 / n as f64).exp(), n_cut, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn n_cut(&self) -> u64 {
        self.n_cut
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Bound on the dropped series tail sum_{n > n_cut} log(n) r^n
    /// (n_cut >= N makes the integrand decreasing past the cut).
    pub fn psi_tail_bound(&self) -> f64 {
        let nf = self.n as f64;
        let x = self.n_cut as f64;
        nf * (-x / nf).exp() * ((x + 1.0).ln() + nf / (x + 1.0))
    }

    fn check_table(&self, table: &LambdaTable) -> Result<()> {
        if table.n_max() < self.n_cut {
            return Err(Error::TableTooSmall { required: self.n_cut, available: table.n_max() });
        }
        Ok(())
    }
}

/// Psi(z) = sum_{n <= n_cut} Lambda(n) r^n e^{2 pi i n alpha}, evaluated
/// directly over the prime powers. Phases come from binary powering of
/// the unit rotation, which keeps conjugate symmetry exact.
pub fn eval_psi_z(table: &LambdaTable, ctx: &CircleContext, alpha: f64) -> Result<Complex64> {
    ctx.check_table(table)?;
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * alpha);
    let nf = ctx.n as f64;
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for &(m, lm) in table.prime_powers_upto(ctx.n_cut) {
        let term = lm * (-(m as f64) / nf).exp() * w.powu(m);
        re.add(term.re);
        im.add(term.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Closed forms I(z) = z/(1-z) and K_N(z) = z^{-N} (1 - z^N) / (1 - z)
/// for any |z| < 1.
pub fn kernel_at(z: Complex64, n: u64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let i = z / (one - z);
    let zn = z.powu(n as u32);
    let k = (one - zn) / (zn * (one - z));
    (i, k)
}

/// Kernel values on the context circle at angle alpha; z^N is built in
/// polar form with exact integer angle bookkeeping.
pub fn eval_kernel(ctx: &CircleContext, alpha: f64) -> (Complex64, Complex64) {
    let z = Complex64::from_polar(ctx.r, 2.0 * std::f64::consts::PI * alpha);
    let zn = Complex64::from_polar(
        (ctx.n as f64 * ctx.r.ln()).exp(),
        2.0 * std::f64::consts::PI * ((ctx.n as f64 * alpha) % 1.0),
    );
    let one = Complex64::new(1.0, 0.0);
    (z / (one - z), (one - zn) / (zn * (one - z)))
}

/// Grid values of a coefficient vector on the M quadrature nodes:
/// out[j] = sum_n coef[n] e^{2 pi i n j / M}.
fn grid_values(coef: Vec<Complex64>) -> Vec<Complex64> {
    let mut buf = coef;
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

fn psi_grid(table: &LambdaTable, ctx: &CircleContext) -> Vec<Complex64> {
    let nf = ctx.n as f64;
    let mut coef = vec![Complex64::ZERO; ctx.m];
    for &(m, lm) in table.prime_powers_upto(ctx.n_cut) {
        coef[m as usize] = Complex64::new(lm * (-(m as f64) / nf).exp(), 0.0);
    }
    grid_values(coef)
}

/// The contour average (1/M) sum_j (Psi - I)^2 K at the M-th roots of the
/// circle, whose real part reproduces sum_{n<=N} psi2^0(n).
#[derive(Debug, Clone, Copy)]
pub struct ContourResult {
    /// Real part of the quadrature: the psi2^0 partial sum.
    pub value: f64,
    /// Imaginary part; vanishes to rounding by conjugate symmetry.
    pub imag_part: f64,
    /// Truncation tail bound of the Psi series used.
    pub tail_bound: f64,
}

pub fn contour_psi20(table: &LambdaTable, ctx: &CircleContext) -> Result<ContourResult> {
    ctx.check_table(table)?;
    let psi = psi_grid(table, ctx);
    let m = ctx.m;
    let n = ctx.n;
    let r_n = (n as f64 * ctx.r.ln()).exp();
    let two_pi = 2.0 * std::f64::consts::PI;
    let one = Complex64::new(1.0, 0.0);
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for (j, &psi_j) in psi.iter().enumerate() {
        let alpha = j as f64 / m as f64;
        let z = Complex64::from_polar(ctx.r, two_pi * alpha);
        // exact angle reduction: N j mod M stays an integer
        let zn = Complex64::from_polar(r_n, two_pi * ((n * j as u64) % m as u64) as f64 / m as f64);
        let i_z = z / (one - z);
        let k_z = (one - zn) / (zn * (one - z));
        let d = psi_j - i_z;
        let term = d * d * k_z;
        re.add(term.re);
        im.add(term.im);
    }
    Ok(ContourResult {
        value: re.value() / m as f64,
        imag_part: im.value() / m as f64,
        tail_bound: ctx.psi_tail_bound(),
    })
}

/// Both sides of the Parseval identity for the shifted coefficients:
/// lhs = (1/M) sum_j |sum_{n<=n_cut} (Lambda(n)-1) r^n e(n alpha_j)|^2,
/// rhs = sum_{n<=n_cut} (Lambda(n)-1)^2 r^{2n}.
#[derive(Debug, Clone, Copy)]
pub struct ParsevalCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn parseval_check(table: &LambdaTable, ctx: &CircleContext) -> Result<ParsevalCheck> {
    ctx.check_table(table)?;
    let nf = ctx.n as f64;
    let lambda = table.lambda_slice();
    let mut coef = vec![Complex64::ZERO; ctx.m];
    let mut rhs = KahanSum::new();
    for nn in 1..=ctx.n_cut as usize {
        let d = (lambda[nn] - 1.0) * (-(nn as f64) / nf).exp();
        coef[nn] = Complex64::new(d, 0.0);
        rhs.add(d * d);
    }
    let grid = grid_values(coef);
    let mut lhs = KahanSum::new();
    for v in &grid {
        lhs.add(v.norm_sqr());
    }
    Ok(ParsevalCheck { lhs: lhs.value() / ctx.m as f64, rhs: rhs.value() })
}

/// One sample of the |1 - z| geometry on the upper half circle.
#[derive(Debug, Clone, Copy)]
pub struct ProfilePoint {
    pub alpha: f64,
    /// |1 - z| from the stable form sqrt((1-r)^2 + 4 r sin^2(pi alpha)).
    pub one_minus_z: f64,
    /// |1 - z| / max(1/N, alpha).
    pub comparison_ratio: f64,
}

/// Profile of |1 - z| against max(1/N, alpha) over alpha in [0, 1/2].
pub fn one_minus_z_profile(ctx: &CircleContext, points: usize) -> Vec<ProfilePoint> {
    let one_minus_r = -(-1.0 / ctx.n as f64).exp_m1();
    let nf = ctx.n as f64;
    (0..points)
        .map(|k| {
            let alpha = 0.5 * k as f64 / (points - 1) as f64;
            let s = (std::f64::consts::PI * alpha).sin();
            let dist = (one_minus_r * one_minus_r + 4.0 * ctx.r * s * s).sqrt();
            ProfilePoint {
                alpha,
                one_minus_z: dist,
                comparison_ratio: dist / (1.0 / nf).max(alpha),
            }
        })
        .collect()
}

/// Diagnostic split of the quadrature of |Psi - I|^2 |K| at the arc
/// boundary delta: nodes with circular distance <= delta from alpha = 0
/// versus the rest. No inequality is asserted; the two contributions are
/// simply reported.
#[derive(Debug, Clone, Copy)]
pub struct ArcSplit {
    pub delta: f64,
    pub major: f64,
    pub minor: f64,
}

pub fn arc_split(table: &LambdaTable, ctx: &CircleContext, delta: f64) -> Result<ArcSplit> {
    if !(0.0 < delta && delta <= 0.25) {
        return Err(Error::param(format!("arc split needs 0 < delta <= 1/4, got {delta}")));
    }
    ctx.check_table(table)?;
    let psi = psi_grid(table, ctx);
    let m = ctx.m;
    let n = ctx.n;
    let r_n = (n as f64 * ctx.r.ln()).exp();
    let two_pi = 2.0 * std::f64::consts::PI;
    let one = Complex64::new(1.0, 0.0);
    let mut major = KahanSum::new();
    let mut minor = KahanSum::new();
    for (j, &psi_j) in psi.iter().enumerate() {
        let alpha = j as f64 / m as f64;
        let z = Complex64::from_polar(ctx.r, two_pi * alpha);
        let zn = Complex64::from_polar(r_n, two_pi * ((n * j as u64) % m as u64) as f64 / m as f64);
        let k_z = (one - zn) / (zn * (one - z));
        let d = psi_j - z / (one - z);
        let v = d.norm_sqr() * k_z.norm();
        if alpha.min(1.0 - alpha) <= delta {
            major.add(v);
        } else {
            minor.add(v);
        }
    }
    Ok(ArcSplit {
        delta,
        major: major.value() / m as f64,
        minor: minor.value() / m as f64,
    })
}
