//! Weighted Goldbach representation counts and their averages.
//!
//! `psi2(n) = sum_{m+m'=n} Lambda(m) Lambda(m')`, its summatory function
//! `G(N)` with error `E(N) = G(N) - N^2/2`, the shifted-coefficient sums
//! `sum psi2^0(n)` computed by two independent routes, and the
//! exponentially smoothed averages `Psi(N) = sum Lambda(n) e^{-n/N}` and
//! `F(N) = Psi(N)^2`.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::sieve::LambdaTable;

/// Largest FFT length the convolution backend will plan.
const MAX_FFT_LEN: usize = 1 << 26;

/// Output chunk length for the direct convolution; fixed so the parallel
/// schedule cannot change results.
const CONV_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi2Backend {
    Direct,
    Fft,
}

/// Dense table of psi2(n) for 2 <= n <= n_max.
#[derive(Debug, Clone)]
pub struct Psi2Series {
    n_max: u64,
    /// values[n], index 0..=n_max; entries 0 and 1 are 0.
    values: Vec<f64>,
    backend: Psi2Backend,
}

impl Psi2Series {
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn backend(&self) -> Psi2Backend {
        self.backend
    }

    pub fn value(&self, n: u64) -> Result<f64> {
        if n > self.n_max {
            return Err(Error::OutOfRange { x: n, n_max: self.n_max });
        }
        Ok(self.values[n as usize])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// G(N) = sum_{n<=N} psi2(n) for every N <= n_max, by prefix sums.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.values.len()];
        let mut acc = KahanSum::new();
        for (i, &v) in self.values.iter().enumerate() {
            acc.add(v);
            out[i] = acc.value();
        }
        out
    }
}

/// psi2 by direct convolution over prime-power pairs, O(P^2) for P prime
/// powers. Output bins are Kahan-compensated; the parallel split is over
/// fixed disjoint output chunks, so results are deterministic.
pub fn psi2_direct(table: &LambdaTable, n_max: u64) -> Result<Psi2Series> {
    if n_max > table.n_max() {
        return Err(Error::TableTooSmall { required: n_max, available: table.n_max() });
    }
    let pps = table.prime_powers_upto(n_max);
    let len = n_max as usize + 1;
    let mut sums = vec![0.0f64; len];
    let mut comps = vec![0.0f64; len];

    sums.par_chunks_mut(CONV_CHUNK)
        .zip(comps.par_chunks_mut(CONV_CHUNK))
        .enumerate()
        .for_each(|(ci, (s, c))| {
            let lo = ci * CONV_CHUNK;
            let hi = lo + s.len(); // bins [lo, hi)
            for (i, &(m, lm)) in pps.iter().enumerate() {
                let m = m as usize;
                if 2 * m >= hi {
                    break; // ordered pairs (m, m') with m' >= m only
                }
                // m' >= m and lo <= m + m' < hi
                let min_m2 = m.max(lo.saturating_sub(m));
                let j0 = i + pps[i..].partition_point(|&(n2, _)| (n2 as usize) < min_m2);
                for &(m2, lm2) in &pps[j0..] {
                    let bin = m + m2 as usize;
                    if bin >= hi {
                        break;
                    }
                    let w = if m == m2 as usize { lm * lm2 } else { 2.0 * lm * lm2 };
                    let idx = bin - lo;
                    let t = s[idx] + w;
                    c[idx] += if s[idx].abs() >= w.abs() { (s[idx] - t) + w } else { (w - t) + s[idx] };
                    s[idx] = t;
                }
            }
        });

    for (s, c) in sums.iter_mut().zip(&comps) {
        *s += c;
    }
    Ok(Psi2Series { n_max, values: sums, backend: Psi2Backend::Direct })
}

/// psi2 by FFT self-convolution of the full Lambda array. Matches the
/// direct backend to ~1e-11 absolute at n_max = 1e4 (checked by tests at
/// the 1e-6 contract).
pub fn psi2_fft(table: &LambdaTable, n_max: u64) -> Result<Psi2Series> {
    if n_max > table.n_max() {
        return Err(Error::TableTooSmall { required: n_max, available: table.n_max() });
    }
    let fft_len = (2 * n_max as usize + 1).next_power_of_two();
    if fft_len > MAX_FFT_LEN {
        return Err(Error::Capacity { requested: fft_len as u64, limit: MAX_FFT_LEN as u64 });
    }
    let mut buf: Vec<Complex64> = vec![Complex64::ZERO; fft_len];
    for &(n, l) in table.prime_powers_upto(n_max) {
        buf[n as usize] = Complex64::new(l, 0.0);
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(fft_len).process(&mut buf);
    for v in buf.iter_mut() {
        *v = *v * *v;
    }
    planner.plan_fft_inverse(fft_len).process(&mut buf);
    let scale = 1.0 / fft_len as f64;
    let values: Vec<f64> = buf[..=n_max as usize].iter().map(|v| v.re * scale).collect();
    Ok(Psi2Series { n_max, values, backend: Psi2Backend::Fft })
}

/// One Goldbach average: G(N) and its error E(N) = G(N) - N^2/2.
#[derive(Debug, Clone, Copy)]
pub struct GoldbachSummary {
    pub n: u64,
    pub g: f64,
    pub e: f64,
}

/// G(N) in O(P) by the interchange G(N) = sum_m Lambda(m) psi(N - m),
/// without materializing psi2.
pub fn big_g(table: &LambdaTable, n: u64) -> Result<GoldbachSummary> {
    if n > table.n_max() {
        return Err(Error::OutOfRange { x: n, n_max: table.n_max() });
    }
    let mut acc = KahanSum::new();
    for &(m, lm) in table.prime_powers_upto(n.saturating_sub(1)) {
        acc.add(lm * table.psi(n - m as u64)?);
    }
    let g = acc.value();
    let nf = n as f64;
    Ok(GoldbachSummary { n, g, e: g - nf * nf / 2.0 })
}

/// The two routes to sum_{n<=N} psi2^0(n) where
/// psi2^0(n) = sum_{m+m'=n} (Lambda(m)-1)(Lambda(m')-1).
#[derive(Debug, Clone, Copy)]
pub struct Psi20Sums {
    /// sum_{n<=N} (psi2(n) - 2 psi(n-1) + (n-1)), from a materialized series.
    pub via_definition: f64,
    /// sum_{m<=N} (Lambda(m)-1) R(N-m).
    pub via_remainder: f64,
}

pub fn psi20_sum(table: &LambdaTable, psi2: &Psi2Series, n: u64) -> Result<Psi20Sums> {
    if n < 4 {
        return Err(Error::domain(format!("psi20_sum needs N >= 4, got {n}")));
    }
    if n > psi2.n_max() || n > table.n_max() {
        return Err(Error::TableTooSmall { required: n, available: psi2.n_max().min(table.n_max()) });
    }
    let mut def = KahanSum::new();
    for k in 1..=n {
        def.add(psi2.values[k as usize] - 2.0 * table.psi(k - 1)? + (k - 1) as f64);
    }
    let mut rem = KahanSum::new();
    let lambda = table.lambda_slice();
    for m in 1..=n {
        let r = table.psi(n - m)? - (n - m) as f64;
        rem.add((lambda[m as usize] - 1.0) * r);
    }
    Ok(Psi20Sums { via_definition: def.value(), via_remainder: rem.value() })
}

/// Smoothed averages Psi(N) and F(N) = Psi(N)^2 with a certified
/// truncation tail bound.
#[derive(Debug, Clone, Copy)]
pub struct SmoothAverages {
    pub n: u64,
    pub n_cut: u64,
    /// Truncated sum_{n<=n_cut} Lambda(n) e^{-n/N}.
    pub psi_n: f64,
    /// psi_n^2, exactly as computed.
    pub f_n: f64,
    /// Upper bound on the dropped tail of Psi(N):
    /// sum_{n>n_cut} log(n) e^{-n/N} <= N e^{-X/N} (log(X+1) + N/(X+1)).
    pub tail_bound: f64,
}

/// General-purpose truncation target: makes the Psi(N) tail negligible
/// against the N^2-scale quantities. The explicit-formula residual suites
/// pass much smaller eps.
pub fn default_smooth_eps(n: u64) -> f64 {
    1e-9 * (n as f64) * (n as f64)
}

/// Table size needed by [`smooth_averages`] for a given (N, eps); lets
/// callers size the sieve before building it.
pub fn smooth_required_cut(n: u64, eps: f64) -> u64 {
    solve_n_cut(n as f64, eps)
}

pub fn smooth_averages(table: &LambdaTable, n: u64, eps: f64) -> Result<SmoothAverages> {
    if n < 3 {
        return Err(Error::domain(format!("smooth_averages needs N >= 3, got {n}")));
    }
    if !(eps > 0.0) {
        return Err(Error::param(format!("eps must be positive, got {eps}")));
    }
    let n_cut = solve_n_cut(n as f64, eps);
    if n_cut > table.n_max() {
        return Err(Error::TableTooSmall { required: n_cut, available: table.n_max() });
    }
    let nf = n as f64;
    let mut acc = KahanSum::new();
    for &(m, lm) in table.prime_powers_upto(n_cut) {
        acc.add(lm * (-(m as f64) / nf).exp());
    }
    let psi_n = acc.value();
    let x = n_cut as f64;
    let tail_bound = nf * (-x / nf).exp() * ((x + 1.0).ln() + nf / (x + 1.0));
    Ok(SmoothAverages { n, n_cut, psi_n, f_n: psi_n * psi_n, tail_bound })
}

/// Smallest cut with (log n_cut + 1) N e^{-n_cut/N} < eps, via the fixpoint
/// of x = N (log(1/eps) + 2 log x), clamped to at least 2N so the tail
/// integrand is decreasing past the cut.
fn solve_n_cut(n: f64, eps: f64) -> u64 {
    let floor = (2.0 * n).max(16.0);
    let mut x = floor.max(8.0 * n);
    for _ in 0..64 {
        let next = (n * ((1.0 / eps).ln() + 2.0 * x.ln())).max(floor);
        if (next - x).abs() < 0.5 {
            x = next;
            break;
        }
        x = next;
    }
    x.ceil() as u64
}
