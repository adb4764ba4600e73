//! Zero-free-region transfer arithmetic.
//!
//! A region `sigma > 1 - eta(|t|)` is described by an [`EtaFamily`]; the
//! transfer functions `omega(x) = min_{u>=1}(eta(u) log x + log u)` and
//! `varpi(x) = min_{u>=0}(eta(u) log x + u)` convert it into PNT error
//! envelopes and back. [`BoundShape`] carries the envelope forms
//! `x exp(-C f(x))` / `x^2 exp(-C f(x))` through the forward and backward
//! bound transfers, including the smoothed-average converse shape with its
//! (x/2)^{1/A} inner argument.

use crate::error::{Error, Result};
use crate::explicit::ResidualRecord;

/// ln(ln 3): the smallest value of ln(log(u+3)) over u >= 0.
const LN_LN_3: f64 = 0.09404782798323927;

/// A decreasing zero-free-region width function eta(u).
#[derive(Debug, Clone, PartialEq)]
pub enum EtaFamily {
    /// eta == theta with theta in (0, 1/2].
    Constant { theta: f64 },
    /// eta(u) = c / (log(u+3))^a / (log log(u+3))^b.
    ///
    /// The (u+3) shift keeps both logs positive at u = 0. The classical
    /// region is (a, b) = (1, 0); Korobov-Vinogradov is (2/3, 1/3). For
    /// c near 1 these raw shapes exceed 1/2 at small u; evaluation is not
    /// clamped (see `satisfies_width_hypothesis`), which keeps the
    /// objective smooth for the minimizers and the critical-point
    /// equation.
    LogPower { c: f64, a: f64, b: f64 },
    /// Piecewise-linear interpolation of (u, eta) samples starting at
    /// u = 0, constant beyond the last sample.
    Tabulated { points: Vec<(f64, f64)> },
}

impl EtaFamily {
    pub fn constant(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 0.5) {
            return Err(Error::param(format!("constant eta needs theta in (0, 1/2], got {theta}")));
        }
        Ok(EtaFamily::Constant { theta })
    }

    pub fn log_power(c: f64, a: f64, b: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::param(format!("log-power eta needs c > 0, got {c}")));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::param(format!("log-power eta needs 0 <= a <= 1, got {a}")));
        }
        if a == 0.0 && b < 0.0 {
            return Err(Error::param("log-power eta needs b >= 0 when a = 0".to_string()));
        }
        // decreasing on all of u >= 0 requires a + b/ln(log(u+3)) >= 0,
        // worst at u = 0
        if b < 0.0 && a + b / LN_LN_3 < 0.0 {
            return Err(Error::param(format!(
                "log-power eta with a={a}, b={b} is not decreasing near u = 0"
            )));
        }
        Ok(EtaFamily::LogPower { c, a, b })
    }

    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::param("tabulated eta needs at least two points"));
        }
        if points[0].0 != 0.0 {
            return Err(Error::param("tabulated eta must start at u = 0"));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::param("tabulated eta abscissae must increase"));
            }
            if w[1].1 > w[0].1 {
                return Err(Error::param("tabulated eta must be non-increasing"));
            }
        }
        for &(_, e) in &points {
            if !(e > 0.0 && e <= 0.5) {
                return Err(Error::param(format!("tabulated eta values must lie in (0, 1/2], got {e}")));
            }
        }
        Ok(EtaFamily::Tabulated { points })
    }

    /// eta(u) for u >= 0.
    pub fn eta(&self, u: f64) -> f64 {
        match self {
            EtaFamily::Constant { theta } => *theta,
            EtaFamily::LogPower { c, a, b } => {
                let w = (u + 3.0).ln();
                let mut v = c / w.powf(*a);
                if *b != 0.0 {
                    v /= w.ln().powf(*b);
                }
                v
            }
            EtaFamily::Tabulated { points } => {
                if u >= points[points.len() - 1].0 {
                    return points[points.len() - 1].1;
                }
                let i = points.partition_point(|&(x, _)| x <= u);
                let (x0, y0) = points[i - 1];
                let (x1, y1) = points[i];
                y0 + (y1 - y0) * (u - x0) / (x1 - x0)
            }
        }
    }

    /// d eta / du; analytic for the built-in families, None for tabulated.
    pub fn eta_prime(&self, u: f64) -> Option<f64> {
        match self {
            EtaFamily::Constant { .. } => Some(0.0),
            EtaFamily::LogPower { a, b, .. } => {
                let w = (u + 3.0).ln();
                Some(-self.eta(u) * (a + b / w.ln()) / (w * (u + 3.0)))
            }
            EtaFamily::Tabulated { .. } => None,
        }
    }

    /// Whether the family obeys the width hypothesis 0 < eta <= 1/2 down
    /// to u = 0 (raw log-power shapes with large c do not; they are still
    /// usable as transfer test functions).
    pub fn satisfies_width_hypothesis(&self) -> bool {
        self.eta(0.0) <= 0.5
    }

    /// True when eta'(u) -> 0 as u -> infinity (needed by the converse
    /// direction of the PNT transfer; recorded, nothing consumes it).
    /// Holds for every built-in kind: constant and log-power analytically,
    /// tabulated because of the constant extension past the last sample.
    pub fn derivative_vanishes_at_infinity(&self) -> bool {
        true
    }
}

/// Result of a one-dimensional transfer-function minimization.
#[derive(Debug, Clone, Copy)]
pub struct MinimizationResult {
    pub x: f64,
    pub u_star: f64,
    pub value: f64,
    /// Search bracket in the u variable.
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

const GRID_POINTS: usize = 10_000;
const TABULATED_GRID_POINTS: usize = 200_000;
const GOLDEN_TOL: f64 = 1e-10;

/// Grid-bracketed golden section: scan `n` points of [lo, hi], then refine
/// the best cell by golden section to width `GOLDEN_TOL`, finally taking
/// the best of the refined point, the cell endpoints and the grid minimum.
/// The scan doubles as the optimality audit, so a non-unimodal objective
/// still lands within grid resolution of the true minimum.
fn grid_golden_min(obj: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize, refine: bool) -> (f64, f64, usize) {
    debug_assert!(hi > lo && n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut evals = 0usize;
    let mut best_i = 0usize;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let v = lo + step * i as f64;
        let y = obj(v);
        evals += 1;
        if y < best {
            best = y;
            best_i = i;
        }
    }
    let mut cand = (lo + step * best_i as f64, best);
    if refine {
        let mut a = lo + step * best_i.saturating_sub(1) as f64;
        let mut b = (lo + step * (best_i + 1) as f64).min(hi);
        let inv_phi = 0.618_033_988_749_894_9_f64;
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = obj(x1);
        let mut f2 = obj(x2);
        evals += 2;
        while b - a > GOLDEN_TOL {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = obj(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = obj(x2);
            }
            evals += 1;
        }
        for v in [a, b, if f1 <= f2 { x1 } else { x2 }] {
            let y = obj(v);
            evals += 1;
            if y < cand.1 {
                cand = (v, y);
            }
        }
    }
    (cand.0, cand.1, evals)
}

fn check_x(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::domain(format!("transfer functions need x > 1, got {x}")));
    }
    Ok(x.ln())
}

/// omega(x) = min_{u>=1} (eta(u) log x + log u), minimized in v = log u
/// over [0, V] with V = max(1, 2 eta(1) log x).
pub fn omega(eta: &EtaFamily, x: f64) -> Result<MinimizationResult> {
    let log_x = check_x(x)?;
    let v_max = (2.0 * eta.eta(1.0) * log_x).max(1.0);
    let obj = |v: f64| eta.eta(v.exp()) * log_x + v;
    let (n, refine) = scan_params(eta);
    let (v_star, value, evaluations) = grid_golden_min(obj, 0.0, v_max, n, refine);
    Ok(MinimizationResult {
        x,
        u_star: v_star.exp(),
        value,
        bracket: (1.0, v_max.exp()),
        evaluations,
    })
}

/// varpi(x) = min_{u>=0} (eta(u) log x + u), minimized in u directly
/// over [0, U] with U = max(1, 2 eta(0) log x).
pub fn varpi(eta: &EtaFamily, x: f64) -> Result<MinimizationResult> {
    let log_x = check_x(x)?;
    let u_max = (2.0 * eta.eta(0.0) * log_x).max(1.0);
    let obj = |u: f64| eta.eta(u) * log_x + u;
    let (n, refine) = scan_params(eta);
    let (u_star, value, evaluations) = grid_golden_min(obj, 0.0, u_max, n, refine);
    Ok(MinimizationResult { x, u_star, value, bracket: (0.0, u_max), evaluations })
}

fn scan_params(eta: &EtaFamily) -> (usize, bool) {
    match eta {
        // tabulated shapes may have kinks; exhaustive scan only
        EtaFamily::Tabulated { .. } => (TABULATED_GRID_POINTS, false),
        _ => (GRID_POINTS, true),
    }
}

/// Main term of the log-power omega asymptotic:
/// (1+a) (frak_a c (1+a)^b log x / (log log x)^b)^{1/(1+a)},
/// frak_a = 1 when a = 0, else a.
pub fn omega_asymptotic(c: f64, a: f64, b: f64, x: f64) -> Result<f64> {
    // same parameter window as the family itself
    EtaFamily::log_power(c, a, b)?;
    if !(x >= 16.0) {
        return Err(Error::domain(format!("asymptotic needs x >= 16, got {x}")));
    }
    let frak_a = if a == 0.0 { 1.0 } else { a };
    let log_x = x.ln();
    let loglog_x = log_x.ln();
    let inner = frak_a * c * (1.0 + a).powf(b) * log_x / loglog_x.powf(b);
    Ok((1.0 + a) * inner.powf(1.0 / (1.0 + a)))
}

/// Solves the critical-point equation u0 eta'(u0) = -1/log x of the omega
/// objective for a log-power family, by bisection in log u on the branch
/// where |u eta'(u)| decreases (the branch the interior minimizer lives
/// on). Residual is driven below 1e-12.
pub fn critical_point(eta: &EtaFamily, x: f64) -> Result<f64> {
    if !matches!(eta, EtaFamily::LogPower { .. }) {
        return Err(Error::param("critical_point needs a log-power family".to_string()));
    }
    if !(x >= 16.0) {
        return Err(Error::domain(format!("critical_point needs x >= 16, got {x}")));
    }
    let log_x = x.ln();
    let g = |v: f64| {
        let u = v.exp();
        u * eta.eta_prime(u).expect("log-power has a derivative") + 1.0 / log_x
    };
    // locate the most negative point of g on a coarse grid, then bracket
    // the sign change on its right
    let v_hi_limit = 200.0f64;
    let mut v_lo = 0.0;
    let mut g_lo = f64::INFINITY;
    let coarse = 2000;
    for i in 0..=coarse {
        let v = v_hi_limit * i as f64 / coarse as f64;
        let y = g(v);
        if y < g_lo {
            g_lo = y;
            v_lo = v;
        }
    }
    if g_lo >= 0.0 {
        return Err(Error::Bracket { lo: 0.0, hi: v_hi_limit });
    }
    let mut v_hi = v_lo + 1.0;
    while g(v_hi) < 0.0 {
        v_hi += 1.0;
        if v_hi > v_hi_limit {
            return Err(Error::Bracket { lo: v_lo, hi: v_hi_limit });
        }
    }
    let mut lo = v_lo;
    let mut hi = v_hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let v0 = 0.5 * (lo + hi);
    let residual = g(v0).abs();
    if residual > 1e-12 {
        return Err(Error::domain(format!(
            "critical-point residual {residual:.3e} above 1e-12 at x = {x}"
        )));
    }
    Ok(v0.exp())
}

/// Envelope base: x exp(-C f(.)) or x^2 exp(-C f(.)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseForm {
    XExp,
    X2Exp,
}

/// Inner argument transform applied to x before f.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArgMap {
    Identity,
    /// x -> x/2 (backward transfer).
    Half,
    /// x -> (x/2)^{1/A}, A > 1 (smoothed converse).
    HalfRoot { a: f64 },
}

impl ArgMap {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            ArgMap::Identity => x,
            ArgMap::Half => x / 2.0,
            ArgMap::HalfRoot { a } => (x / 2.0).powf(1.0 / a),
        }
    }
}

/// The monotone function inside an envelope exponent.
#[derive(Debug, Clone, PartialEq)]
pub enum TransferFn {
    Omega(EtaFamily),
    Varpi(EtaFamily),
    /// f(x) = log x.
    Log,
    /// f == 0: switches the exponential factor off so a [`BoundShape`] can
    /// carry pure polylog envelopes like N log^3 N.
    Zero,
}

impl TransferFn {
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            TransferFn::Omega(eta) => Ok(omega(eta, x)?.value),
            TransferFn::Varpi(eta) => Ok(varpi(eta, x)?.value),
            TransferFn::Log => {
                check_x(x)?;
                Ok(x.ln())
            }
            TransferFn::Zero => Ok(0.0),
        }
    }
}

/// An envelope shape `x^p (log x)^q exp(-C f(map(x)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundShape {
    pub base: BaseForm,
    pub c: f64,
    pub f: TransferFn,
    pub arg: ArgMap,
    /// Exponent q of the recorded (log x)^q factor; 0 for the plain forms.
    pub log_exponent: f64,
}

impl BoundShape {
    pub fn new(base: BaseForm, c: f64, f: TransferFn) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::param(format!("bound shape needs C > 0, got {c}")));
        }
        Ok(BoundShape { base, c, f, arg: ArgMap::Identity, log_exponent: 0.0 })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let power = match self.base {
            BaseForm::XExp => x,
            BaseForm::X2Exp => x * x,
        };
        let mut v = power * (-self.c * self.f.eval(self.arg.apply(x))?).exp();
        if self.log_exponent != 0.0 {
            v *= x.ln().powf(self.log_exponent);
        }
        Ok(v)
    }
}

/// R(x) << x exp(-C f(x))  =>  E(N) << N^2 exp(-C f(N)): same constant,
/// same f, squared base.
pub fn transfer_forward(shape: &BoundShape) -> Result<BoundShape> {
    if shape.base != BaseForm::XExp {
        return Err(Error::param("forward transfer needs the x exp(-C f(x)) form".to_string()));
    }
    Ok(BoundShape { base: BaseForm::X2Exp, ..shape.clone() })
}

/// R1(x) << x^2 exp(-C1 g(x))  =>  R(x) << x exp(-(C1/2) g(x/2)): halved
/// constant, halved argument.
pub fn transfer_backward(shape: &BoundShape) -> Result<BoundShape> {
    if shape.base != BaseForm::X2Exp || shape.arg != ArgMap::Identity {
        return Err(Error::param("backward transfer needs the x^2 exp(-C g(x)) form".to_string()));
    }
    Ok(BoundShape { base: BaseForm::XExp, c: shape.c / 2.0, arg: ArgMap::Half, ..shape.clone() })
}

/// The smoothed-average converse envelope
/// x (log x)^{2/5} exp(-(1/5) f((x/2)^{1/A})), A > 1.
pub fn bhowmik_ruzsa_shape(f: TransferFn, a: f64) -> Result<BoundShape> {
    if !(a > 1.0) {
        return Err(Error::param(format!("inner exponent needs A > 1, got {a}")));
    }
    Ok(BoundShape {
        base: BaseForm::XExp,
        c: 0.2,
        f,
        arg: ArgMap::HalfRoot { a },
        log_exponent: 0.4,
    })
}

impl BoundShape {
    /// Arc-split balance point delta = N^{-1} (log N)^{1/5}
    /// exp((2/5) f(N^{1/A})) attached to the smoothed converse shape.
    pub fn balancing_delta(&self, n: f64) -> Result<f64> {
        let ArgMap::HalfRoot { a } = self.arg else {
            return Err(Error::param("balancing delta applies to the (x/2)^{1/A} shape".to_string()));
        };
        let f_val = self.f.eval(n.powf(1.0 / a))?;
        Ok(n.ln().powf(0.2) / n * (0.4 * f_val).exp())
    }
}

/// Empirical envelope constant: sup over rows of |residual| / shape(N).
pub fn envelope_fit(rows: &[ResidualRecord], shape: impl Fn(f64) -> f64) -> Result<f64> {
    if rows.is_empty() {
        return Err(Error::param("envelope fit needs at least one row".to_string()));
    }
    let mut sup = 0.0f64;
    for row in rows {
        let s = shape(row.n);
        if s == 0.0 {
            return Err(Error::DegenerateEnvelope { at: row.n });
        }
        sup = sup.max(row.residual.abs() / s);
    }
    Ok(sup)
}

/// Growth-window report for a transfer function f: checks
/// lower * (log x)^{3/5} (log log x)^{1/5} <= f(x) <= (1/2) log x
/// over the sample points.
#[derive(Debug, Clone, Copy)]
pub struct WindowReport {
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// min over samples of f(x) / ((log x)^{3/5} (log log x)^{1/5}).
    pub min_lower_ratio: f64,
    /// max over samples of f(x) / ((1/2) log x).
    pub max_upper_ratio: f64,
}

pub fn growth_window_report(f: &TransferFn, xs: &[f64], lower_constant: f64) -> Result<WindowReport> {
    if xs.is_empty() {
        return Err(Error::param("growth window needs sample points".to_string()));
    }
    let mut min_lower = f64::INFINITY;
    let mut max_upper = 0.0f64;
    for &x in xs {
        if x < 16.0 {
            return Err(Error::domain(format!("growth window samples need x >= 16, got {x}")));
        }
        let fx = f.eval(x)?;
        let log_x = x.ln();
        min_lower = min_lower.min(fx / (log_x.powf(0.6) * log_x.ln().powf(0.2)));
        max_upper = max_upper.max(fx / (0.5 * log_x));
    }
    Ok(WindowReport {
        lower_ok: min_lower >= lower_constant,
        upper_ok: max_upper <= 1.0,
        min_lower_ratio: min_lower,
        max_upper_ratio: max_upper,
    })
}
