//! Von Mangoldt table and the Chebyshev functions psi, psi1 served exactly
//! at integer arguments.
//!
//! `lambda[n] = log p` when `n = p^k`, else 0. The table is built by a
//! segmented sieve (parallel over segments, deterministic output), after
//! which it is immutable. `psi` is a stored prefix sum; `psi1` is computed
//! on demand from the compact prime-power list, both with compensated
//! accumulation. Between integers `psi` is a step function, so callers that
//! need continuous values interpolate: `psi(t) = psi(floor(t))` and
//! `R(t) = psi(floor(t)) - t` is piecewise linear with slope -1.

use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// Default capacity cap. Two f64 arrays plus the prime-power list cost
/// ~17 bytes per entry, so the default keeps builds under ~3.5 GB.
pub const DEFAULT_CAPACITY: u64 = 200_000_000;

/// Sieve segment length, sized for L2-resident marking.
const SEGMENT_LEN: usize = 1 << 20;

/// Cache file magic ("GoLdbach laMBda").
const CACHE_MAGIC: [u8; 4] = *b"GLMB";
const CACHE_VERSION: u16 = 1;

/// Dense table of Lambda(n) for 1 <= n <= n_max with prefix sums.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    n_max: u64,
    /// lambda[n] for n in [0, n_max]; index 0 is unused and holds 0.
    lambda: Vec<f64>,
    /// psi_prefix[n] = sum_{m<=n} lambda[m].
    psi_prefix: Vec<f64>,
    /// Ascending (n, lambda[n]) over the nonzero entries.
    prime_powers: Vec<(u32, f64)>,
}

impl LambdaTable {
    /// Builds the table for `1 <= n_max <= DEFAULT_CAPACITY`.
    pub fn build(n_max: u64) -> Result<Self> {
        Self::build_with_capacity(n_max, DEFAULT_CAPACITY)
    }

    /// Builds with an explicit capacity cap (entries, not bytes).
    pub fn build_with_capacity(n_max: u64, capacity: u64) -> Result<Self> {
        if n_max == 0 || n_max > capacity || n_max > u32::MAX as u64 {
            return Err(Error::Capacity {
                requested: n_max,
                limit: capacity.min(u32::MAX as u64),
            });
        }
        let n = n_max as usize;
        let root = (n_max as f64).sqrt().floor() as u64;
        let small_primes = simple_primes(root.min(n_max));

        let mut lambda = vec![0.0f64; n + 1];
        // Primes get log n; prime powers are re-marked afterwards. Segment
        // boundaries do not affect any value, so the parallel pass is
        // deterministic.
        lambda[1..].par_chunks_mut(SEGMENT_LEN).enumerate().for_each(|(ci, seg)| {
            let lo = 1 + ci * SEGMENT_LEN;
            let len = seg.len();
            let mut composite = vec![false; len];
            for &p in &small_primes {
                let p = p as usize;
                if p * p > lo + len - 1 {
                    break;
                }
                let mut m = (p * p).max(lo.div_ceil(p) * p);
                while m < lo + len {
                    composite[m - lo] = true;
                    m += p;
                }
            }
            for (i, slot) in seg.iter_mut().enumerate() {
                let v = lo + i;
                if v >= 2 && !composite[i] {
                    *slot = (v as f64).ln();
                }
            }
        });
        for &p in &small_primes {
            let lp = (p as f64).ln();
            let mut q = p * p;
            while q <= n_max {
                lambda[q as usize] = lp;
                q = q.saturating_mul(p);
            }
        }

        Ok(Self::from_lambda_values(lambda))
    }

    /// Wraps raw `lambda` values (index = n, entry 0 ignored) into a table,
    /// rebuilding prefix sums and the prime-power list. Used by the cache
    /// loader and by tests that force synthetic coefficient tables.
    pub fn from_lambda_values(mut lambda: Vec<f64>) -> Self {
        assert!(!lambda.is_empty() && lambda.len() - 1 <= u32::MAX as usize);
        lambda[0] = 0.0;
        let n_max = (lambda.len() - 1) as u64;
        let mut psi_prefix = vec![0.0f64; lambda.len()];
        let mut acc = KahanSum::new();
        let mut prime_powers = Vec::new();
        for (i, &l) in lambda.iter().enumerate().skip(1) {
            if l != 0.0 {
                acc.add(l);
                prime_powers.push((i as u32, l));
            }
            psi_prefix[i] = acc.value();
        }
        Self { n_max, lambda, psi_prefix, prime_powers }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Lambda(n).
    pub fn lambda(&self, n: u64) -> Result<f64> {
        self.check(n)?;
        Ok(self.lambda[n as usize])
    }

    /// Raw coefficient slice, index = n.
    pub fn lambda_slice(&self) -> &[f64] {
        &self.lambda
    }

    /// Ascending (n, Lambda(n)) over prime powers.
    pub fn prime_powers(&self) -> &[(u32, f64)] {
        &self.prime_powers
    }

    /// Prime powers n <= x.
    pub fn prime_powers_upto(&self, x: u64) -> &[(u32, f64)] {
        let cut = self.prime_powers.partition_point(|&(n, _)| (n as u64) <= x);
        &self.prime_powers[..cut]
    }

    /// psi(x) = sum_{n<=x} Lambda(n), psi(0) = 0.
    pub fn psi(&self, x: u64) -> Result<f64> {
        self.check(x)?;
        Ok(self.psi_prefix[x as usize])
    }

    /// psi1(x) = sum_{n<=x} (x-n) Lambda(n) = integral of psi over [0, x].
    pub fn psi1(&self, x: u64) -> Result<f64> {
        self.check(x)?;
        let xf = x as f64;
        let mut acc = KahanSum::new();
        for &(n, l) in self.prime_powers_upto(x) {
            acc.add((xf - n as f64) * l);
        }
        Ok(acc.value())
    }

    /// (R(x), R1(x)) = (psi(x) - x, psi1(x) - x^2/2).
    pub fn remainder(&self, x: u64) -> Result<(f64, f64)> {
        let xf = x as f64;
        Ok((self.psi(x)? - xf, self.psi1(x)? - xf * xf / 2.0))
    }

    /// sup of |R(t)| over the continuous interval [lo, hi].
    ///
    /// R is linear with slope -1 between integers, so the sup is attained
    /// at a jump: it is the max of |psi(u) - u| and |psi(u) - (u+1)| over
    /// the unit subintervals, plus |R(hi)| at the right endpoint.
    pub fn max_abs_r(&self, lo: u64, hi: u64) -> Result<f64> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        self.check(hi)?;
        let mut best = (self.psi_prefix[hi as usize] - hi as f64).abs();
        for u in lo..hi {
            let psi_u = self.psi_prefix[u as usize];
            best = best
                .max((psi_u - u as f64).abs())
                .max((psi_u - (u + 1) as f64).abs());
        }
        Ok(best)
    }

    pub fn remainder_view(&self) -> RemainderView<'_> {
        RemainderView { table: self }
    }

    fn check(&self, x: u64) -> Result<()> {
        if x > self.n_max {
            return Err(Error::OutOfRange { x, n_max: self.n_max });
        }
        Ok(())
    }

    /// Serializes the coefficient table:
    /// magic "GLMB", version u16, n_max u64, then n_max little-endian f64
    /// values Lambda(1..=n_max).
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&self.n_max.to_le_bytes())?;
        for &l in &self.lambda[1..] {
            w.write_all(&l.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn write_cache_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_cache(std::io::BufWriter::new(file))
    }

    /// Loads a cache written by [`write_cache`], validating magic, version
    /// and length.
    pub fn read_cache<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)
            .map_err(|_| bad_cache("file too short for header"))?;
        if magic != CACHE_MAGIC {
            return Err(bad_cache("wrong magic"));
        }
        let mut v = [0u8; 2];
        r.read_exact(&mut v).map_err(|_| bad_cache("missing version"))?;
        if u16::from_le_bytes(v) != CACHE_VERSION {
            return Err(bad_cache("unsupported version"));
        }
        let mut nb = [0u8; 8];
        r.read_exact(&mut nb).map_err(|_| bad_cache("missing n_max"))?;
        let n_max = u64::from_le_bytes(nb);
        if n_max == 0 || n_max > u32::MAX as u64 {
            return Err(bad_cache("n_max out of range"));
        }
        let mut lambda = vec![0.0f64; n_max as usize + 1];
        let mut buf = [0u8; 8];
        for slot in lambda.iter_mut().skip(1) {
            r.read_exact(&mut buf)
                .map_err(|_| bad_cache("truncated payload"))?;
            *slot = f64::from_le_bytes(buf);
        }
        if r.read(&mut buf)? != 0 {
            return Err(bad_cache("trailing bytes after payload"));
        }
        Ok(Self::from_lambda_values(lambda))
    }

    pub fn read_cache_file(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_cache(std::io::BufReader::new(file))
    }
}

fn bad_cache(reason: &str) -> Error {
    Error::CacheFormat { reason: reason.to_string() }
}

/// View serving the PNT remainders R(x) = psi(x) - x and
/// R1(x) = psi1(x) - x^2/2.
#[derive(Debug, Clone, Copy)]
pub struct RemainderView<'a> {
    table: &'a LambdaTable,
}

impl RemainderView<'_> {
    pub fn r(&self, x: u64) -> Result<f64> {
        Ok(self.table.psi(x)? - x as f64)
    }

    pub fn r1(&self, x: u64) -> Result<f64> {
        let xf = x as f64;
        Ok(self.table.psi1(x)? - xf * xf / 2.0)
    }

    pub fn max_abs_r(&self, lo: u64, hi: u64) -> Result<f64> {
        self.table.max_abs_r(lo, hi)
    }
}

fn simple_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if is_prime[p] {
            let mut m = p * p;
            while m <= n {
                is_prime[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| is_prime[i]).map(|i| i as u64).collect()
}
