//! Compensated (Kahan-Babuska-Neumaier) summation.
//!
//! Every multi-million-term accumulation in this crate runs through
//! [`KahanSum`] so that results are stable to ~1e-15 relative regardless
//! of term count, and identical under any fixed iteration order.

/// Neumaier variant of Kahan summation: unlike plain Kahan it stays
/// correct when an addend exceeds the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::KahanSum;

    #[test]
    fn recovers_cancellation_that_breaks_plain_sum() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = terms.iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(KahanSum::sum_iter(terms.iter().copied()), 2.0);
    }

    #[test]
    fn matches_exact_sum_of_many_small_terms() {
        let n = 10_000_000usize;
        let mut acc = KahanSum::new();
        for _ in 0..n {
            acc.add(0.1);
        }
        let expected = 0.1 * n as f64;
        assert!((acc.value() - expected).abs() / expected < 1e-15);
    }
}
