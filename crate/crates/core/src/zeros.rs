//! Ingestion and validation of external tables of Riemann zeta zero
//! ordinates.
//!
//! Input format is Odlyzko-style ASCII: one positive decimal ordinate per
//! line, strictly ascending, dot decimal separator. Only the positive
//! ordinates are stored; conjugate zeros enter the explicit-formula sums
//! analytically as `2 Re(...)`. Every explicit-formula experiment built on
//! a table runs in the verified-RH window of that table, so beta = 1/2 is
//! assumed throughout.

use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// How much of a zero file to ingest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroLimit {
    /// First `k` ordinates.
    Count(usize),
    /// All ordinates `gamma <= t`.
    Height(f64),
    All,
}

/// Ascending positive ordinates of zeta zeros plus provenance.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    source: String,
}

impl ZeroTable {
    /// Wraps an in-memory ordinate list, enforcing positivity and strict
    /// monotonicity.
    pub fn from_ordinates(gammas: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        for (i, &g) in gammas.iter().enumerate() {
            if !g.is_finite() || g <= 0.0 {
                return Err(Error::param(format!("ordinate #{} = {} not positive", i + 1, g)));
            }
            if i > 0 && g <= gammas[i - 1] {
                return Err(Error::param(format!("ordinates not strictly increasing at #{}", i + 1)));
            }
        }
        Ok(Self { gammas, source: source.into() })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn max_gamma(&self) -> f64 {
        self.gammas.last().copied().unwrap_or(0.0)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Ordinates with gamma <= t.
    pub fn upto(&self, t: f64) -> &[f64] {
        let cut = self.gammas.partition_point(|&g| g <= t);
        &self.gammas[..cut]
    }

    /// Number of ordinates in the window (t, t+1].
    pub fn count_in_window(&self, t: f64) -> Result<usize> {
        if t < 0.0 {
            return Err(Error::domain(format!("window start {t} must be >= 0")));
        }
        if t + 1.0 > self.max_gamma() {
            return Err(Error::Coverage { requested: t + 1.0, max_gamma: self.max_gamma() });
        }
        let lo = self.gammas.partition_point(|&g| g <= t);
        let hi = self.gammas.partition_point(|&g| g <= t + 1.0);
        Ok(hi - lo)
    }
}

/// Reads a zero table from an ASCII file, applying `limit`.
pub fn load_zeros(path: &Path, limit: ZeroLimit) -> Result<ZeroTable> {
    let file = std::fs::File::open(path)
        .map_err(|source| Error::DataFile { path: path.to_path_buf(), source })?;
    let table = parse_zeros(BufReader::new(file), path.to_path_buf(), limit)?;
    Ok(table)
}

fn parse_zeros<R: BufRead>(reader: R, path: PathBuf, limit: ZeroLimit) -> Result<ZeroTable> {
    if let ZeroLimit::Count(0) = limit {
        return Err(Error::param("zero limit must be positive"));
    }
    let mut gammas: Vec<f64> = Vec::new();
    let mut prev = 0.0f64;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let g: f64 = text.parse().map_err(|_| Error::ZeroTableParse {
            path: path.clone(),
            line: idx + 1,
            reason: format!("not a number: {text:?}"),
        })?;
        if !g.is_finite() || g <= 0.0 {
            return Err(Error::ZeroTableParse {
                path,
                line: idx + 1,
                reason: format!("ordinate {g} not positive"),
            });
        }
        if g <= prev {
            return Err(Error::ZeroTableParse {
                path,
                line: idx + 1,
                reason: format!("ordinate {g} not above previous {prev}"),
            });
        }
        match limit {
            ZeroLimit::Height(t) if g > t => break,
            _ => {}
        }
        prev = g;
        gammas.push(g);
        if let ZeroLimit::Count(k) = limit {
            if gammas.len() == k {
                break;
            }
        }
    }
    if gammas.is_empty() {
        return Err(Error::ZeroTableParse {
            path,
            line: 0,
            reason: "no ordinates in file".to_string(),
        });
    }
    let source = format!("{} ({:?}, {} ordinates)", path.display(), limit, gammas.len());
    ZeroTable::from_ordinates(gammas, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn load_str(text: &str, limit: ZeroLimit) -> Result<ZeroTable> {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        load_zeros(f.path(), limit)
    }

    const HEAD: &str = "14.134725141\n21.022039638\n25.010857580\n30.424876125\n32.935061587\n";

    #[test]
    fn parses_canonical_head() {
        let t = load_str(HEAD, ZeroLimit::All).unwrap();
        assert_eq!(t.len(), 5);
        assert!((t.gammas()[0] - 14.134725141).abs() < 1e-12);
        assert!((t.gammas()[0] - 14.134725).abs() < 1e-4);
        assert_eq!(t.max_gamma(), 32.935061587);
    }

    #[test]
    fn count_limit_takes_exactly_k() {
        let t = load_str(HEAD, ZeroLimit::Count(2)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.gammas()[1], 21.022039638);
    }

    #[test]
    fn height_limit_cuts_at_t() {
        let t = load_str(HEAD, ZeroLimit::Height(26.0)).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn rejects_descending_pair_with_line_number() {
        let err = load_str("14.1\n21.0\n20.9\n", ZeroLimit::All).unwrap_err();
        match err {
            Error::ZeroTableParse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_non_numeric_and_empty() {
        let err = load_str("14.1\nxyz\n", ZeroLimit::All).unwrap_err();
        match err {
            Error::ZeroTableParse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(load_str("", ZeroLimit::All).is_err());
        assert!(load_str("-3.0\n", ZeroLimit::All).is_err());
    }

    #[test]
    fn window_counts() {
        let t = load_str(HEAD, ZeroLimit::All).unwrap();
        assert_eq!(t.count_in_window(14.0).unwrap(), 1);
        assert_eq!(t.count_in_window(0.0).unwrap(), 0);
        assert_eq!(t.count_in_window(20.5).unwrap(), 1);
        assert!(matches!(t.count_in_window(32.5), Err(Error::Coverage { .. })));
        assert!(t.count_in_window(-1.0).is_err());
    }
}
