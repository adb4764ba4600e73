//! Parsers for the small CLI spec languages: grids, eta families,
//! tolerance overrides.

use std::collections::HashMap;
use std::path::Path;

use goldbach_core::EtaFamily;

/// Grid spec: either a comma list (`10,50,500`) or a log-spaced range
/// `a:b:logK` meaning K points per decade from a to b (b included only
/// when it lands on the lattice).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let vals = if let Some((range, k)) = spec.split_once(":log") {
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| format!("bad grid spec {spec:?}: expected a:b:logK"))?;
        let a: f64 = a.trim().parse().map_err(|_| format!("bad grid start {a:?}"))?;
        let b: f64 = b.trim().parse().map_err(|_| format!("bad grid end {b:?}"))?;
        let k: u32 = k.trim().parse().map_err(|_| format!("bad per-decade count {k:?}"))?;
        if !(a > 0.0 && b >= a && k >= 1) {
            return Err(format!("bad grid spec {spec:?}: need 0 < a <= b, K >= 1"));
        }
        let mut out = Vec::new();
        for j in 0.. {
            let v = a * 10f64.powf(j as f64 / k as f64);
            if v > b * (1.0 + 1e-12) {
                break;
            }
            out.push(v);
        }
        out
    } else {
        spec.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad grid value {t:?}")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if vals.is_empty() {
        return Err(format!("grid spec {spec:?} yields no points"));
    }
    if vals.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(format!("grid spec {spec:?} has non-positive points"));
    }
    Ok(vals)
}

pub fn grid_as_integers(grid: &[f64]) -> Vec<u64> {
    let mut out: Vec<u64> = grid.iter().map(|&v| v.round() as u64).collect();
    out.dedup();
    out
}

/// Family spec: `constant:0.5`, `logpower:c,a,b`, or `table:<path>`
/// (two-column ASCII u eta(u) per line).
pub fn parse_family(spec: &str) -> Result<EtaFamily, String> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad family spec {spec:?}: expected kind:params"))?;
    match kind {
        "constant" => {
            let theta: f64 = rest.trim().parse().map_err(|_| format!("bad theta {rest:?}"))?;
            EtaFamily::constant(theta).map_err(|e| e.to_string())
        }
        "logpower" => {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("logpower needs c,a,b, got {rest:?}"));
            }
            let nums: Vec<f64> = parts
                .iter()
                .map(|t| t.parse::<f64>().map_err(|_| format!("bad logpower parameter {t:?}")))
                .collect::<Result<Vec<_>, _>>()?;
            EtaFamily::log_power(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())
        }
        "table" => {
            let text = std::fs::read_to_string(Path::new(rest))
                .map_err(|e| format!("cannot read eta table {rest:?}: {e}"))?;
            let mut points = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut cols = line.split_whitespace();
                let (u, e) = (cols.next(), cols.next());
                match (u.and_then(|s| s.parse().ok()), e.and_then(|s| s.parse().ok())) {
                    (Some(u), Some(e)) => points.push((u, e)),
                    _ => return Err(format!("{rest}:{}: expected `u eta`", i + 1)),
                }
            }
            EtaFamily::tabulated(points).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown family kind {other:?} (constant|logpower|table)")),
    }
}

/// `--tolerance experiment=value` pairs.
pub fn parse_tolerances(specs: &[String]) -> Result<HashMap<String, f64>, String> {
    let mut map = HashMap::new();
    for s in specs {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| format!("bad tolerance {s:?}: expected experiment=value"))?;
        let v: f64 = v.trim().parse().map_err(|_| format!("bad tolerance value {v:?}"))?;
        if !(v > 0.0) {
            return Err(format!("tolerance must be positive: {s:?}"));
        }
        map.insert(k.trim().to_string(), v);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_spaced_grid() {
        let g = parse_grid("1e3:1e6:log1").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[0] - 1e3).abs() < 1e-6 && (g[3] - 1e6).abs() < 1e-3);
        let g = parse_grid("100:1000:log4").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[1] - 100.0 * 10f64.powf(0.25)).abs() < 1e-9);
    }

    #[test]
    fn comma_grid_and_errors() {
        let g = parse_grid("10, 50,200").unwrap();
        assert_eq!(grid_as_integers(&g), vec![10, 50, 200]);
        assert!(parse_grid("").is_err());
        assert!(parse_grid("5:1:log2").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("-3").is_err());
    }

    #[test]
    fn families() {
        assert!(matches!(parse_family("constant:0.5"), Ok(EtaFamily::Constant { .. })));
        assert!(matches!(parse_family("logpower:1,1,0"), Ok(EtaFamily::LogPower { .. })));
        assert!(parse_family("constant:0.7").is_err());
        assert!(parse_family("mystery:1").is_err());
        assert!(parse_family("logpower:1,1").is_err());
    }

    #[test]
    fn tolerances() {
        let map = parse_tolerances(&["fujii=5".into(), "parseval=1e-9".into()]).unwrap();
        assert_eq!(map["fujii"], 5.0);
        assert_eq!(map["parseval"], 1e-9);
        assert!(parse_tolerances(&["bad".into()]).is_err());
        assert!(parse_tolerances(&["x=-1".into()]).is_err());
    }
}
