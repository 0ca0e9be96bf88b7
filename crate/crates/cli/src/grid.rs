//! Parsers for the `--n`, `--m` and `--xi` grid arguments.

use crate::error::{usage, Failure};

/// Rounds to 12 decimals so that `0.1 * 3` lands on the same key as `0.3`.
pub fn snap(x: f64) -> f64 {
    let s = (x * 1e12).round() / 1e12;
    if s == 0.0 {
        0.0
    } else {
        s
    }
}

/// `100`, `2:100` (inclusive) or `4,10,51`.
pub fn parse_atoms(text: &str) -> Result<Vec<u32>, Failure> {
    let text = text.trim();
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("invalid atom count '{s}'")))
    };
    let values: Vec<u32> = if let Some((a, b)) = text.split_once(':') {
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(usage(format!("empty atom range '{text}'")));
        }
        (a..=b).collect()
    } else {
        text.split(',').map(parse).collect::<Result<_, _>>()?
    };
    if values.contains(&0) {
        return Err(usage("atom counts must be positive"));
    }
    Ok(values)
}

/// Selected Dicke labels, stored as `2m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MSelection {
    All,
    List(Vec<i32>),
}

impl MSelection {
    /// Labels valid for `n_atoms`, and the requested ones that are not.
    pub fn resolve(&self, n_atoms: u32) -> (Vec<i32>, Vec<i32>) {
        let n = n_atoms as i32;
        match self {
            MSelection::All => ((-n..=n).step_by(2).collect(), Vec::new()),
            MSelection::List(values) => values
                .iter()
                .partition(|&&two_m| two_m.abs() <= n && (two_m - n) % 2 == 0),
        }
    }
}

/// `3`, `-3/2` or `1.5`, returned as `2m`.
pub fn parse_half_integer(text: &str) -> Result<i32, Failure> {
    let t = text.trim();
    let bad = || {
        usage(format!(
            "invalid m '{t}': expected an integer or half-integer"
        ))
    };
    if let Some(num) = t.strip_suffix("/2") {
        return num.trim().parse::<i32>().map_err(|_| bad());
    }
    if let Ok(m) = t.parse::<i32>() {
        return m.checked_mul(2).ok_or_else(bad);
    }
    let m: f64 = t.parse().map_err(|_| bad())?;
    let doubled = 2.0 * m;
    if doubled.fract() != 0.0 || !doubled.is_finite() || doubled.abs() > f64::from(i32::MAX) {
        return Err(bad());
    }
    Ok(doubled as i32)
}

pub fn parse_m(text: &str) -> Result<MSelection, Failure> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(MSelection::All);
    }
    let values = text
        .split(',')
        .map(parse_half_integer)
        .collect::<Result<_, _>>()?;
    Ok(MSelection::List(values))
}

/// `start:stop:step` (inclusive) or a comma list.
pub fn parse_xi(text: &str) -> Result<Vec<f64>, Failure> {
    let text = text.trim();
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| usage(format!("invalid xi value '{s}'")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?,
        [start, stop, step] => {
            let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
            if !(step > 0.0) {
                return Err(usage("xi step must be positive"));
            }
            if stop < start {
                return Err(usage(format!("empty xi range '{text}'")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|i| start + i as f64 * step).collect()
        }
        _ => {
            return Err(usage(format!(
                "invalid xi grid '{text}': use start:stop:step or a list"
            )))
        }
    };
    if let Some(v) = values.iter().find(|v| **v < 0.0) {
        return Err(usage(format!("xi must be nonnegative, got {v}")));
    }
    Ok(values.into_iter().map(snap).collect())
}

/// `m` for display: `10`, `-3/2`.
pub fn format_m(two_m: i32) -> String {
    if two_m % 2 == 0 {
        (two_m / 2).to_string()
    } else {
        format!("{two_m}/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms() {
        assert_eq!(parse_atoms("100").unwrap(), vec![100]);
        assert_eq!(parse_atoms("2:5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_atoms("4, 10,51").unwrap(), vec![4, 10, 51]);
        assert!(parse_atoms("0").is_err());
        assert!(parse_atoms("5:2").is_err());
        assert!(parse_atoms("x").is_err());
    }

    #[test]
    fn half_integers() {
        assert_eq!(parse_half_integer("10").unwrap(), 20);
        assert_eq!(parse_half_integer("-3/2").unwrap(), -3);
        assert_eq!(parse_half_integer("1.5").unwrap(), 3);
        assert_eq!(parse_half_integer("-0.5").unwrap(), -1);
        assert!(parse_half_integer("0.3").is_err());
        assert_eq!(parse_m("all").unwrap(), MSelection::All);
        assert_eq!(parse_m("10,-20").unwrap(), MSelection::List(vec![20, -40]));
    }

    #[test]
    fn m_resolution_filters_invalid_labels() {
        let sel = MSelection::List(vec![2, 3, 102]);
        assert_eq!(sel.resolve(100), (vec![2], vec![3, 102]));
        assert_eq!(MSelection::All.resolve(2).0, vec![-2, 0, 2]);
    }

    #[test]
    fn xi_grids() {
        let g = parse_xi("0:3:0.01").unwrap();
        assert_eq!(g.len(), 301);
        assert_eq!(g[30], 0.3);
        assert_eq!(g[300], 3.0);
        assert_eq!(parse_xi("0.8,1.0").unwrap(), vec![0.8, 1.0]);
        assert_eq!(parse_xi("0.5").unwrap(), vec![0.5]);
        assert!(parse_xi("0:1:0").is_err());
        assert!(parse_xi("-0.1").is_err());
        assert!(parse_xi("1:0:0.1").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(format_m(20), "10");
        assert_eq!(format_m(-3), "-3/2");
    }
}
