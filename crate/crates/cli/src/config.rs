use std::collections::BTreeMap;
use std::fmt;

use anyhow::anyhow;
use clap::ValueEnum;
use num_complex::Complex64;

pub const THREADS_ENV: &str = "MONODROMY_LAB_THREADS";

/// Errors carry the exit code they map to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unparsable input, inputs outside the supported domain.
    Usage(anyhow::Error),
    /// A check or certification that ran and failed.
    Check(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Failure::Usage(anyhow!("{msg}"))
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Check(e) => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// "re,im" or a bare real number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected RE or RE,IM, got {s:?}")),
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(z)
}

/// "j,h".
pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match s.split(',').map(str::trim).collect::<Vec<_>>().as_slice() {
        [a, b] => {
            let a: f64 = a.parse().map_err(|_| format!("not a number: {a:?}"))?;
            let b: f64 = b.parse().map_err(|_| format!("not a number: {b:?}"))?;
            if a.is_finite() && b.is_finite() {
                Ok((a, b))
            } else {
                Err(format!("non-finite value in {s:?}"))
            }
        }
        _ => Err(format!("expected J,H, got {s:?}")),
    }
}

pub fn parse_epsilon(s: &str) -> Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if e > 0.0 && e <= 0.1 {
        Ok(e)
    } else {
        Err(format!("epsilon must lie in (0, 0.1], got {e}"))
    }
}

pub fn parse_samples(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a positive integer: {s:?}"))?;
    if n >= 256 && n.is_power_of_two() {
        Ok(n)
    } else {
        Err(format!("samples must be a power of two >= 256, got {n}"))
    }
}

pub fn parse_turns(s: &str) -> Result<i32, String> {
    let t: i32 = s.parse().map_err(|_| format!("not an integer: {s:?}"))?;
    if t == 0 {
        Err("turns must be nonzero".into())
    } else {
        Ok(t)
    }
}

/// `NAME=VALUE` from `--tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct TolOverride {
    pub name: String,
    pub value: f64,
}

pub fn parse_tol(s: &str) -> Result<TolOverride, String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("bad tolerance value in {s:?}"))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(format!("tolerance must be finite and non-negative, got {value}"));
    }
    Ok(TolOverride {
        name: name.trim().to_string(),
        value,
    })
}

/// Named tolerances of the verify suite, with their defaults.
pub const TOLERANCES: [(&str, f64); 10] = [
    ("jacobi", 1e-10),
    ("translation", 1e-10),
    ("level_translation", 1e-10),
    ("sqrt_kprime", 1e-10),
    ("heat", 1e-6),
    ("heat_order", 2.0),
    ("bridge", 1e-9),
    ("swap", 1e-9),
    ("carlson", 1e-10),
    ("gate", 1e-11),
];

pub fn tolerance_table(overrides: &[TolOverride]) -> Result<BTreeMap<&'static str, f64>, Failure> {
    let mut table: BTreeMap<&'static str, f64> = TOLERANCES.iter().copied().collect();
    for o in overrides {
        let key = TOLERANCES
            .iter()
            .map(|(k, _)| *k)
            .find(|k| *k == o.name)
            .ok_or_else(|| {
                let known: Vec<&str> = TOLERANCES.iter().map(|(k, _)| *k).collect();
                Failure::usage(format!("unknown tolerance {:?}; known: {}", o.name, known.join(", ")))
            })?;
        table.insert(key, o.value);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_and_pairs() {
        assert_eq!(parse_complex("0.1").unwrap(), Complex64::new(0.1, 0.0));
        assert_eq!(parse_complex("0.1, -2").unwrap(), Complex64::new(0.1, -2.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
        assert_eq!(parse_pair("0.3,0.5").unwrap(), (0.3, 0.5));
        assert!(parse_pair("0.3").is_err());
    }

    #[test]
    fn run_config_ranges() {
        assert!(parse_epsilon("0.05").is_ok());
        assert!(parse_epsilon("0").is_err());
        assert!(parse_epsilon("0.2").is_err());
        assert!(parse_samples("2048").is_ok());
        assert!(parse_samples("128").is_err());
        assert!(parse_samples("1000").is_err());
        assert!(parse_turns("-2").is_ok());
        assert!(parse_turns("0").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = tolerance_table(&[parse_tol("jacobi=1e-20").unwrap()]).unwrap();
        assert_eq!(t["jacobi"], 1e-20);
        assert_eq!(t["heat"], 1e-6);
        let err = tolerance_table(&[parse_tol("jacobbi=1").unwrap()]).unwrap_err();
        assert_eq!(err.code(), 2);
        assert!(parse_tol("jacobi").is_err());
        assert!(parse_tol("jacobi=-1").is_err());
    }
}
