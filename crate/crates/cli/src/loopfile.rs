//! Loop files: a `t_count=N` header, then N rows of cubic coefficients
//! `c3 c2 c1 c0`. A row of eight tokens gives complex coefficients as
//! `re im` pairs. Blank lines and lines starting with `#` are skipped.
//! The loop closes implicitly: the last row is matched back to the first.

use std::fmt;

use monodromy_core::weierstrass::CubicPoly;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<Vec<CubicPoly>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let count: usize = header
        .strip_prefix("t_count=")
        .ok_or_else(|| err(hline, format!("expected `t_count=<N>`, got {header:?}")))?
        .trim()
        .parse()
        .map_err(|_| err(hline, "t_count is not a non-negative integer"))?;
    if count == 0 {
        return Err(err(hline, "t_count must be positive"));
    }

    let mut polys = Vec::with_capacity(count);
    for (n, row) in lines {
        if polys.len() == count {
            return Err(err(n, format!("more than t_count={count} rows")));
        }
        let vals = row
            .split_whitespace()
            .map(|t| match t.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(err(n, format!("not a finite number: {t:?}"))),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let c: [Complex64; 4] = match vals.len() {
            4 => [0, 1, 2, 3].map(|i| Complex64::new(vals[i], 0.0)),
            8 => [0, 1, 2, 3].map(|i| Complex64::new(vals[2 * i], vals[2 * i + 1])),
            k => return Err(err(n, format!("expected 4 or 8 coefficients, got {k}"))),
        };
        let poly = CubicPoly::new(c[0], c[1], c[2], c[3]).map_err(|e| err(n, e.to_string()))?;
        polys.push(poly);
    }
    if polys.len() != count {
        return Err(err(
            text.lines().count().max(1),
            format!("t_count={count} but {} rows", polys.len()),
        ));
    }
    Ok(polys)
}
