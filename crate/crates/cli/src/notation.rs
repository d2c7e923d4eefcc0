//! Parsers for the compact command-line notations.

use std::path::Path;

use cstar_info::{Channel64, State64, Tolerance};

use crate::error::{CliError, Result};

fn numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::config(format!("not a number: {t:?}")))
        })
        .collect()
}

/// `"0.9,0.1"` → a state; weights must already sum to one.
pub fn parse_state(s: &str) -> Result<State64> {
    let w = numbers(s)?;
    let alg = cstar_info::AtomicAlgebra::new(w.len())?;
    Ok(State64::new(alg, w, &Tolerance::default())?)
}

/// Real coefficient list `"0,1,3.5"`.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    numbers(s)
}

/// `"4:20"`, `"10:1000:10"` (inclusive, optional step) or `"4,8,12"`.
pub fn parse_grid(s: &str) -> Result<Vec<usize>> {
    let int = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::config(format!("not a nonnegative integer: {t:?}")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let grid: Vec<usize> = match parts.as_slice() {
        [one] => one.split(',').map(int).collect::<Result<_>>()?,
        [a, b] => (int(a)?..=int(b)?).collect(),
        [a, b, step] => {
            let step = int(step)?;
            if step == 0 {
                return Err(CliError::config("grid step must be positive"));
            }
            (int(a)?..=int(b)?).step_by(step).collect()
        }
        _ => return Err(CliError::config(format!("bad grid {s:?}"))),
    };
    if grid.is_empty() {
        return Err(CliError::config(format!("grid {s:?} is empty")));
    }
    Ok(grid)
}

/// `bsc(p)`, `bec(p)`, `identity(d)`, `useless(q1,…,qn)` or a path to channel JSON.
pub fn parse_channel(s: &str) -> Result<Channel64> {
    let s = s.trim();
    if let Some((name, rest)) = s.split_once('(') {
        if let Some(arg) = rest.strip_suffix(')') {
            let one = || -> Result<f64> {
                match numbers(arg)?.as_slice() {
                    [x] => Ok(*x),
                    _ => Err(CliError::config(format!("{name} takes one argument"))),
                }
            };
            return Ok(match name.trim() {
                "bsc" => Channel64::bsc(one()?)?,
                "bec" => Channel64::bec(one()?)?,
                "identity" => {
                    let d = arg
                        .trim()
                        .parse()
                        .map_err(|_| CliError::config(format!("bad dimension {arg:?}")))?;
                    Channel64::identity(d)?
                }
                "useless" => {
                    let row = numbers(arg)?;
                    Channel64::useless(row.len(), &row)?
                }
                other => return Err(CliError::config(format!("unknown channel {other:?}"))),
            });
        }
    }
    let path = Path::new(s);
    if !path.exists() {
        return Err(CliError::config(format!(
            "channel {s:?} is neither a built-in nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{s}: {e}")))
}
