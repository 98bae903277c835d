//! Plain-text input formats.
//!
//! All tabular formats are whitespace- or comma-separated numbers, one record
//! per line; blank lines and lines starting with `#` are ignored.  Line numbers
//! in errors are 1-based and count every physical line.

use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::approximation::BandLimitedFunction;
use crate::error::{Error, Result};
use crate::spectral::SpectralDensity;
use crate::weakvalues::{Observable, QuantumState};

/// Largest dimension accepted from a state or observable file.
pub const MAX_DIMENSION: usize = 4096;

/// Largest sample count accepted from a grid specification.
pub const MAX_GRID_COUNT: usize = 100_000_000;

/// `count` equally spaced points from `start` to `stop`, written `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::Parse { line: 1, msg });
        if !(start.is_finite() && stop.is_finite()) {
            return bad(format!("grid bounds {start}:{stop} must be finite"));
        }
        if start > stop {
            return bad(format!("grid start {start} exceeds stop {stop}"));
        }
        if count == 0 || count > MAX_GRID_COUNT {
            return bad(format!("grid count {count} must lie in 1..={MAX_GRID_COUNT}"));
        }
        Ok(Self { start, stop, count })
    }

    pub fn step(&self) -> f64 {
        if self.count == 1 {
            0.0
        } else {
            (self.stop - self.start) / (self.count - 1) as f64
        }
    }

    /// The points, with the last one equal to `stop` exactly.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.count).map(move |i| if i + 1 == self.count && self.count > 1 { self.stop } else { self.start + i as f64 * step })
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(Error::Parse { line: 1, msg: format!("expected start:stop:count, got {s:?}") });
        };
        let start = number(start, 1)?;
        let stop = number(stop, 1)?;
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse { line: 1, msg: format!("grid count {count:?}: {e}") })?;
        Grid::new(start, stop, count)
    }
}

fn number(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token.trim().parse().map_err(|e| Error::Parse { line, msg: format!("{token:?}: {e}") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, msg: format!("{token:?} is not finite") });
    }
    Ok(v)
}

/// Numeric records with their physical line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Result<Vec<f64>>)> + '_ {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| number(t, i + 1))
            .collect();
        Some((i + 1, fields))
    })
}

fn fixed_width(text: &str, width: usize) -> Result<Vec<Record>> {
    records(text)
        .map(|(line, fields)| {
            let fields = fields?;
            if fields.len() != width {
                return Err(Error::Parse { line, msg: format!("expected {width} columns, found {}", fields.len()) });
            }
            Ok((line, fields))
        })
        .collect()
}

/// Three columns `λ Re ψ̂(λ) Im ψ̂(λ)` on a uniform λ grid.
pub fn parse_bandlimited(text: &str) -> Result<BandLimitedFunction> {
    let rows = fixed_width(text, 3)?;
    if rows.len() < 2 {
        return Err(Error::Parse { line: rows.first().map_or(0, |r| r.0), msg: "need at least two spectral samples".into() });
    }
    let lambdas: Vec<f64> = rows.iter().map(|(_, r)| r[0]).collect();
    let hat = rows.iter().map(|(_, r)| Complex64::new(r[1], r[2])).collect();
    BandLimitedFunction::from_samples(&lambdas, hat)
}

/// Two columns `λ weight`.
pub fn parse_spectral_density(text: &str) -> Result<SpectralDensity> {
    let rows = fixed_width(text, 2)?;
    let (grid, weights) = rows.into_iter().map(|(_, r)| (r[0], r[1])).unzip();
    SpectralDensity::new(grid, weights)
}

/// A numeric record tagged with its 1-based line number.
type Record = (usize, Vec<f64>);

/// A header record holding the dimension `d`, then the numeric body.
fn dimensioned(text: &str) -> Result<(usize, Vec<Record>)> {
    let mut it = records(text);
    let (line, header) = it.next().ok_or(Error::Parse { line: 0, msg: "missing dimension header".into() })?;
    let header = header?;
    let d = match header.as_slice() {
        [d] if d.fract() == 0.0 && *d >= 1.0 && *d <= MAX_DIMENSION as f64 => *d as usize,
        _ => return Err(Error::Parse { line, msg: format!("dimension header must be one integer in 1..={MAX_DIMENSION}") }),
    };
    let body = it.map(|(line, fields)| fields.map(|f| (line, f))).collect::<Result<Vec<_>>>()?;
    if body.len() != d {
        let line = body.last().map_or(line, |r| r.0);
        return Err(Error::Parse { line, msg: format!("expected {d} rows after the header, found {}", body.len()) });
    }
    Ok((d, body))
}

fn pairs(line: usize, fields: &[f64], count: usize) -> Result<Vec<Complex64>> {
    if fields.len() != 2 * count {
        return Err(Error::Parse { line, msg: format!("expected {} numbers (Re/Im pairs), found {}", 2 * count, fields.len()) });
    }
    Ok(fields.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

/// Header `d`, then `d` rows `Re Im`; the vector is normalized on load.
pub fn parse_state(text: &str) -> Result<QuantumState> {
    let (_, body) = dimensioned(text)?;
    let amps = body.iter().map(|(line, f)| pairs(*line, f, 1).map(|v| v[0])).collect::<Result<Vec<_>>>()?;
    QuantumState::new(DVector::from_vec(amps))
}

/// Header `d`, then `d` rows of `d` `Re Im` pairs; the matrix must be Hermitian.
pub fn parse_observable(text: &str) -> Result<Observable> {
    let (d, body) = dimensioned(text)?;
    let mut entries = Vec::with_capacity(d * d);
    for (line, fields) in &body {
        entries.extend(pairs(*line, fields, d)?);
    }
    Observable::new(DMatrix::from_row_slice(d, d, &entries))
}
