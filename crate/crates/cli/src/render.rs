//! Output helpers shared by the subcommands.

use num_complex::Complex64;
use serde::Serialize;

/// Complex number as it appears in JSON output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

/// Rounding noise below this is printed as zero.
const NOISE: f64 = 1e-12;

fn clean(x: f64) -> f64 {
    if x.abs() < NOISE {
        0.0
    } else {
        x
    }
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: clean(z.re), im: clean(z.im) }
    }
}

/// `6.000000`, or `-0.500000+0.866025i` when the imaginary part matters.
pub fn complex(z: Complex64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im.abs() < 1e-9 {
        format!("{re:.6}")
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{re:.6}{sign}{:.6}i", im.abs())
    }
}

pub fn fraction((p, q): (i64, u64)) -> String {
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
