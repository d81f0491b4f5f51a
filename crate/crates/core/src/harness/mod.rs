//! Reproduction harness behind the `entbound` binary: figure and example
//! tables, randomized verification sweeps and measures of state files.
//!
//! Every command produces a [`Csv`] with a header row, rows in a fixed order
//! and reals printed with 12 significant digits, so identical configurations
//! give byte-identical output.

mod figures;
mod measure;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometric::GeometricOptions;

pub use figures::{example3_rows, fig1_rows, fig2_rows, run_example3, run_fig1, run_fig2, Fig1Row, Fig2Row};
pub use measure::run_measure;
pub use verify::{run_verify, verify_properties, PropertyOutcome, VerifyOutcome};

/// Settings shared by every command; per-command parameters are optional and
/// fall back to the defaults of that command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_step: f64,
    pub starts: usize,
    pub tol: f64,
    pub seed: u64,
    pub trials: usize,
    pub d: Option<usize>,
    pub n_max: Option<usize>,
    pub eps: Option<f64>,
    pub states: Vec<PathBuf>,
    pub coeff_a: Option<Complex64>,
    pub coeff_b: Option<Complex64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_step: 0.01,
            starts: 32,
            tol: 1e-10,
            seed: 42,
            trials: 200,
            d: None,
            n_max: None,
            eps: None,
            states: Vec::new(),
            coeff_a: None,
            coeff_b: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_step > 0.0 && self.grid_step <= 0.5) {
            return Err(Error::InvalidParameter(format!("grid step {} outside (0, 0.5]", self.grid_step)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(Error::InvalidParameter("starts must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn geometric_options(&self) -> GeometricOptions {
        GeometricOptions { starts: self.starts, tol: self.tol, seed: self.seed, ..GeometricOptions::default() }
    }
}

/// Parses `"RE,IM"` or a bare `"RE"` into a complex coefficient.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let bad = || Error::InvalidParameter(format!("cannot parse complex number {text:?}; expected RE,IM"));
    let mut parts = text.split(',').map(str::trim);
    let re = parts.next().ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?;
    let im = match parts.next() {
        Some(s) => s.parse::<f64>().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Cell text for a real: 12 significant digits in scientific notation.
pub fn real(x: f64) -> String {
    // Adding zero turns −0 into +0.
    format!("{:.11e}", x + 0.0)
}

/// Cell text for an optional real; `NA` when the quantity does not apply.
pub fn opt_real(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), real)
}

/// A rendered table: header plus rows of preformatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

/// What a command produced: the table and how many of its checks failed.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub csv: Csv,
    pub failures: usize,
}
