//! Figure and example tables.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{opt_real, real, CommandOutput, Csv, RunConfig};
use crate::error::{Error, Result};
use crate::geo_bounds::{thm1_lower, thm2_upper, SuperpositionPair, BRANCH_DENOM_TOL};
use crate::geometric::lambda_max_estimate;
use crate::sq_bounds::{example3_report, SquashedBoundReport};
use crate::states::{make_state, superpose, StateFamily, SuperpositionSpec};

/// Exact geometric measures of the three-qubit GHZ and W states.
pub const E_GHZ3: f64 = 0.5;
pub const E_W3: f64 = 5.0 / 9.0;

const FIG1_TOL: f64 = 1e-9;
const FIG2_CLOSED_FORM_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Row {
    pub a: f64,
    pub lower_thm1: f64,
    pub upper_thm2: f64,
    pub e_g_estimate: f64,
    pub closed_form_lower: f64,
    pub closed_form_upper: f64,
}

impl Fig1Row {
    pub fn failures(&self) -> usize {
        [
            (self.lower_thm1 - self.closed_form_lower).abs() <= FIG1_TOL,
            (self.upper_thm2 - self.closed_form_upper).abs() <= FIG1_TOL,
            self.lower_thm1 <= self.upper_thm2 + FIG1_TOL,
        ]
        .iter()
        .filter(|ok| !**ok)
        .count()
    }
}

/// `max{−a²/18 − (4/(3√2))a√(1−a²) + 5/9, 0}`.
fn fig1_closed_lower(a: f64) -> f64 {
    let b = (1.0 - a * a).max(0.0).sqrt();
    (-a * a / 18.0 - 4.0 / (3.0 * 2f64.sqrt()) * a * b + 5.0 / 9.0).max(0.0)
}

/// `min{(35a²/18 + 3a/2 + 5/9)/(1−a), (−37a²/18 + 13√(1−a²)/9 + 23/9)/(1−√(1−a²)), 1}`,
/// skipping a term whose denominator vanishes.
fn fig1_closed_upper(a: f64) -> f64 {
    let b = (1.0 - a * a).max(0.0).sqrt();
    let mut best: f64 = 1.0;
    if 1.0 - a >= BRANCH_DENOM_TOL {
        best = best.min((35.0 / 18.0 * a * a + 1.5 * a + 5.0 / 9.0) / (1.0 - a));
    }
    if 1.0 - b >= BRANCH_DENOM_TOL {
        best = best.min((-37.0 / 18.0 * a * a + 13.0 / 9.0 * b + 23.0 / 9.0) / (1.0 - b));
    }
    best.max(0.0)
}

fn grid(step: f64) -> Vec<f64> {
    let n = (1.0 / step + 1e-9).floor() as usize;
    (0..=n).map(|i| (i as f64 * step).min(1.0)).collect()
}

/// `a|GHZ⟩ + √(1−a²)|W⟩` for `a` on the grid, with the component measures
/// fixed at their exact values.
pub fn fig1_rows(cfg: &RunConfig) -> Result<Vec<Fig1Row>> {
    cfg.validate()?;
    let ghz = make_state(&StateFamily::Ghz { parties: 3, local_dim: 2 })?;
    let w = make_state(&StateFamily::W3)?;
    let opts = cfg.geometric_options();
    grid(cfg.grid_step)
        .into_par_iter()
        .map(|a| {
            let b = (1.0 - a * a).max(0.0).sqrt();
            let spec = SuperpositionSpec::pair(c(a), ghz.clone(), c(b), w.clone())?;
            let pair = SuperpositionPair::from_spec(&spec)?;
            let (gamma, _) = superpose(&spec)?;
            Ok(Fig1Row {
                a,
                lower_thm1: thm1_lower(&pair, E_GHZ3, E_W3)?,
                upper_thm2: thm2_upper(&pair, E_GHZ3, E_W3)?.upper,
                e_g_estimate: lambda_max_estimate(&gamma, &opts)?.e_g,
                closed_form_lower: fig1_closed_lower(a),
                closed_form_upper: fig1_closed_upper(a),
            })
        })
        .collect()
}

pub fn run_fig1(cfg: &RunConfig) -> Result<CommandOutput> {
    let rows = fig1_rows(cfg)?;
    let mut csv = Csv::new(&["a", "lower_thm1", "upper_thm2", "e_g_estimate", "closed_form_lower", "closed_form_upper"]);
    let mut failures = 0;
    for r in &rows {
        failures += r.failures();
        csv.push(
            [r.a, r.lower_thm1, r.upper_thm2, r.e_g_estimate, r.closed_form_lower, r.closed_form_upper]
                .into_iter()
                .map(real)
                .collect(),
        );
    }
    Ok(CommandOutput { csv, failures })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig2Row {
    /// `'a'`: fixed `d`, varying `N`; `'b'`: `N = 3`, varying `d`.
    pub panel: char,
    pub parties: usize,
    pub d: usize,
    pub e_sq_gamma: f64,
    pub upper_thm3: f64,
    pub upper_thm4: Option<f64>,
    /// `N log₂(d−1)`.
    pub closed_form: f64,
}

impl Fig2Row {
    pub fn gap(&self) -> f64 {
        self.upper_thm3 - self.e_sq_gamma
    }

    pub fn failures(&self) -> usize {
        usize::from(self.e_sq_gamma > self.upper_thm3)
            + usize::from((self.e_sq_gamma - self.closed_form).abs() > FIG2_CLOSED_FORM_TOL)
    }
}

fn fig2_row(panel: char, parties: usize, d: usize) -> Result<Fig2Row> {
    let psi1 = make_state(&StateFamily::Example2 { parties, d, minus: false })?;
    let psi2 = make_state(&StateFamily::Example2 { parties, d, minus: true })?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let spec = SuperpositionSpec::pair(c(h), psi1, c(-h), psi2)?;
    let report = SquashedBoundReport::compute(&spec)?;
    Ok(Fig2Row {
        panel,
        parties,
        d,
        e_sq_gamma: report.e_sq_gamma,
        upper_thm3: report.upper_thm3,
        upper_thm4: report.upper_thm4.map(|t| t.value),
        closed_form: parties as f64 * ((d - 1) as f64).log2(),
    })
}

/// Panel (a): `d` (default 11) fixed, `N = 2..=n_max` (default 8).
/// Panel (b): `N = 3`, `d = 2..=8`. States stay sparse throughout.
pub fn fig2_rows(cfg: &RunConfig) -> Result<Vec<Fig2Row>> {
    cfg.validate()?;
    let d = cfg.d.unwrap_or(11);
    let n_max = cfg.n_max.unwrap_or(8);
    if d < 2 || n_max < 2 {
        return Err(Error::InvalidParameter(format!("fig2 needs d >= 2 and n-max >= 2, got {d}, {n_max}")));
    }
    let jobs: Vec<(char, usize, usize)> =
        (2..=n_max).map(|n| ('a', n, d)).chain((2..=8).map(|dd| ('b', 3, dd))).collect();
    jobs.into_par_iter().map(|(p, n, dd)| fig2_row(p, n, dd)).collect()
}

pub fn run_fig2(cfg: &RunConfig) -> Result<CommandOutput> {
    let rows = fig2_rows(cfg)?;
    let mut csv = Csv::new(&["panel", "N", "d", "e_sq_gamma", "upper_thm3", "upper_thm4", "gap", "closed_form"]);
    let mut failures = 0;
    for r in &rows {
        failures += r.failures();
        csv.push(vec![
            r.panel.to_string(),
            r.parties.to_string(),
            r.d.to_string(),
            real(r.e_sq_gamma),
            real(r.upper_thm3),
            opt_real(r.upper_thm4),
            real(r.gap()),
            real(r.closed_form),
        ]);
    }
    Ok(CommandOutput { csv, failures })
}

/// One row per `d`, all at the same `ε`.
pub fn example3_rows(eps: f64, ds: &[usize]) -> Result<Csv> {
    let mut csv = Csv::new(&["eps", "d", "fidelity", "esq1", "esq2", "esq2_approx"]);
    for &d in ds {
        let r = example3_report(eps, d)?;
        csv.push(vec![real(eps), d.to_string(), real(r.fidelity), real(r.esq1), real(r.esq2), real(r.esq2_approx)]);
    }
    Ok(csv)
}

/// Single row at `eps` (default 0.1) and `d` (default 16).
pub fn run_example3(cfg: &RunConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let csv = example3_rows(cfg.eps.unwrap_or(0.1), &[cfg.d.unwrap_or(16)])?;
    Ok(CommandOutput { csv, failures: 0 })
}
