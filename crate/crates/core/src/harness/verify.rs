//! Randomized verification of every bound and entropy inequality.
//!
//! Each property draws its instances from its own ChaCha stream of the
//! configured seed, indexed by trial, so results do not depend on thread
//! scheduling and one property's trial count does not shift another's
//! instances.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{real, CommandOutput, Csv, RunConfig};
use crate::error::Result;
use crate::geo_bounds::{proposition_lower, thm1_lower, thm2_upper, weak_lower, SuperpositionPair};
use crate::geometric::{lambda_max_bipartite_exact, lambda_max_bruteforce, lambda_max_estimate, GeometricOptions};
use crate::sq_bounds::{binary_entropy, thm3_upper, thm4_upper, thm5_lower};
use crate::states::{
    entropy_profile, random_density_matrix, random_state_with, reduced_density_matrix, superpose,
    von_neumann_entropy, PureState, SuperpositionSpec,
};

const TOL_THM1: f64 = 1e-7;
const TOL_SATURATION: f64 = 1e-9;
const TOL_THM2: f64 = 1e-6;
const TOL_WEAK: f64 = 1e-12;
const TOL_SQ_UPPER: f64 = 1e-8;
const TOL_DOMINANCE: f64 = 1e-9;
const TOL_THM5: f64 = 1e-8;
const TOL_STATIONARITY: f64 = 1e-5;
const TOL_ENTROPY: f64 = 1e-8;
const TOL_H2: f64 = 1e-15;
const TOL_ORACLE: f64 = 1e-8;
const TOL_BRUTEFORCE: f64 = 1e-12;
const BRUTEFORCE_SAMPLES: usize = 2000;

/// Result of one property over all trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Largest amount by which the inequality was violated before the
    /// tolerance is applied; 0 when it always held.
    pub max_violation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub properties: Vec<PropertyOutcome>,
}

impl VerifyOutcome {
    pub fn total_failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures).sum()
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// One trial's contribution: `margin` is `lhs − rhs` of an inequality
/// `lhs ≤ rhs`; the trial fails when `margin > tol`.
#[derive(Debug, Clone, Copy)]
struct Check {
    margin: f64,
    tol: f64,
}

impl Check {
    fn le(lhs: f64, rhs: f64, tol: f64) -> Self {
        Self { margin: lhs - rhs, tol }
    }

    fn close(x: f64, y: f64, tol: f64) -> Self {
        Self { margin: (x - y).abs(), tol }
    }

    fn bitwise(x: f64, y: f64) -> Self {
        let margin = if x.to_bits() == y.to_bits() { 0.0 } else { (x - y).abs().max(f64::MIN_POSITIVE) };
        Self { margin, tol: 0.0 }
    }

    fn pass() -> Self {
        Self { margin: f64::NEG_INFINITY, tol: 0.0 }
    }

    fn failed(&self) -> bool {
        !(self.margin <= self.tol)
    }
}

fn summarize(name: &'static str, checks: impl IntoIterator<Item = Check>) -> PropertyOutcome {
    let mut out = PropertyOutcome { name, trials: 0, failures: 0, max_violation: 0.0 };
    for c in checks {
        out.trials += 1;
        out.failures += usize::from(c.failed());
        if c.margin.is_nan() {
            out.max_violation = f64::NAN;
        } else if c.margin > out.max_violation {
            out.max_violation = c.margin;
        }
    }
    out
}

fn stream_rng(seed: u64, group: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((group << 32) | trial as u64);
    rng
}

fn unit_pair<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    let theta = rng.random::<f64>() * std::f64::consts::FRAC_PI_2;
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    (Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phi))
}

const QUBITS3: [usize; 3] = [2, 2, 2];

/// A random two-term superposition of 3-qubit states. Every fourth trial
/// tilts ψ₂ towards ψ₁ to exercise large overlaps.
fn pair_instance(rng: &mut ChaCha8Rng, trial: usize) -> Result<SuperpositionSpec> {
    loop {
        let psi1 = random_state_with(&QUBITS3, rng)?;
        let mut psi2 = random_state_with(&QUBITS3, rng)?;
        if trial % 4 == 3 {
            let w = Complex64::new(0.3, 0.0);
            let tilt = SuperpositionSpec::pair(Complex64::new((1.0 - 0.09f64).sqrt(), 0.0), psi1.clone(), w, psi2)?;
            psi2 = superpose(&tilt)?.0;
        }
        let (a, b) = unit_pair(rng);
        let spec = SuperpositionSpec::pair(a, psi1, b, psi2)?;
        if superpose(&spec).is_ok() {
            return Ok(spec);
        }
    }
}

fn pair_checks(trial: usize, seed: u64, opts: &GeometricOptions) -> Result<Vec<Check>> {
    let mut rng = stream_rng(seed, 1, trial);
    let spec = pair_instance(&mut rng, trial)?;
    let pair = SuperpositionPair::from_spec(&spec)?;
    let comps = spec.components();
    let (gamma, _) = superpose(&spec)?;
    let n = gamma.parties();

    let eg1 = lambda_max_estimate(&comps[0], opts)?.e_g;
    let eg2 = lambda_max_estimate(&comps[1], opts)?.e_g;
    let eg = lambda_max_estimate(&gamma, opts)?.e_g;
    let lower = thm1_lower(&pair, eg1, eg2)?;

    let esq1 = entropy_profile(&comps[0])?.total;
    let esq2 = entropy_profile(&comps[1])?.total;
    let esq = entropy_profile(&gamma)?.total;
    let t3 = thm3_upper(&pair, esq1, esq2, n)?;
    let t4 = thm4_upper(&pair, esq1, esq2, n)?;
    let t5 = thm5_lower(&pair.renormalized()?, esq1, esq2, n)?;

    Ok(vec![
        Check::le(lower, eg, TOL_THM1),
        Check::bitwise(proposition_lower(&spec, &[eg1, eg2])?, lower),
        Check::le(eg, thm2_upper(&pair, eg1, eg2)?.upper, TOL_THM2),
        Check::le(weak_lower(&pair, eg1, eg2)?, lower, TOL_WEAK),
        Check::le(esq, t3, TOL_SQ_UPPER),
        t4.map_or_else(Check::pass, |t| Check::le(esq, t.value, TOL_SQ_UPPER)),
        t4.map_or_else(Check::pass, |t| Check::le(t.value, t3, TOL_DOMINANCE)),
        Check::le(t5.value, esq, TOL_THM5),
        t4.filter(|t| t.is_interior())
            .map_or_else(Check::pass, |t| Check::le(t.residual, 0.0, TOL_STATIONARITY)),
    ])
}

const PAIR_PROPERTIES: [&str; 9] = [
    "thm1_le_eg",
    "prop_eq_thm1",
    "eg_le_thm2",
    "weak_le_thm1",
    "esq_le_thm3",
    "esq_le_thm4",
    "thm4_le_thm3",
    "thm5_le_esq",
    "thm4_stationarity",
];

/// `ψ₁ = ψ₂` with real positive `a, b`: the lower bound equals `E_g(Γ)`.
fn saturation_check(trial: usize, seed: u64, opts: &GeometricOptions) -> Result<Check> {
    let mut rng = stream_rng(seed, 2, trial);
    let psi = random_state_with(&QUBITS3, &mut rng)?;
    let theta = (0.05 + 0.9 * rng.random::<f64>()) * std::f64::consts::FRAC_PI_2;
    let spec = SuperpositionSpec::pair(
        Complex64::new(theta.cos(), 0.0),
        psi.clone(),
        Complex64::new(theta.sin(), 0.0),
        psi.clone(),
    )?;
    let pair = SuperpositionPair::from_spec(&spec)?;
    let e = lambda_max_estimate(&psi, opts)?.e_g;
    let (gamma, _) = superpose(&spec)?;
    let eg = lambda_max_estimate(&gamma, opts)?.e_g;
    Ok(Check::close(thm1_lower(&pair, e, e)?, eg, TOL_SATURATION))
}

/// Mixing lemma and concavity for `xρ + (1−x)σ`.
fn entropy_checks(trial: usize, seed: u64) -> Result<[Check; 2]> {
    let mut rng = stream_rng(seed, 3, trial);
    let dim = rng.random_range(2..=4);
    let rho = random_density_matrix(dim, &mut rng);
    let sigma = random_density_matrix(dim, &mut rng);
    let x = rng.random_range(0.01..0.99);
    let mix = &rho * Complex64::new(x, 0.0) + &sigma * Complex64::new(1.0 - x, 0.0);
    let s_mix = von_neumann_entropy(&mix)?;
    let avg = x * von_neumann_entropy(&rho)? + (1.0 - x) * von_neumann_entropy(&sigma)?;
    Ok([
        Check::le(s_mix, avg + binary_entropy(x)?, TOL_ENTROPY),
        Check::le(avg, s_mix, TOL_ENTROPY),
    ])
}

fn h2_check(trial: usize, seed: u64) -> Result<Check> {
    let x = stream_rng(seed, 4, trial).random::<f64>();
    Ok(Check::close(binary_entropy(x)?, binary_entropy(1.0 - x)?, TOL_H2))
}

fn oracle_check(trial: usize, seed: u64, opts: &GeometricOptions) -> Result<Check> {
    let mut rng = stream_rng(seed, 5, trial);
    let dims = [rng.random_range(2..=4), rng.random_range(2..=4)];
    let psi = random_state_with(&dims, &mut rng)?;
    let est = lambda_max_estimate(&psi, opts)?.lambda_max;
    let exact = lambda_max_bipartite_exact(&psi)?.lambda_max;
    Ok(Check::close(est, exact, TOL_ORACLE))
}

/// The optimizer must beat any sampled product state.
fn bruteforce_check(trial: usize, seed: u64, opts: &GeometricOptions) -> Result<Check> {
    let mut rng = stream_rng(seed, 6, trial);
    let psi = random_state_with(&QUBITS3, &mut rng)?;
    let sampled = lambda_max_bruteforce(&psi, BRUTEFORCE_SAMPLES, rng.random());
    Ok(Check::le(sampled, lambda_max_estimate(&psi, opts)?.lambda_max, TOL_BRUTEFORCE))
}

/// Views `state` as a bipartite state `A | rest`, where `A` is the set of
/// parties flagged in `mask`.
fn group_parties(state: &PureState, mask: u32) -> Result<PureState> {
    let dims = state.dims();
    let in_a = |k: usize| mask >> k & 1 == 1;
    let dim_a: usize = (0..dims.len()).filter(|&k| in_a(k)).map(|k| dims[k]).product();
    let dim_b: usize = (0..dims.len()).filter(|&k| !in_a(k)).map(|k| dims[k]).product();
    let mut entries = Vec::new();
    state.for_each_nonzero(|index, amp| {
        let (mut ia, mut ib) = (0, 0);
        for (k, (&i, &d)) in index.iter().zip(dims).enumerate() {
            if in_a(k) {
                ia = ia * d + i;
            } else {
                ib = ib * d + i;
            }
        }
        entries.push((vec![ia, ib], amp));
    });
    PureState::sparse(vec![dim_a, dim_b], entries)
}

fn bipartition_check(trial: usize, seed: u64) -> Result<Check> {
    let mut rng = stream_rng(seed, 7, trial);
    let parties = rng.random_range(3..=4);
    let dims: Vec<usize> = (0..parties).map(|_| rng.random_range(2..=3)).collect();
    let psi = random_state_with(&dims, &mut rng)?;
    let mask = rng.random_range(1..(1u32 << parties) - 1);
    let split = group_parties(&psi, mask)?;
    let s_a = von_neumann_entropy(&reduced_density_matrix(&split, 0)?)?;
    let s_b = von_neumann_entropy(&reduced_density_matrix(&split, 1)?)?;
    Ok(Check::close(s_a, s_b, TOL_ENTROPY))
}

fn per_trial<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

/// Runs every property for `cfg.trials` instances each.
pub fn verify_properties(cfg: &RunConfig) -> Result<VerifyOutcome> {
    cfg.validate()?;
    let opts = cfg.geometric_options();
    let (seed, trials) = (cfg.seed, cfg.trials);

    let pair = per_trial(trials, |t| pair_checks(t, seed, &opts))?;
    let mut properties: Vec<PropertyOutcome> = PAIR_PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, &name)| summarize(name, pair.iter().map(|row| row[i])))
        .collect();
    properties.insert(2, summarize("thm1_saturation", per_trial(trials, |t| saturation_check(t, seed, &opts))?));

    let entropy = per_trial(trials, |t| entropy_checks(t, seed))?;
    properties.push(summarize("mixing_lemma", entropy.iter().map(|c| c[0])));
    properties.push(summarize("concavity", entropy.iter().map(|c| c[1])));
    properties.push(summarize("h2_symmetry", per_trial(trials, |t| h2_check(t, seed))?));
    properties.push(summarize("oracle_equivalence", per_trial(trials, |t| oracle_check(t, seed, &opts))?));
    properties.push(summarize("bruteforce_dominance", per_trial(trials, |t| bruteforce_check(t, seed, &opts))?));
    properties.push(summarize("bipartition_symmetry", per_trial(trials, |t| bipartition_check(t, seed))?));
    Ok(VerifyOutcome { properties })
}

pub fn run_verify(cfg: &RunConfig) -> Result<CommandOutput> {
    let outcome = verify_properties(cfg)?;
    let mut csv = Csv::new(&["property", "trials", "failures", "max_violation"]);
    for p in &outcome.properties {
        csv.push(vec![p.name.to_string(), p.trials.to_string(), p.failures.to_string(), real(p.max_violation)]);
    }
    Ok(CommandOutput { csv, failures: outcome.total_failures() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_runs_every_property_once() {
        let cfg = RunConfig { trials: 1, ..RunConfig::default() };
        let out = verify_properties(&cfg).unwrap();
        assert_eq!(out.properties.len(), 16);
        assert!(out.properties.iter().all(|p| p.trials == 1));
        assert_eq!(out.total_failures(), 0, "{out:?}");
    }

    #[test]
    fn check_semantics() {
        assert!(!Check::le(1.0, 1.0, 0.0).failed());
        assert!(Check::le(1.0 + 1e-6, 1.0, 1e-7).failed());
        assert!(Check::bitwise(0.1 + 0.2, 0.3).failed());
        assert!(!Check::bitwise(0.5, 0.5).failed());
        assert!(Check::close(f64::NAN, 0.0, 1.0).failed());
        let s = summarize("x", [Check::le(0.0, 1.0, 0.0), Check::le(2.0, 1.0, 0.5)]);
        assert_eq!((s.trials, s.failures, s.max_violation), (2, 1, 1.0));
    }

    #[test]
    fn grouping_preserves_amplitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = random_state_with(&[2, 3, 2], &mut rng).unwrap();
        // A = {party 1}; rest = parties 0 and 2 in order.
        let split = group_parties(&psi, 0b010).unwrap();
        assert_eq!(split.dims(), &[3, 4]);
        assert_eq!(split.amplitude(&[2, 3]), psi.amplitude(&[1, 2, 1]));
        assert!((split.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tiny_tolerance_is_reported_not_panicking() {
        let cfg = RunConfig { trials: 2, tol: 1e-15, ..RunConfig::default() };
        let out = verify_properties(&cfg).unwrap();
        assert_eq!(out.properties.len(), 16);
    }
}
