//! Geometric measure of entanglement, `E_g = 1 − Λ_max`, where `Λ_max` is the
//! largest squared overlap of a pure state with a fully product state.
//!
//! `Λ_max` is the best rank-one approximation of the amplitude tensor. It is
//! estimated by alternating (higher-order power) iteration: with all other
//! factors fixed, the optimal factor for one party is the normalized
//! contraction of the state against the rest, so every update can only raise
//! the overlap. Each run converges to a stationary point, so the estimate is a
//! lower bound on `Λ_max`; several random starts plus a start at the dominant
//! basis product state make it reliable in practice.
//!
//! Two oracles check the optimizer: the exact Schmidt value for bipartite
//! states and plain random sampling of product states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::states::{random_unit_vector, PureState};

/// A fully product state `|φ₁⟩ ⊗ … ⊗ |φ_N⟩` with unit-norm factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    factors: Vec<Vec<Complex64>>,
}

impl ProductState {
    pub fn new(factors: Vec<Vec<Complex64>>) -> Result<Self> {
        for (k, f) in factors.iter().enumerate() {
            let norm_sq: f64 = f.iter().map(|z| z.norm_sqr()).sum();
            if (norm_sq.sqrt() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("factor {k} has norm {}", norm_sq.sqrt())));
            }
        }
        Ok(Self { factors })
    }

    /// Haar-random factor on every party.
    pub fn random<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Self {
        Self { factors: dims.iter().map(|&d| random_unit_vector(d, rng)).collect() }
    }

    /// The computational basis product state `|index⟩`.
    pub fn basis(dims: &[usize], index: &[usize]) -> Self {
        let factors = dims
            .iter()
            .zip(index)
            .map(|(&d, &i)| {
                let mut f = vec![Complex64::new(0.0, 0.0); d];
                f[i] = Complex64::new(1.0, 0.0);
                f
            })
            .collect();
        Self { factors }
    }

    pub fn factors(&self) -> &[Vec<Complex64>] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Vec::len).collect()
    }

    /// `⟨φ|ψ⟩`.
    pub fn overlap(&self, state: &PureState) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        state.for_each_nonzero(|index, amp| {
            let weight: Complex64 = index.iter().zip(&self.factors).map(|(&i, f)| f[i].conj()).product();
            acc += weight * amp;
        });
        acc
    }

    /// Contracts the state against every factor except `party`:
    /// `v[j] = Σ_{i : i_party = j} ψ_i Π_{m≠party} conj(φ_m[i_m])`.
    fn contract_except(&self, state: &PureState, party: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.factors[party].len()];
        state.for_each_nonzero(|index, amp| {
            let mut weight = amp;
            for (m, (&i, f)) in index.iter().zip(&self.factors).enumerate() {
                if m != party {
                    weight *= f[i].conj();
                }
            }
            v[index[party]] += weight;
        });
        v
    }
}

/// Outcome of a `Λ_max` computation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricResult {
    /// Best squared overlap found, in `[0, 1]`.
    pub lambda_max: f64,
    /// `1 − lambda_max`.
    pub e_g: f64,
    pub optimizer: ProductState,
    pub starts_used: usize,
    /// Sweeps taken by the winning start.
    pub iterations: usize,
    pub converged: bool,
    /// True when produced by the bipartite Schmidt oracle.
    pub exact: bool,
}

impl GeometricResult {
    fn new(lambda: f64, optimizer: ProductState, starts_used: usize, iterations: usize, converged: bool, exact: bool) -> Self {
        let lambda_max = lambda.clamp(0.0, 1.0);
        Self { lambda_max, e_g: 1.0 - lambda_max, optimizer, starts_used, iterations, converged, exact }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricOptions {
    /// Number of Haar-random starts, in addition to the dominant-basis start.
    pub starts: usize,
    /// Stop once a full sweep changes `Λ` by less than this.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for GeometricOptions {
    fn default() -> Self {
        Self { starts: 32, tol: 1e-10, max_iter: 1000, seed: 42 }
    }
}

/// One round-robin pass over all parties, replacing each factor by its
/// optimal value. Returns `Λ` after each single-party update; the sequence is
/// non-decreasing.
pub fn alternating_sweep(state: &PureState, product: &mut ProductState) -> Vec<f64> {
    let mut trace = Vec::with_capacity(product.factors.len());
    for party in 0..product.factors.len() {
        let v = product.contract_except(state, party);
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq > 0.0 {
            let norm = norm_sq.sqrt();
            product.factors[party] = v.into_iter().map(|z| z / norm).collect();
            trace.push(norm_sq);
        } else {
            trace.push(product.overlap(state).norm_sqr());
        }
    }
    trace
}

struct Run {
    lambda: f64,
    product: ProductState,
    iterations: usize,
    converged: bool,
}

fn run_from(state: &PureState, mut product: ProductState, tol: f64, max_iter: usize) -> Run {
    let mut prev = product.overlap(state).norm_sqr();
    for iter in 1..=max_iter {
        let lambda = *alternating_sweep(state, &mut product).last().unwrap_or(&prev);
        if (lambda - prev).abs() < tol {
            return Run { lambda, product, iterations: iter, converged: true };
        }
        prev = lambda;
    }
    Run { lambda: prev, product, iterations: max_iter, converged: false }
}

fn dominant_basis_index(state: &PureState) -> Vec<usize> {
    let mut best = (vec![0; state.parties()], -1.0);
    state.for_each_nonzero(|index, amp| {
        if amp.norm_sqr() > best.1 {
            best = (index.to_vec(), amp.norm_sqr());
        }
    });
    best.0
}

/// Multi-start alternating maximization of `|⟨φ|ψ⟩|²` over product states.
///
/// Start 0 is the dominant basis product state; starts `1..=starts` are
/// Haar-random, each drawn from its own ChaCha stream of `seed`, so the
/// result does not depend on how the starts are scheduled.
pub fn lambda_max_estimate(state: &PureState, opts: &GeometricOptions) -> Result<GeometricResult> {
    state.require_normalized()?;
    if opts.starts == 0 {
        return Err(Error::InvalidParameter("starts must be at least 1".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {}", opts.tol)));
    }
    let dims = state.dims().to_vec();
    let runs: Vec<Run> = (0..=opts.starts)
        .into_par_iter()
        .map(|start| {
            let init = if start == 0 {
                ProductState::basis(&dims, &dominant_basis_index(state))
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(start as u64);
                ProductState::random(&dims, &mut rng)
            };
            run_from(state, init, opts.tol, opts.max_iter)
        })
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.lambda > runs[best].lambda {
            best = i;
        }
    }
    let win = runs.into_iter().nth(best).expect("at least one start");
    Ok(GeometricResult::new(win.lambda, win.product, opts.starts + 1, win.iterations, win.converged, false))
}

/// Geometric measure with default optimizer settings.
pub fn geometric_measure(state: &PureState) -> Result<f64> {
    Ok(lambda_max_estimate(state, &GeometricOptions::default())?.e_g)
}

/// Exact `Λ_max` of a bipartite state: the largest squared singular value of
/// the `d₁ × d₂` amplitude matrix.
pub fn lambda_max_bipartite_exact(state: &PureState) -> Result<GeometricResult> {
    if state.parties() != 2 {
        return Err(Error::InvalidParameter(format!(
            "bipartite oracle needs 2 parties, got {}",
            state.parties()
        )));
    }
    state.require_normalized()?;
    let (d1, d2) = (state.dims()[0], state.dims()[1]);
    let mut m = DMatrix::<Complex64>::zeros(d1, d2);
    state.for_each_nonzero(|index, amp| m[(index[0], index[1])] = amp);
    let svd = m.svd(true, true);
    let (top, sigma) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s > acc.1 { (i, s) } else { acc });
    let u = svd.u.as_ref().expect("requested u");
    let v_t = svd.v_t.as_ref().expect("requested v_t");
    // M = Σ σ u v†, so φ₁ = u and φ₂ = conj(v) give ⟨φ|ψ⟩ = σ.
    let left: Vec<Complex64> = u.column(top).iter().copied().collect();
    let right: Vec<Complex64> = v_t.row(top).iter().copied().collect();
    let optimizer = ProductState { factors: vec![left, right] };
    Ok(GeometricResult::new(sigma * sigma, optimizer, 0, 0, true, true))
}

/// Largest `|⟨φ|ψ⟩|²` over `samples` Haar-random product states. A lower
/// bound on `Λ_max`; zero when `samples` is zero.
pub fn lambda_max_bruteforce(state: &PureState, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = state.dims().to_vec();
    (0..samples)
        .map(|_| ProductState::random(&dims, &mut rng).overlap(state).norm_sqr())
        .fold(0.0, f64::max)
}
