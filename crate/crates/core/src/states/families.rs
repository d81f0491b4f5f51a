//! Canonical state families and seeded random inputs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::state::{basis_size, PureState, DENSE_LIMIT};
use crate::error::{Error, Result};

/// Named states used throughout the examples.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFamily {
    /// `(|0…0⟩ + … + |d−1…d−1⟩)/√d` on `parties` parties of dimension `d`.
    Ghz { parties: usize, local_dim: usize },
    /// `(|001⟩ + |010⟩ + |100⟩)/√3`. Only the three-qubit W state is defined.
    W3,
    /// `√(1/10)|1⟩^⊗N ± √(9/10)·(|2⟩^⊗N + … + |d⟩^⊗N)/√(d−1)` with labels
    /// `1..=d` stored as indices `0..d`. `minus` selects the `−` sign.
    Example2 { parties: usize, d: usize, minus: bool },
    /// Three parties of dimension `d+1`: `|000⟩` when `second` is false,
    /// otherwise `√(1−ε)|000⟩ + √(ε/d)(|111⟩ + … + |ddd⟩)`.
    Example3 { epsilon: f64, d: usize, second: bool },
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn aligned(parties: usize, label: usize) -> Vec<usize> {
    vec![label; parties]
}

/// Builds the exact normalized state of a family, using sparse storage.
pub fn make_state(kind: &StateFamily) -> Result<PureState> {
    match *kind {
        StateFamily::Ghz { parties, local_dim } => {
            if parties == 0 || local_dim == 0 {
                return Err(Error::InvalidParameter(format!(
                    "GHZ needs parties >= 1 and local_dim >= 1, got {parties}, {local_dim}"
                )));
            }
            let amp = c((1.0 / local_dim as f64).sqrt());
            PureState::sparse(vec![local_dim; parties], (0..local_dim).map(|k| (aligned(parties, k), amp)))
        }
        StateFamily::W3 => {
            let amp = c((1.0f64 / 3.0).sqrt());
            PureState::sparse(
                vec![2; 3],
                [(vec![0, 0, 1], amp), (vec![0, 1, 0], amp), (vec![1, 0, 0], amp)],
            )
        }
        StateFamily::Example2 { parties, d, minus } => {
            if parties == 0 || d < 2 {
                return Err(Error::InvalidParameter(format!(
                    "Example 2 states need N >= 1 and d >= 2, got N={parties}, d={d}"
                )));
            }
            let head = c(0.1f64.sqrt());
            let sign = if minus { -1.0 } else { 1.0 };
            let tail = c(sign * 0.9f64.sqrt() / ((d - 1) as f64).sqrt());
            let entries = std::iter::once((aligned(parties, 0), head))
                .chain((1..d).map(|k| (aligned(parties, k), tail)));
            PureState::sparse(vec![d; parties], entries)
        }
        StateFamily::Example3 { epsilon, d, second } => {
            if !(0.0..=1.0).contains(&epsilon) || d < 1 {
                return Err(Error::InvalidParameter(format!(
                    "Example 3 states need epsilon in [0,1] and d >= 1, got {epsilon}, {d}"
                )));
            }
            let dims = vec![d + 1; 3];
            if !second {
                return PureState::basis(dims, vec![0; 3]);
            }
            let tail = c((epsilon / d as f64).sqrt());
            let entries = std::iter::once((vec![0; 3], c((1.0 - epsilon).sqrt())))
                .chain((1..=d).map(|k| (aligned(3, k), tail)));
            PureState::sparse(dims, entries)
        }
    }
}

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized complex Gaussian vector: Haar-distributed on the unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random dense state drawn from `rng`.
pub fn random_state_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<PureState> {
    let size = basis_size(dims);
    if size > DENSE_LIMIT {
        return Err(Error::ResourceLimit { amplitudes: size, limit: DENSE_LIMIT });
    }
    PureState::dense(dims.to_vec(), random_unit_vector(size as usize, rng))
}

/// Haar-random dense state, deterministic per seed.
pub fn random_state(dims: &[usize], seed: u64) -> Result<PureState> {
    random_state_with(dims, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase fix on R's
/// diagonal.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random full-rank density matrix `GG†/tr(GG†)` from a Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    let mut rho = rho / tr;
    // Symmetrize away rounding so hermiticity holds to the last bit.
    let adj = rho.adjoint();
    rho = (rho + adj) * c(0.5);
    rho
}
