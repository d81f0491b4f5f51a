use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::PureState;
use crate::error::{Error, Result};

/// Eigenvalues in `[-1e-10, 1e-12)` are treated as exact zeros.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Hermiticity, trace and positivity tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// Single-party von Neumann entropies of a pure state, in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfile {
    pub per_party: Vec<f64>,
    /// Their sum: the q-squashed entanglement of the pure state.
    pub total: f64,
}

/// Reduced density matrix of party `keep`, tracing out every other party.
///
/// Sparse states are reduced by grouping nonzeros on the labels of the
/// traced-out parties; the dense vector is never built.
pub fn reduced_density_matrix(state: &PureState, keep: usize) -> Result<DMatrix<Complex64>> {
    state.require_normalized()?;
    let n = state.parties();
    if keep >= n {
        return Err(Error::IndexOutOfRange { index: keep, len: n });
    }
    let dims = state.dims();
    let d = dims[keep];
    let mut rho = DMatrix::<Complex64>::zeros(d, d);

    if let Some(v) = state.dense_slice() {
        let inner: usize = dims[keep + 1..].iter().product();
        let outer: usize = dims[..keep].iter().product();
        for o in 0..outer {
            for i in 0..inner {
                let at = |j: usize| v[(o * d + j) * inner + i];
                for r in 0..d {
                    let x = at(r);
                    if x == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for c in 0..d {
                        rho[(r, c)] += x * at(c).conj();
                    }
                }
            }
        }
    } else {
        let mut groups: BTreeMap<Vec<usize>, Vec<(usize, Complex64)>> = BTreeMap::new();
        state.for_each_nonzero(|index, amp| {
            let mut rest = index.to_vec();
            let label = rest.remove(keep);
            groups.entry(rest).or_default().push((label, amp));
        });
        for group in groups.values() {
            for &(r, x) in group {
                for &(c, y) in group {
                    rho[(r, c)] += x * y.conj();
                }
            }
        }
    }
    Ok(rho)
}

/// Eigenvalues of a density matrix after validation and clamping.
pub fn density_spectrum(rho: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if !rho.is_square() || rho.nrows() == 0 {
        return Err(Error::InvalidDensityMatrix(format!("shape {}x{}", rho.nrows(), rho.ncols())));
    }
    let asym = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if asym > DENSITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!("not hermitian (deviation {asym:e})")));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
    }
    let eig = SymmetricEigen::new(rho.clone());
    let mut out = Vec::with_capacity(eig.eigenvalues.len());
    for &lambda in eig.eigenvalues.iter() {
        if lambda < -DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {lambda:e}")));
        }
        out.push(if lambda < EIGEN_CLAMP { 0.0 } else { lambda });
    }
    Ok(out)
}

/// Shannon entropy in bits of a probability vector, with `0·log 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let s: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
    s.max(0.0)
}

/// `S(ρ) = −Σ λ log₂ λ`.
pub fn von_neumann_entropy(rho: &DMatrix<Complex64>) -> Result<f64> {
    Ok(shannon_entropy(&density_spectrum(rho)?))
}

pub fn entropy_profile(state: &PureState) -> Result<EntropyProfile> {
    let per_party = (0..state.parties())
        .map(|k| reduced_density_matrix(state, k).and_then(|rho| von_neumann_entropy(&rho)))
        .collect::<Result<Vec<_>>>()?;
    let total = per_party.iter().sum();
    Ok(EntropyProfile { per_party, total })
}
