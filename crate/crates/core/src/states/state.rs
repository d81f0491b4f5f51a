use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|‖ψ‖² − 1|` for a state to count as normalized.
pub const NORM_TOL: f64 = 1e-10;

/// Largest number of amplitudes a dense state may hold (2^24).
pub const DENSE_LIMIT: u128 = 1 << 24;

/// Below this norm a superposition is treated as fully cancelled.
pub const DEGENERATE_NORM: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// Row-major amplitudes, party 0 is the most significant digit.
    Dense(Vec<Complex64>),
    /// Explicit nonzeros keyed by multi-index.
    Sparse(BTreeMap<Vec<usize>, Complex64>),
}

/// A multipartite pure state over parties with local dimensions `dims`.
///
/// Amplitudes are stored either densely (one entry per basis label, row-major
/// with party 0 as the most significant digit) or sparsely (explicit nonzeros
/// keyed by multi-index). Every operation gives the same answer on both.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    storage: Storage,
    normalized: bool,
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidParameter("a state needs at least one party".into()));
    }
    if let Some(k) = dims.iter().position(|&d| d == 0) {
        return Err(Error::InvalidParameter(format!("party {k} has dimension 0")));
    }
    Ok(())
}

/// Number of basis labels, `Π dims[k]`, saturating at `u128::MAX`.
pub fn basis_size(dims: &[usize]) -> u128 {
    dims.iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX)
}

fn dense_len(dims: &[usize]) -> Result<usize> {
    let size = basis_size(dims);
    if size > DENSE_LIMIT {
        return Err(Error::ResourceLimit { amplitudes: size, limit: DENSE_LIMIT });
    }
    Ok(size as usize)
}

fn linear_index(dims: &[usize], index: &[usize]) -> usize {
    index.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

fn squared_norm<'a>(amps: impl Iterator<Item = &'a Complex64>) -> f64 {
    amps.map(|a| a.norm_sqr()).sum()
}

/// Advances a row-major odometer; returns false once it wraps around.
fn next_index(dims: &[usize], index: &mut [usize]) -> bool {
    for k in (0..dims.len()).rev() {
        index[k] += 1;
        if index[k] < dims[k] {
            return true;
        }
        index[k] = 0;
    }
    false
}

impl PureState {
    /// Dense state from a full amplitude vector of length `Π dims`.
    pub fn dense(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dims(&dims)?;
        let len = dense_len(&dims)?;
        if amplitudes.len() != len {
            return Err(Error::InvalidParameter(format!(
                "expected {len} amplitudes for dims {dims:?}, got {}",
                amplitudes.len()
            )));
        }
        let normalized = (squared_norm(amplitudes.iter()) - 1.0).abs() <= NORM_TOL;
        Ok(Self { dims, storage: Storage::Dense(amplitudes), normalized })
    }

    /// Sparse state from `(multi-index, amplitude)` pairs. Repeated indices
    /// are summed; exact zeros are dropped.
    pub fn sparse<I>(dims: Vec<usize>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Complex64)>,
    {
        check_dims(&dims)?;
        let mut map: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        for (index, amp) in entries {
            if index.len() != dims.len() {
                return Err(Error::InvalidParameter(format!(
                    "multi-index {index:?} has {} labels, expected {}",
                    index.len(),
                    dims.len()
                )));
            }
            if let Some(k) = index.iter().zip(&dims).position(|(&i, &d)| i >= d) {
                return Err(Error::InvalidParameter(format!(
                    "label {} of party {k} exceeds dimension {}",
                    index[k], dims[k]
                )));
            }
            *map.entry(index).or_default() += amp;
        }
        map.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        let normalized = (squared_norm(map.values()) - 1.0).abs() <= NORM_TOL;
        Ok(Self { dims, storage: Storage::Sparse(map), normalized })
    }

    /// The computational basis product state `|index⟩`.
    pub fn basis(dims: Vec<usize>, index: Vec<usize>) -> Result<Self> {
        Self::sparse(dims, [(index, Complex64::new(1.0, 0.0))])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    /// Number of stored amplitudes (all of them for dense storage).
    pub fn stored_len(&self) -> usize {
        match &self.storage {
            Storage::Dense(v) => v.len(),
            Storage::Sparse(m) => m.len(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match &self.storage {
            Storage::Dense(v) => squared_norm(v.iter()),
            Storage::Sparse(m) => squared_norm(m.values()),
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sq: self.norm_sqr() })
        }
    }

    /// Amplitude at a multi-index; zero when not stored.
    pub fn amplitude(&self, index: &[usize]) -> Complex64 {
        if index.len() != self.dims.len() || index.iter().zip(&self.dims).any(|(&i, &d)| i >= d) {
            return Complex64::new(0.0, 0.0);
        }
        match &self.storage {
            Storage::Dense(v) => v[linear_index(&self.dims, index)],
            Storage::Sparse(m) => m.get(index).copied().unwrap_or_default(),
        }
    }

    /// Visits every nonzero amplitude in ascending multi-index order.
    pub fn for_each_nonzero<F: FnMut(&[usize], Complex64)>(&self, mut f: F) {
        match &self.storage {
            Storage::Dense(v) => {
                let mut index = vec![0; self.dims.len()];
                for &amp in v {
                    if amp != Complex64::new(0.0, 0.0) {
                        f(&index, amp);
                    }
                    next_index(&self.dims, &mut index);
                }
            }
            Storage::Sparse(m) => {
                for (index, &amp) in m {
                    f(index, amp);
                }
            }
        }
    }

    /// Nonzero entries as owned pairs, in ascending multi-index order.
    pub fn nonzeros(&self) -> Vec<(Vec<usize>, Complex64)> {
        let mut out = Vec::new();
        self.for_each_nonzero(|i, a| out.push((i.to_vec(), a)));
        out
    }

    /// Full amplitude vector; fails above [`DENSE_LIMIT`] amplitudes.
    pub fn to_dense_vec(&self) -> Result<Vec<Complex64>> {
        match &self.storage {
            Storage::Dense(v) => Ok(v.clone()),
            Storage::Sparse(m) => {
                let mut v = vec![Complex64::new(0.0, 0.0); dense_len(&self.dims)?];
                for (index, &amp) in m {
                    v[linear_index(&self.dims, index)] = amp;
                }
                Ok(v)
            }
        }
    }

    pub fn to_dense(&self) -> Result<Self> {
        Ok(Self {
            dims: self.dims.clone(),
            storage: Storage::Dense(self.to_dense_vec()?),
            normalized: self.normalized,
        })
    }

    pub fn to_sparse(&self) -> Self {
        match &self.storage {
            Storage::Sparse(_) => self.clone(),
            Storage::Dense(_) => {
                let map = self.nonzeros().into_iter().collect();
                Self { dims: self.dims.clone(), storage: Storage::Sparse(map), normalized: self.normalized }
            }
        }
    }

    pub(crate) fn dense_slice(&self) -> Option<&[Complex64]> {
        match &self.storage {
            Storage::Dense(v) => Some(v),
            Storage::Sparse(_) => None,
        }
    }

    /// Rescales to unit norm, returning the state and its original norm.
    pub fn normalize(&self) -> Result<(Self, f64)> {
        let norm = self.norm();
        if norm < DEGENERATE_NORM {
            return Err(Error::DegenerateSuperposition { norm });
        }
        let scale = 1.0 / norm;
        let storage = match &self.storage {
            Storage::Dense(v) => Storage::Dense(v.iter().map(|a| a * scale).collect()),
            Storage::Sparse(m) => Storage::Sparse(m.iter().map(|(i, a)| (i.clone(), a * scale)).collect()),
        };
        let mut state = Self { dims: self.dims.clone(), storage, normalized: false };
        state.normalized = (state.norm_sqr() - 1.0).abs() <= NORM_TOL;
        Ok((state, norm))
    }

    /// Applies a `d × d` matrix to one party (typically a local unitary).
    pub fn apply_local(&self, party: usize, op: &nalgebra::DMatrix<Complex64>) -> Result<Self> {
        let n = self.parties();
        if party >= n {
            return Err(Error::IndexOutOfRange { index: party, len: n });
        }
        let d = self.dims[party];
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::InvalidParameter(format!(
                "operator is {}x{}, party {party} has dimension {d}",
                op.nrows(),
                op.ncols()
            )));
        }
        let mut out: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        self.for_each_nonzero(|index, amp| {
            let mut target = index.to_vec();
            for row in 0..d {
                let coeff = op[(row, index[party])];
                if coeff != Complex64::new(0.0, 0.0) {
                    target[party] = row;
                    *out.entry(target.clone()).or_default() += coeff * amp;
                }
            }
        });
        let sparse = Self::sparse(self.dims.clone(), out)?;
        if self.is_sparse() {
            Ok(sparse)
        } else {
            sparse.to_dense()
        }
    }
}

fn check_compatible(lhs: &PureState, rhs: &PureState) -> Result<()> {
    if lhs.dims != rhs.dims {
        return Err(Error::IncompatibleStates(format!("dims {:?} vs {:?}", lhs.dims, rhs.dims)));
    }
    Ok(())
}

/// `⟨lhs|rhs⟩ = Σ conj(lhs[i]) · rhs[i]`.
pub fn inner_product(lhs: &PureState, rhs: &PureState) -> Result<Complex64> {
    check_compatible(lhs, rhs)?;
    let mut acc = Complex64::new(0.0, 0.0);
    match (&lhs.storage, &rhs.storage) {
        (Storage::Dense(l), Storage::Dense(r)) => {
            for (x, y) in l.iter().zip(r) {
                acc += x.conj() * y;
            }
        }
        (Storage::Sparse(l), Storage::Sparse(r)) => {
            // Either side gives the same sorted intersection; walk the smaller.
            if l.len() <= r.len() {
                for (i, x) in l {
                    if let Some(y) = r.get(i) {
                        acc += x.conj() * y;
                    }
                }
            } else {
                for (i, y) in r {
                    if let Some(x) = l.get(i) {
                        acc += x.conj() * y;
                    }
                }
            }
        }
        (Storage::Sparse(l), Storage::Dense(r)) => {
            for (i, x) in l {
                acc += x.conj() * r[linear_index(&lhs.dims, i)];
            }
        }
        (Storage::Dense(l), Storage::Sparse(r)) => {
            for (i, y) in r {
                acc += l[linear_index(&lhs.dims, i)].conj() * y;
            }
        }
    }
    Ok(acc)
}

/// Coefficients `a₁…aₙ` with unit-norm component states of equal dims.
#[derive(Debug, Clone)]
pub struct SuperpositionSpec {
    coefficients: Vec<Complex64>,
    components: Vec<PureState>,
}

impl SuperpositionSpec {
    /// Validates `Σ|aᵢ|² = 1` and that every component is normalized with
    /// the same dims.
    pub fn new(coefficients: Vec<Complex64>, components: Vec<PureState>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("superposition needs at least one component".into()));
        }
        if coefficients.len() != components.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for {} components",
                coefficients.len(),
                components.len()
            )));
        }
        let weight: f64 = coefficients.iter().map(|a| a.norm_sqr()).sum();
        if (weight - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("Σ|a_i|² = {weight}, expected 1")));
        }
        for c in &components {
            check_compatible(&components[0], c)?;
            c.require_normalized()?;
        }
        Ok(Self { coefficients, components })
    }

    /// Two-term superposition `a|ψ₁⟩ + b|ψ₂⟩`.
    pub fn pair(a: Complex64, psi1: PureState, b: Complex64, psi2: PureState) -> Result<Self> {
        Self::new(vec![a, b], vec![psi1, psi2])
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn components(&self) -> &[PureState] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `‖Σaᵢψᵢ‖²` from the Gram matrix, without building the sum.
    pub fn norm_sqr(&self) -> Result<f64> {
        let mut total = 0.0;
        for (k, (ak, pk)) in self.coefficients.iter().zip(&self.components).enumerate() {
            total += ak.norm_sqr();
            for (al, pl) in self.coefficients.iter().zip(&self.components).skip(k + 1) {
                total += 2.0 * (ak.conj() * al * inner_product(pk, pl)?).re;
            }
        }
        Ok(total)
    }
}

/// Builds `Σaᵢ|ψᵢ⟩ / ‖Σaᵢ|ψᵢ⟩‖` and returns it with the pre-normalization
/// norm. The result is sparse when every component is sparse.
pub fn superpose(spec: &SuperpositionSpec) -> Result<(PureState, f64)> {
    let dims = spec.components[0].dims.clone();
    let all_sparse = spec.components.iter().all(PureState::is_sparse);
    let raw = if all_sparse {
        let mut map: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
        for (a, psi) in spec.coefficients.iter().zip(&spec.components) {
            psi.for_each_nonzero(|i, amp| *map.entry(i.to_vec()).or_default() += a * amp);
        }
        PureState::sparse(dims, map)?
    } else {
        let mut v = vec![Complex64::new(0.0, 0.0); dense_len(&dims)?];
        for (a, psi) in spec.coefficients.iter().zip(&spec.components) {
            match &psi.storage {
                Storage::Dense(p) => v.iter_mut().zip(p).for_each(|(x, y)| *x += a * y),
                Storage::Sparse(m) => {
                    for (i, y) in m {
                        v[linear_index(&dims, i)] += a * y;
                    }
                }
            }
        }
        PureState::dense(dims, v)?
    };
    raw.normalize()
}
