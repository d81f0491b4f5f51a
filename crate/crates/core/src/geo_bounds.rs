//! Bounds on the geometric measure of a superposition in terms of the
//! geometric measures of its components.
//!
//! Every bound here is divided through by `‖Σaᵢψᵢ‖²`, so each value bounds
//! `E_g(Γ)` of the normalized superposition directly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometric::{lambda_max_estimate, GeometricOptions};
use crate::states::{inner_product, superpose, SuperpositionSpec, DEGENERATE_NORM, NORM_TOL};

/// Denominators of the two upper-bound branches below this are treated as zero.
pub const BRANCH_DENOM_TOL: f64 = 1e-9;

/// The scalars a two-term bound depends on: `a`, `b` and `⟨ψ₁|ψ₂⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionPair {
    pub a: Complex64,
    pub b: Complex64,
    pub overlap: Complex64,
}

impl SuperpositionPair {
    pub fn new(a: Complex64, b: Complex64, overlap: Complex64) -> Self {
        Self { a, b, overlap }
    }

    pub fn from_spec(spec: &SuperpositionSpec) -> Result<Self> {
        if spec.len() != 2 {
            return Err(Error::InvalidParameter(format!("expected 2 components, got {}", spec.len())));
        }
        let (c, p) = (spec.coefficients(), spec.components());
        Ok(Self::new(c[0], c[1], inner_product(&p[0], &p[1])?))
    }

    /// `‖aψ₁ + bψ₂‖²` for unit-norm components.
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + 2.0 * self.cross_re()
    }

    /// `Re(a* b ⟨ψ₁|ψ₂⟩)`.
    pub fn cross_re(&self) -> f64 {
        (self.a.conj() * self.b * self.overlap).re
    }

    /// Same superposition with `a, b` rescaled so that `‖aψ₁ + bψ₂‖ = 1`.
    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.checked_norm_sqr()?.sqrt();
        Ok(Self::new(self.a / norm, self.b / norm, self.overlap))
    }

    pub(crate) fn checked_norm_sqr(&self) -> Result<f64> {
        let norm_sq = self.norm_sqr();
        if norm_sq.max(0.0).sqrt() < DEGENERATE_NORM {
            return Err(Error::DegenerateSuperposition { norm: norm_sq.max(0.0).sqrt() });
        }
        Ok(norm_sq)
    }

    pub(crate) fn require_unit_weights(&self) -> Result<()> {
        let w = self.a.norm_sqr() + self.b.norm_sqr();
        if (w - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("|a|² + |b|² = {w}, expected 1")));
        }
        Ok(())
    }
}

fn check_measure(name: &str, e: f64) -> Result<()> {
    if !(-NORM_TOL..=1.0 + NORM_TOL).contains(&e) {
        return Err(Error::InvalidParameter(format!("{name} = {e} is outside [0, 1]")));
    }
    Ok(())
}

fn check_inputs(pair: &SuperpositionPair, eg1: f64, eg2: f64) -> Result<f64> {
    pair.require_unit_weights()?;
    check_measure("eg1", eg1)?;
    check_measure("eg2", eg2)?;
    pair.checked_norm_sqr()
}

fn overlap_root(eg: f64) -> f64 {
    (1.0 - eg).max(0.0).sqrt()
}

/// Lower bound
/// `max{|a|²E₁ + |b|²E₂ + 2[Re(a*b⟨ψ₁|ψ₂⟩) − |ab|√(1−E₁)√(1−E₂)], 0} / ‖aψ₁+bψ₂‖²`.
/// Saturated when `ψ₁ = ψ₂` and `a, b` are real and positive.
pub fn thm1_lower(pair: &SuperpositionPair, eg1: f64, eg2: f64) -> Result<f64> {
    let norm_sq = check_inputs(pair, eg1, eg2)?;
    let (a, b) = (pair.a.norm(), pair.b.norm());
    let raw = a * a * eg1 + b * b * eg2 + 2.0 * (pair.cross_re() - a * b * overlap_root(eg1) * overlap_root(eg2));
    Ok(raw.max(0.0) / norm_sq)
}

/// The looser lower bound
/// `[|a(a+b)|E₁ + |b(a+b)|E₂ + 2(Re(a*b⟨ψ₁|ψ₂⟩) − |ab|)] / ‖aψ₁+bψ₂‖²`,
/// left unclamped.
pub fn weak_lower(pair: &SuperpositionPair, eg1: f64, eg2: f64) -> Result<f64> {
    let norm_sq = check_inputs(pair, eg1, eg2)?;
    let sum = pair.a + pair.b;
    let raw = (pair.a * sum).norm() * eg1 + (pair.b * sum).norm() * eg2
        + 2.0 * (pair.cross_re() - pair.a.norm() * pair.b.norm());
    Ok(raw / norm_sq)
}

/// The two branches of the upper bound and their capped minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm2Upper {
    /// `A / ‖·‖²`, absent when `|‖aψ₁+bψ₂‖ − b|` vanishes.
    pub upper_a: Option<f64>,
    /// `B / ‖·‖²`, absent when `|‖aψ₁+bψ₂‖ − a|` vanishes.
    pub upper_b: Option<f64>,
    /// `min{A, B, 1}` over the applicable entries, before the clamp at 0.
    pub raw: f64,
    /// `raw` clamped below at 0.
    pub upper: f64,
}

/// One branch of the upper bound:
/// `{|x|²E_x − |y|·|N−y|·E_y + 2[Re(x*y⟨ψ_x|ψ_y⟩) + |y|² + |y|N]} / |N−y|`,
/// where `N = ‖aψ₁+bψ₂‖`. `A` is `(x, y) = (a, b)`; `B` exchanges the roles.
fn upper_branch(x: Complex64, y: Complex64, cross_re: f64, norm: f64, e_x: f64, e_y: f64) -> Option<f64> {
    let denom = (Complex64::new(norm, 0.0) - y).norm();
    if denom < BRANCH_DENOM_TOL {
        return None;
    }
    let (xm, ym) = (x.norm(), y.norm());
    Some((xm * xm * e_x - ym * denom * e_y + 2.0 * (cross_re + ym * ym + ym * norm)) / denom)
}

pub fn thm2_upper(pair: &SuperpositionPair, eg1: f64, eg2: f64) -> Result<Thm2Upper> {
    let norm_sq = check_inputs(pair, eg1, eg2)?;
    let norm = norm_sq.sqrt();
    // Re(a b* ⟨ψ₂|ψ₁⟩) is the conjugate of a* b ⟨ψ₁|ψ₂⟩, so both branches share it.
    let cross = pair.cross_re();
    let upper_a = upper_branch(pair.a, pair.b, cross, norm, eg1, eg2).map(|v| v / norm_sq);
    let upper_b = upper_branch(pair.b, pair.a, cross, norm, eg2, eg1).map(|v| v / norm_sq);
    let raw = [upper_a, upper_b].into_iter().flatten().fold(1.0, f64::min);
    Ok(Thm2Upper { upper_a, upper_b, raw, upper: raw.max(0.0) })
}

/// n-term lower bound
/// `max{Σ|aᵢ|²Eᵢ + Σ_{k≠l}[a_k* a_l⟨ψ_k|ψ_l⟩ − |a_k a_l|√(1−E_k)√(1−E_l)], 0} / ‖Σaᵢψᵢ‖²`.
///
/// The ordered-pair sum is real; its imaginary residue is checked before the
/// real part, accumulated over `k < l` as `2 Re(…)`, is used. For two terms
/// this performs exactly the same floating-point operations as
/// [`thm1_lower`].
pub fn proposition_lower(spec: &SuperpositionSpec, egs: &[f64]) -> Result<f64> {
    let n = spec.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 components, got {n}")));
    }
    if egs.len() != n {
        return Err(Error::InvalidParameter(format!("{} measures for {n} components", egs.len())));
    }
    for (i, &e) in egs.iter().enumerate() {
        check_measure(&format!("eg{}", i + 1), e)?;
    }
    let (coeffs, comps) = (spec.coefficients(), spec.components());
    let mut overlaps = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        for l in 0..n {
            if k != l {
                overlaps[k][l] = inner_product(&comps[k], &comps[l])?;
            }
        }
    }

    let mut imag = 0.0;
    for k in 0..n {
        for l in 0..n {
            if k != l {
                imag += (coeffs[k].conj() * coeffs[l] * overlaps[k][l]).im;
            }
        }
    }
    if imag.abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!("cross term has imaginary residue {imag:e}")));
    }

    let mut diag = 0.0;
    let mut norm_sq = 0.0;
    for (a, &e) in coeffs.iter().zip(egs) {
        let m = a.norm();
        diag += m * m * e;
        norm_sq += a.norm_sqr();
    }
    let mut cross = 0.0;
    for k in 0..n {
        for l in k + 1..n {
            let re = (coeffs[k].conj() * coeffs[l] * overlaps[k][l]).re;
            cross += 2.0 * (re - coeffs[k].norm() * coeffs[l].norm() * overlap_root(egs[k]) * overlap_root(egs[l]));
            norm_sq += 2.0 * re;
        }
    }
    if norm_sq.max(0.0).sqrt() < DEGENERATE_NORM {
        return Err(Error::DegenerateSuperposition { norm: norm_sq.max(0.0).sqrt() });
    }
    Ok((diag + cross).max(0.0) / norm_sq)
}

/// All geometric-measure bounds for one two-term superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoBoundReport {
    pub norm_sq: f64,
    pub lower_thm1: f64,
    pub lower_weak: f64,
    pub upper_a: Option<f64>,
    pub upper_b: Option<f64>,
    pub upper_thm2: f64,
    /// Optimizer estimate of `E_g(Γ)`; an over-estimate of the true value.
    pub e_g_estimate: f64,
}

impl GeoBoundReport {
    pub fn from_measures(pair: &SuperpositionPair, eg1: f64, eg2: f64, e_g_estimate: f64) -> Result<Self> {
        let upper = thm2_upper(pair, eg1, eg2)?;
        Ok(Self {
            norm_sq: pair.norm_sqr(),
            lower_thm1: thm1_lower(pair, eg1, eg2)?,
            lower_weak: weak_lower(pair, eg1, eg2)?,
            upper_a: upper.upper_a,
            upper_b: upper.upper_b,
            upper_thm2: upper.upper,
            e_g_estimate,
        })
    }

    /// Estimates the component and superposition measures with the
    /// alternating optimizer, then evaluates every bound.
    pub fn compute(spec: &SuperpositionSpec, opts: &GeometricOptions) -> Result<Self> {
        let pair = SuperpositionPair::from_spec(spec)?;
        let comps = spec.components();
        let eg1 = lambda_max_estimate(&comps[0], opts)?.e_g;
        let eg2 = lambda_max_estimate(&comps[1], opts)?.e_g;
        let (gamma, _) = superpose(spec)?;
        let eg = lambda_max_estimate(&gamma, opts)?.e_g;
        Self::from_measures(&pair, eg1, eg2, eg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_state, PureState, StateFamily};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ghz_w(a: f64) -> SuperpositionPair {
        SuperpositionPair::new(c(a), c((1.0 - a * a).max(0.0).sqrt()), c(0.0))
    }

    const E_GHZ: f64 = 0.5;
    const E_W: f64 = 5.0 / 9.0;

    #[test]
    fn thm1_ghz_w_points() {
        assert!((thm1_lower(&ghz_w(1.0), E_GHZ, E_W).unwrap() - 0.5).abs() < 1e-15);
        assert!((thm1_lower(&ghz_w(0.0), E_GHZ, E_W).unwrap() - 5.0 / 9.0).abs() < 1e-15);
        // 5/9 − 1/36 − √2/3
        let expect = 5.0 / 9.0 - 1.0 / 36.0 - 2f64.sqrt() / 3.0;
        let got = thm1_lower(&ghz_w(FRAC_1_SQRT_2), E_GHZ, E_W).unwrap();
        assert!((got - expect).abs() < 1e-15, "{got} vs {expect}");
        assert!((got - 0.0564).abs() < 1e-4);
    }

    #[test]
    fn thm1_saturates_for_identical_components() {
        let pair = SuperpositionPair::new(c(0.6), c(0.8), c(1.0));
        for e in [0.0, 0.2, 0.5, 5.0 / 9.0, 0.9] {
            assert!((thm1_lower(&pair, e, e).unwrap() - e).abs() < 1e-15);
        }
    }

    #[test]
    fn weak_lower_points() {
        assert_eq!(weak_lower(&ghz_w(1.0), E_GHZ, E_W).unwrap(), E_GHZ);
        // a = b = 1/√2, orthogonal: |a(a+b)| = |b(a+b)| = 1, so 1/2 + 5/9 − 1.
        let got = weak_lower(&ghz_w(FRAC_1_SQRT_2), E_GHZ, E_W).unwrap();
        assert!((got - 1.0 / 18.0).abs() < 1e-15, "{got}");
        // Identical components: (2E + 2(1/2 − 1/2)) / 2.
        let same = SuperpositionPair::new(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(1.0));
        assert!((weak_lower(&same, 0.3, 0.3).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn thm2_branches() {
        // Only the B branch survives at a = 0 and gives 5/9.
        let u = thm2_upper(&ghz_w(0.0), E_GHZ, E_W).unwrap();
        assert_eq!(u.upper_a, None);
        assert!((u.upper_b.unwrap() - 5.0 / 9.0).abs() < 1e-15);
        assert!((u.upper - 5.0 / 9.0).abs() < 1e-15);

        // At a = 1 the B denominator vanishes and A = 1/2.
        let u = thm2_upper(&ghz_w(1.0), E_GHZ, E_W).unwrap();
        assert_eq!(u.upper_b, None);
        assert!((u.upper_a.unwrap() - 0.5).abs() < 1e-15);

        for i in 0..=100 {
            let u = thm2_upper(&ghz_w(i as f64 / 100.0), E_GHZ, E_W).unwrap();
            assert!(u.upper <= 1.0);
        }
    }

    #[test]
    fn thm2_branch_b_matches_first_printed_expression() {
        let a: f64 = 0.3;
        let printed = (35.0 / 18.0 * a * a + 1.5 * a + 5.0 / 9.0) / (1.0 - a);
        let u = thm2_upper(&ghz_w(a), E_GHZ, E_W).unwrap();
        assert!((u.upper_b.unwrap() - printed).abs() < 1e-12);
        let b = (1.0 - a * a).sqrt();
        let printed_a = (-37.0 / 18.0 * a * a + 13.0 / 9.0 * b + 23.0 / 9.0) / (1.0 - b);
        assert!((u.upper_a.unwrap() - printed_a).abs() < 1e-9 * printed_a);
    }

    #[test]
    fn input_validation() {
        assert!(thm1_lower(&SuperpositionPair::new(c(1.0), c(1.0), c(0.0)), 0.5, 0.5).is_err());
        assert!(thm1_lower(&ghz_w(0.5), 1.5, 0.5).is_err());
        let cancel = SuperpositionPair::new(c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), c(1.0));
        assert!(matches!(thm1_lower(&cancel, 0.1, 0.1), Err(Error::DegenerateSuperposition { .. })));
        assert!(matches!(thm2_upper(&cancel, 0.1, 0.1), Err(Error::DegenerateSuperposition { .. })));
    }

    #[test]
    fn proposition_reduces_and_clamps() {
        let ghz = make_state(&StateFamily::Ghz { parties: 3, local_dim: 2 }).unwrap();
        let w = make_state(&StateFamily::W3).unwrap();
        let a = 0.35;
        let spec = SuperpositionSpec::pair(c(a), ghz, c((1.0f64 - a * a).sqrt()), w).unwrap();
        let pair = SuperpositionPair::from_spec(&spec).unwrap();
        assert_eq!(
            proposition_lower(&spec, &[E_GHZ, E_W]).unwrap().to_bits(),
            thm1_lower(&pair, E_GHZ, E_W).unwrap().to_bits()
        );

        let t = (1.0f64 / 3.0).sqrt();
        let basis: Vec<PureState> =
            (0..3).map(|k| PureState::basis(vec![3, 3], vec![k, k]).unwrap()).collect();
        let orth = SuperpositionSpec::new(vec![c(t); 3], basis).unwrap();
        assert_eq!(proposition_lower(&orth, &[0.0; 3]).unwrap(), 0.0);

        let psi = make_state(&StateFamily::W3).unwrap();
        let same = SuperpositionSpec::new(
            vec![c(0.5), c(0.5), c(FRAC_1_SQRT_2)],
            vec![psi.clone(), psi.clone(), psi],
        )
        .unwrap();
        let got = proposition_lower(&same, &[E_W; 3]).unwrap();
        assert!((got - E_W).abs() < 1e-14, "{got}");

        assert!(proposition_lower(&same, &[E_W; 2]).is_err());
    }
}
