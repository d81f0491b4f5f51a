//! q-squashed entanglement of pure states and the bounds on it for a
//! two-term superposition.
//!
//! For a pure state the q-squashed entanglement is the sum of the
//! single-party von Neumann entropies, which [`entropy_profile`] computes
//! exactly. The upper bounds of [`thm3_upper`] and [`thm4_upper`] and the
//! lower bound of [`thm5_lower`] depend only on `a`, `b`, `⟨ψ₁|ψ₂⟩`, the
//! component entropies and the party count `N`.

use crate::error::{Error, Result};
use crate::geo_bounds::SuperpositionPair;
use crate::optimize::{grid_golden_maximize, grid_golden_minimize};
use crate::states::{entropy_profile, shannon_entropy, superpose, SuperpositionSpec, NORM_TOL};

/// Distance kept from the singular endpoints `t = 0` and `t = 1`.
pub const T_MARGIN: f64 = 1e-6;
/// Grid points used to locate the optimum over `t`.
pub const T_GRID: usize = 1000;
/// Bracket width at which golden-section refinement stops.
pub const T_XTOL: f64 = 1e-10;

/// `h₂(x) = −x log₂x − (1−x) log₂(1−x)` with `h₂(0) = h₂(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("binary entropy argument {x} outside [0, 1]")));
    }
    Ok(h2(x))
}

/// Unchecked `h₂`; evaluated on the smaller of `x` and `1−x` so that the
/// two arguments of a symmetric pair share one code path.
fn h2(x: f64) -> f64 {
    let p = if x > 0.5 { 1.0 - x } else { x };
    if p <= 0.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

fn check_entropies(esq1: f64, esq2: f64, parties: usize) -> Result<()> {
    if parties == 0 {
        return Err(Error::InvalidParameter("party count must be positive".into()));
    }
    for (name, e) in [("esq1", esq1), ("esq2", esq2)] {
        if !(e >= 0.0) || !e.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} = {e} must be finite and nonnegative")));
        }
    }
    Ok(())
}

/// `2[|a|²E₁ + |b|²E₂ + N·h₂(|a|²)] / ‖aψ₁+bψ₂‖²`.
pub fn thm3_upper(pair: &SuperpositionPair, esq1: f64, esq2: f64, parties: usize) -> Result<f64> {
    check_entropies(esq1, esq2, parties)?;
    pair.require_unit_weights()?;
    let norm_sq = pair.checked_norm_sqr()?;
    let wa = pair.a.norm_sqr();
    let wb = pair.b.norm_sqr();
    let n = parties as f64;
    Ok(2.0 * (wa * esq1 + wb * esq2 + n * h2(wa.clamp(0.0, 1.0))) / norm_sq)
}

/// The minimized [`thm4_upper`] bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm4Upper {
    pub value: f64,
    pub t_star: f64,
    /// `|LHS − RHS|` of `|a|²(1−t)²/(|b|²t²) = (E₁ − N log₂t)/(E₂ − N log₂(1−t))` at `t_star`.
    pub residual: f64,
}

impl Thm4Upper {
    /// Whether `t_star` lies strictly inside `[T_MARGIN, 1 − T_MARGIN]`.
    pub fn is_interior(&self) -> bool {
        self.t_star > T_MARGIN + T_XTOL && self.t_star < 1.0 - T_MARGIN - T_XTOL
    }
}

struct Thm4Objective {
    wa: f64,
    wb: f64,
    esq1: f64,
    esq2: f64,
    n: f64,
}

impl Thm4Objective {
    /// `f(t) = [t|b|² + (1−t)|a|²]/[t(1−t)] · [tE₁ + (1−t)E₂ + N·h₂(t)]`.
    fn value(&self, t: f64) -> f64 {
        let prefactor = (t * self.wb + (1.0 - t) * self.wa) / (t * (1.0 - t));
        prefactor * (t * self.esq1 + (1.0 - t) * self.esq2 + self.n * h2(t))
    }

    /// `f'(t) ∝ |b|²X/(1−t)² − |a|²Y/t²` with `X = E₁ − N log₂t`,
    /// `Y = E₂ − N log₂(1−t)`.
    fn slope(&self, t: f64) -> f64 {
        let x = self.esq1 - self.n * t.log2();
        let y = self.esq2 - self.n * (1.0 - t).log2();
        self.wb * x / ((1.0 - t) * (1.0 - t)) - self.wa * y / (t * t)
    }

    fn residual(&self, t: f64) -> f64 {
        let lhs = self.wa * (1.0 - t) * (1.0 - t) / (self.wb * t * t);
        let rhs = (self.esq1 - self.n * t.log2()) / (self.esq2 - self.n * (1.0 - t).log2());
        (lhs - rhs).abs()
    }
}

/// Narrows a sign change of `slope` inside `[lo, hi]` by bisection. Golden
/// section cannot resolve `t` beyond about `√ε` because `f` is flat at its
/// minimum; the slope keeps a usable sign much closer in.
fn bisect_slope<S: Fn(f64) -> f64>(slope: S, lo: f64, hi: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (sa, sb) = (slope(a), slope(b));
    if !(sa < 0.0 && sb > 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if slope(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

/// Final refinement shared by the `t` optimizations: locates the stationary
/// point near the golden-section optimum and keeps it when the objective is
/// no worse there, up to rounding.
fn polish<F, S>(objective: F, slope: S, t: f64, value: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    let width = 2.0 / T_GRID as f64;
    let lo = (t - width).max(T_MARGIN);
    let hi = (t + width).min(1.0 - T_MARGIN);
    match bisect_slope(slope, lo, hi) {
        Some(root) => {
            let v = objective(root);
            if v <= value + 4.0 * f64::EPSILON * value.abs().max(1.0) {
                (root, v.min(value))
            } else {
                (t, value)
            }
        }
        None => (t, value),
    }
}

/// `min_t f(t) / ‖aψ₁+bψ₂‖²` over `t ∈ [δ, 1−δ]`. `None` when `a` or `b` is
/// zero, where `f` diverges for every `t`.
pub fn thm4_upper(pair: &SuperpositionPair, esq1: f64, esq2: f64, parties: usize) -> Result<Option<Thm4Upper>> {
    check_entropies(esq1, esq2, parties)?;
    pair.require_unit_weights()?;
    let norm_sq = pair.checked_norm_sqr()?;
    let (wa, wb) = (pair.a.norm_sqr(), pair.b.norm_sqr());
    if wa == 0.0 || wb == 0.0 {
        return Ok(None);
    }
    let obj = Thm4Objective { wa, wb, esq1, esq2, n: parties as f64 };
    // f(|a|²) reproduces thm3_upper, so it is always a candidate.
    let best = grid_golden_minimize(|t| obj.value(t), T_MARGIN, 1.0 - T_MARGIN, T_GRID, &[wa], T_XTOL);
    let (t_star, value) = polish(|t| obj.value(t), |t| obj.slope(t), best.t, best.value);
    Ok(Some(Thm4Upper { value: value / norm_sq, t_star, residual: obj.residual(t_star) }))
}

/// The maximized [`thm5_lower`] bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm5Lower {
    /// `max{C*, D*, 0}`.
    pub value: f64,
    /// `max_t C(t)` and its maximizer.
    pub c_max: f64,
    pub t_star_c: f64,
    pub d_max: f64,
    pub t_star_d: f64,
    /// `|LHS − RHS|` of `|a|²|b|²t²/[1−(1−|a|²)t]²·E₂ = E₁ − N log₂(1−t)` at `t_star_c`.
    pub residual_c: f64,
}

/// `C(t)`; `D(t)` is the same function with `a ↔ b` and `E₁ ↔ E₂`.
struct Thm5Objective {
    /// `|a|²` for C.
    w_drop: f64,
    /// `|b|²` for C.
    w_keep: f64,
    /// `E₂` for C.
    e_keep: f64,
    /// `E₁` for C.
    e_drop: f64,
    n: f64,
}

impl Thm5Objective {
    /// `(1−t)|b|²/[1−t(1−|a|²)]·E₂ − (1−t)/t·E₁ − (N/t)h₂(t)`.
    fn value(&self, t: f64) -> f64 {
        (1.0 - t) * self.w_keep / (1.0 - t * (1.0 - self.w_drop)) * self.e_keep
            - (1.0 - t) / t * self.e_drop
            - self.n / t * h2(t)
    }

    /// `t²·C'(t) = E₁ − N log₂(1−t) − |a|²|b|²t²E₂/[1−(1−|a|²)t]²`.
    fn slope_scaled(&self, t: f64) -> f64 {
        let den = 1.0 - (1.0 - self.w_drop) * t;
        self.e_drop - self.n * (1.0 - t).log2() - self.w_drop * self.w_keep * t * t * self.e_keep / (den * den)
    }

    fn residual(&self, t: f64) -> f64 {
        self.slope_scaled(t).abs()
    }

    fn maximize(&self) -> (f64, f64) {
        let best = grid_golden_maximize(|t| self.value(t), T_MARGIN, 1.0 - T_MARGIN, T_GRID, &[], T_XTOL);
        // Maximizing C is minimizing −C, whose slope is −C'.
        let (t, neg) = polish(|t| -self.value(t), |t| -self.slope_scaled(t), best.t, -best.value);
        (t, -neg)
    }
}

/// `max_t max{C(t), D(t), 0}` for a superposition `aψ₁ + bψ₂` that is itself
/// normalized, `‖aψ₁ + bψ₂‖ = 1`.
pub fn thm5_lower(pair: &SuperpositionPair, esq1: f64, esq2: f64, parties: usize) -> Result<Thm5Lower> {
    check_entropies(esq1, esq2, parties)?;
    let norm = pair.checked_norm_sqr()?.sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq: norm * norm });
    }
    let (wa, wb) = (pair.a.norm_sqr(), pair.b.norm_sqr());
    let n = parties as f64;
    let c = Thm5Objective { w_drop: wa, w_keep: wb, e_keep: esq2, e_drop: esq1, n };
    let d = Thm5Objective { w_drop: wb, w_keep: wa, e_keep: esq1, e_drop: esq2, n };
    let (t_star_c, c_max) = c.maximize();
    let (t_star_d, d_max) = d.maximize();
    Ok(Thm5Lower {
        value: c_max.max(d_max).max(0.0),
        c_max,
        t_star_c,
        d_max,
        t_star_d,
        residual_c: c.residual(t_star_c),
    })
}

/// All q-squashed bounds for one two-term superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SquashedBoundReport {
    /// Exact `E_sq(Γ)` of the normalized superposition.
    pub e_sq_gamma: f64,
    pub esq1: f64,
    pub esq2: f64,
    pub upper_thm3: f64,
    pub upper_thm4: Option<Thm4Upper>,
    /// Evaluated on `(a, b)/‖aψ₁ + bψ₂‖`, the normalization [`thm5_lower`] assumes.
    pub lower_thm5: Thm5Lower,
}

impl SquashedBoundReport {
    pub fn from_measures(pair: &SuperpositionPair, e_sq_gamma: f64, esq1: f64, esq2: f64, parties: usize) -> Result<Self> {
        Ok(Self {
            e_sq_gamma,
            esq1,
            esq2,
            upper_thm3: thm3_upper(pair, esq1, esq2, parties)?,
            upper_thm4: thm4_upper(pair, esq1, esq2, parties)?,
            lower_thm5: thm5_lower(&pair.renormalized()?, esq1, esq2, parties)?,
        })
    }

    pub fn compute(spec: &SuperpositionSpec) -> Result<Self> {
        let pair = SuperpositionPair::from_spec(spec)?;
        let comps = spec.components();
        let esq1 = entropy_profile(&comps[0])?.total;
        let esq2 = entropy_profile(&comps[1])?.total;
        let (gamma, _) = superpose(spec)?;
        let e_sq_gamma = entropy_profile(&gamma)?.total;
        Self::from_measures(&pair, e_sq_gamma, esq1, esq2, gamma.parties())
    }
}

/// High fidelity does not imply close q-squashed entanglement: `|000⟩`
/// against `√(1−ε)|000⟩ + √(ε/d)(|111⟩ + … + |ddd⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example3Report {
    pub fidelity: f64,
    pub esq1: f64,
    /// `3[−(1−ε)log₂(1−ε) − ε log₂(ε/d)]` from the reduced spectrum
    /// `{1−ε, ε/d, …, ε/d}`.
    pub esq2: f64,
    /// The small-ε approximation `3ε log₂d`.
    pub esq2_approx: f64,
}

pub fn example3_report(epsilon: f64, d: usize) -> Result<Example3Report> {
    if !(0.0..1.0).contains(&epsilon) || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "Example 3 needs epsilon in [0, 1) and d >= 2, got {epsilon}, {d}"
        )));
    }
    let mut spectrum = vec![epsilon / d as f64; d];
    spectrum.insert(0, 1.0 - epsilon);
    Ok(Example3Report {
        fidelity: 1.0 - epsilon,
        esq1: 0.0,
        esq2: 3.0 * shannon_entropy(&spectrum),
        esq2_approx: 3.0 * epsilon * (d as f64).log2(),
    })
}
