//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use entbound::geo_bounds::SuperpositionPair;
use entbound::geometric::{lambda_max_bipartite_exact, lambda_max_estimate, GeometricOptions};
use entbound::harness::{example3_rows, fig1_rows, fig2_rows, run_example3, verify_properties, RunConfig};
use entbound::sq_bounds::{example3_report, thm4_upper};
use entbound::states::{entropy_profile, make_state, random_state, StateFamily, SuperpositionSpec};
use num_complex::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, title: &str, outcome: Outcome) -> bool {
    let tag = if outcome.pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{tag}] {title}: {}", outcome.detail);
    outcome.pass
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn geometric_anchors() -> Outcome {
    let opts = GeometricOptions::default();
    let ghz = make_state(&StateFamily::Ghz { parties: 3, local_dim: 2 }).unwrap();
    let w = make_state(&StateFamily::W3).unwrap();
    let (rg, tg) = timed(|| lambda_max_estimate(&ghz, &opts).unwrap());
    let (rw, tw) = timed(|| lambda_max_estimate(&w, &opts).unwrap());
    let (eg, ew) = ((rg.e_g - 0.5).abs(), (rw.e_g - 5.0 / 9.0).abs());
    let limit = Duration::from_secs(1);
    Outcome {
        pass: eg <= 1e-6 && ew <= 1e-6 && tg < limit && tw < limit,
        detail: format!(
            "E_g(GHZ3)={:.12} (err {eg:.1e}, {tg:.2?}), E_g(W3)={:.12} (err {ew:.1e}, {tw:.2?})",
            rg.e_g, rw.e_g
        ),
    }
}

/// The printed lower expression `max{−a²/18 − (4/(3√2))a√(1−a²) + 5/9, 0}`.
fn printed_lower(a: f64) -> f64 {
    let b = (1.0 - a * a).sqrt();
    (5.0 / 9.0 - a * a / 18.0 - 4.0 * a * b / (3.0 * 2f64.sqrt())).max(0.0)
}

/// The printed upper expressions; each only where its denominator is nonzero.
fn printed_upper(a: f64) -> f64 {
    let b = (1.0 - a * a).sqrt();
    let first = (a < 1.0).then(|| (35.0 * a * a / 18.0 + 3.0 * a / 2.0 + 5.0 / 9.0) / (1.0 - a));
    let second = (b < 1.0).then(|| (-37.0 * a * a / 18.0 + 13.0 * b / 9.0 + 23.0 / 9.0) / (1.0 - b));
    [first, second].into_iter().flatten().fold(1.0, f64::min)
}

fn fig1() -> Outcome {
    let rows = fig1_rows(&RunConfig::default()).unwrap();
    let mut worst_lower = 0.0f64;
    let mut worst_upper = 0.0f64;
    let mut ordered = true;
    for r in &rows {
        worst_lower = worst_lower.max((r.lower_thm1 - printed_lower(r.a)).abs());
        worst_upper = worst_upper.max((r.upper_thm2 - printed_upper(r.a)).abs());
        ordered &= r.lower_thm1 <= r.upper_thm2 + 1e-9;
    }
    Outcome {
        pass: rows.len() == 101 && worst_lower <= 1e-9 && worst_upper <= 1e-9 && ordered,
        detail: format!(
            "{} rows, max |lower - printed| {worst_lower:.1e}, max |upper - printed| {worst_upper:.1e}, lower <= upper: {ordered}",
            rows.len()
        ),
    }
}

fn fig2() -> Outcome {
    let (rows, elapsed) = timed(|| fig2_rows(&RunConfig::default()).unwrap());
    let panel_a: Vec<usize> = rows.iter().filter(|r| r.panel == 'a' && r.d == 11).map(|r| r.parties).collect();
    let panel_b: Vec<usize> = rows.iter().filter(|r| r.panel == 'b' && r.parties == 3).map(|r| r.d).collect();
    let covered = panel_a == (2..=8).collect::<Vec<_>>() && panel_b == (2..=8).collect::<Vec<_>>();
    let below = rows.iter().all(|r| r.e_sq_gamma <= r.upper_thm3);
    let worst = rows
        .iter()
        .map(|r| (r.e_sq_gamma - r.parties as f64 * ((r.d - 1) as f64).log2()).abs())
        .fold(0.0, f64::max);
    Outcome {
        pass: covered && below && worst <= 1e-10 && elapsed < Duration::from_secs(30),
        detail: format!(
            "{} rows, e_sq <= thm3 on all: {below}, max |e_sq - N log2(d-1)| {worst:.1e}, {elapsed:.2?}",
            rows.len()
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let opts = GeometricOptions::default();
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let dims = [2 + (k % 3) as usize, 2 + (k / 3 % 3) as usize];
        let psi = random_state(&dims, 1000 + k).unwrap();
        let est = lambda_max_estimate(&psi, &opts).unwrap().lambda_max;
        let exact = lambda_max_bipartite_exact(&psi).unwrap().lambda_max;
        worst = worst.max((est - exact).abs());
    }
    Outcome { pass: worst <= 1e-8, detail: format!("100 states up to 4x4, max |estimate - exact| {worst:.1e}") }
}

fn property_suite() -> Outcome {
    let cfg = RunConfig { trials: 200, seed: 42, ..RunConfig::default() };
    let (out, elapsed) = timed(|| verify_properties(&cfg).unwrap());
    let required = [
        "thm1_le_eg",
        "prop_eq_thm1",
        "thm1_saturation",
        "esq_le_thm3",
        "esq_le_thm4",
        "thm4_le_thm3",
        "thm5_le_esq",
        "mixing_lemma",
        "concavity",
        "h2_symmetry",
    ];
    let present = required.iter().all(|n| out.get(n).is_some_and(|p| p.trials == 200));
    let failed: Vec<String> =
        out.properties.iter().filter(|p| p.failures > 0).map(|p| format!("{}={}", p.name, p.failures)).collect();
    Outcome {
        pass: present && failed.is_empty() && elapsed < Duration::from_secs(300),
        detail: format!(
            "{} properties x 200 trials, failures: [{}], {elapsed:.2?}",
            out.properties.len(),
            failed.join(" ")
        ),
    }
}

fn example3() -> Outcome {
    // 3[−0.9 log₂0.9 − 0.1 log₂(0.1/16)], evaluated independently.
    const HAND: f64 = 2.606_986_780_767_843_7;
    let r = example3_report(0.1, 16).unwrap();
    let cli = run_example3(&RunConfig { eps: Some(0.1), d: Some(16), ..RunConfig::default() }).unwrap();
    let row_ok = cli.csv.rows().len() == 1 && cli.csv.rows()[0][2] == "9.00000000000e-1";
    let ds = [4, 16, 64, 256];
    let series: Vec<f64> = example3_rows(0.1, &ds)
        .unwrap()
        .rows()
        .iter()
        .map(|row| row[4].parse().unwrap())
        .collect();
    let exact_series: Vec<f64> = ds.iter().map(|&d| example3_report(0.1, d).unwrap().esq2).collect();
    let increasing = exact_series.windows(2).all(|w| w[1] > w[0]) && series.windows(2).all(|w| w[1] > w[0]);
    let err = (r.esq2 - HAND).abs();
    Outcome {
        pass: r.fidelity == 0.9 && err <= 1e-9 && increasing && row_ok,
        detail: format!("fidelity {}, esq2 {:.12} (err {err:.1e}), increasing over d=4..256: {increasing}", r.fidelity, r.esq2),
    }
}

fn stationarity() -> Outcome {
    let mut instances: Vec<SuperpositionSpec> = Vec::new();
    let ghz = make_state(&StateFamily::Ghz { parties: 3, local_dim: 2 }).unwrap();
    let w = make_state(&StateFamily::W3).unwrap();
    for i in 1..10 {
        let a = i as f64 / 10.0;
        instances.push(SuperpositionSpec::pair(c(a), ghz.clone(), c((1.0 - a * a).sqrt()), w.clone()).unwrap());
    }
    for k in 0..100u64 {
        let th = 0.05 + 1.4 * (k as f64 / 100.0);
        let p1 = random_state(&[2, 2, 2], 2 * k).unwrap();
        let p2 = random_state(&[2, 2, 2], 2 * k + 1).unwrap();
        instances.push(SuperpositionSpec::pair(c(th.cos()), p1, Complex64::from_polar(th.sin(), k as f64), p2).unwrap());
    }
    let mut worst = 0.0f64;
    let mut interior = 0;
    for spec in &instances {
        let pair = SuperpositionPair::from_spec(spec).unwrap();
        let e1 = entropy_profile(&spec.components()[0]).unwrap().total;
        let e2 = entropy_profile(&spec.components()[1]).unwrap().total;
        let Some(t4) = thm4_upper(&pair, e1, e2, 3).unwrap() else { continue };
        if t4.is_interior() {
            interior += 1;
            worst = worst.max(t4.residual);
        }
    }
    Outcome {
        pass: interior > 0 && worst <= 1e-5,
        detail: format!("{interior} interior optima of {}, max residual {worst:.1e}", instances.len()),
    }
}

fn main() {
    let results = [
        report(1, "geometric measure anchors", geometric_anchors()),
        report(2, "fig1 reproduction", fig1()),
        report(3, "fig2 reproduction", fig2()),
        report(4, "oracle equivalence", oracle_equivalence()),
        report(5, "property suite", property_suite()),
        report(6, "example 3", example3()),
        report(7, "thm4 stationarity", stationarity()),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
