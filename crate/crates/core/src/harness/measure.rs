//! Measures of user-supplied state files, as a two-column `quantity,value`
//! table.

use super::{opt_real, real, CommandOutput, Csv, RunConfig};
use crate::error::{Error, Result};
use crate::geo_bounds::{GeoBoundReport, SuperpositionPair};
use crate::geometric::{lambda_max_estimate, GeometricOptions};
use crate::sq_bounds::SquashedBoundReport;
use crate::states::{entropy_profile, read_state, superpose, PureState, SuperpositionSpec};

struct Measured {
    e_g: f64,
    e_sq: f64,
}

fn measure_into(csv: &mut Csv, label: &str, state: &PureState, opts: &GeometricOptions) -> Result<Measured> {
    let geo = lambda_max_estimate(state, opts)?;
    let profile = entropy_profile(state)?;
    csv.push(vec![format!("{label}.lambda_max"), real(geo.lambda_max)]);
    csv.push(vec![format!("{label}.e_g"), real(geo.e_g)]);
    for (k, s) in profile.per_party.iter().enumerate() {
        csv.push(vec![format!("{label}.s{k}"), real(*s)]);
    }
    csv.push(vec![format!("{label}.e_sq"), real(profile.total)]);
    Ok(Measured { e_g: geo.e_g, e_sq: profile.total })
}

/// One state: its measures. Two states with `coeff_a`, `coeff_b`: both
/// components, the normalized superposition and every bound, plus the
/// number of bounds the measured values violate.
pub fn run_measure(cfg: &RunConfig) -> Result<CommandOutput> {
    cfg.validate()?;
    let opts = cfg.geometric_options();
    let mut csv = Csv::new(&["quantity", "value"]);
    match cfg.states.as_slice() {
        [path] => {
            if cfg.coeff_a.is_some() || cfg.coeff_b.is_some() {
                return Err(Error::InvalidParameter("coefficients need two --state files".into()));
            }
            measure_into(&mut csv, "psi", &read_state(path)?, &opts)?;
            Ok(CommandOutput { csv, failures: 0 })
        }
        [p1, p2] => {
            let (Some(a), Some(b)) = (cfg.coeff_a, cfg.coeff_b) else {
                return Err(Error::InvalidParameter("two states need --coeff-a and --coeff-b".into()));
            };
            let (psi1, psi2) = (read_state(p1)?, read_state(p2)?);
            let m1 = measure_into(&mut csv, "psi1", &psi1, &opts)?;
            let m2 = measure_into(&mut csv, "psi2", &psi2, &opts)?;
            let spec = SuperpositionSpec::pair(a, psi1, b, psi2)?;
            let (gamma, _) = superpose(&spec)?;
            let mg = measure_into(&mut csv, "gamma", &gamma, &opts)?;

            let pair = SuperpositionPair::from_spec(&spec)?;
            let geo = GeoBoundReport::from_measures(&pair, m1.e_g, m2.e_g, mg.e_g)?;
            let sq = SquashedBoundReport::from_measures(&pair, mg.e_sq, m1.e_sq, m2.e_sq, gamma.parties())?;
            let t4 = sq.upper_thm4;
            let t5 = sq.lower_thm5;
            let rows = [
                ("norm_sq", Some(geo.norm_sq)),
                ("lower_thm1", Some(geo.lower_thm1)),
                ("lower_weak", Some(geo.lower_weak)),
                ("upper_a", geo.upper_a),
                ("upper_b", geo.upper_b),
                ("upper_thm2", Some(geo.upper_thm2)),
                ("upper_thm3", Some(sq.upper_thm3)),
                ("upper_thm4", t4.map(|t| t.value)),
                ("t_star_thm4", t4.map(|t| t.t_star)),
                ("residual_thm4", t4.map(|t| t.residual)),
                ("lower_thm5", Some(t5.value)),
                ("t_star_c", Some(t5.t_star_c)),
                ("t_star_d", Some(t5.t_star_d)),
                ("residual_thm5_c", Some(t5.residual_c)),
            ];
            for (name, value) in rows {
                csv.push(vec![name.to_string(), opt_real(value)]);
            }

            let checks = [
                geo.lower_thm1 <= mg.e_g + 1e-7,
                mg.e_g <= geo.upper_thm2 + 1e-6,
                mg.e_sq <= sq.upper_thm3 + 1e-8,
                t4.is_none_or(|t| mg.e_sq <= t.value + 1e-8),
                t5.value <= mg.e_sq + 1e-8,
            ];
            let failures = checks.iter().filter(|ok| !**ok).count();
            csv.push(vec!["bounds_violated".to_string(), failures.to_string()]);
            Ok(CommandOutput { csv, failures })
        }
        other => Err(Error::InvalidParameter(format!("measure takes 1 or 2 --state files, got {}", other.len()))),
    }
}
