use serde::Serialize;

use crate::circuits::{MeasurementGroup, ShotCounts};
use crate::error::{Error, Result};
use crate::operators::QubitOperator;

/// Energy with its propagated standard error.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub energy: f64,
    pub std_error: f64,
}

/// Energy from one histogram per measurement group.
///
/// Each group's contribution is the mean per-shot value of its terms; its
/// variance is the empirical variance of that value over shots, divided by the
/// shot count. Groups are independent, so variances add.
pub fn estimate_energy(
    counts: &[ShotCounts],
    h: &QubitOperator,
    groups: &[MeasurementGroup],
) -> Result<Estimate> {
    let mut energy = h.constant().re;
    let mut variance = 0.0;
    for (g, group) in groups.iter().enumerate() {
        let c = counts.get(g).ok_or(Error::MissingGroup(g))?;
        let shots = c.total();
        if shots == 0 {
            return Err(Error::MissingGroup(g));
        }
        let n = shots as f64;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for (b, k) in c.iter() {
            let v = group.shot_value(b);
            sum += k as f64 * v;
            sum_sq += k as f64 * v * v;
        }
        let mean = sum / n;
        energy += mean;
        variance += (sum_sq / n - mean * mean).max(0.0) / n;
    }
    Ok(Estimate {
        energy,
        std_error: variance.sqrt(),
    })
}

/// Energy from exact outcome distributions, one per group.
pub fn energy_from_distributions(
    distributions: &[Vec<f64>],
    h: &QubitOperator,
    groups: &[MeasurementGroup],
) -> Result<f64> {
    let mut energy = h.constant().re;
    for (g, group) in groups.iter().enumerate() {
        let p = distributions.get(g).ok_or(Error::MissingGroup(g))?;
        energy += group.value_from_distribution(p);
    }
    Ok(energy)
}
