// SPDX-License-Identifier: Apache-2.0

//! Randomized checks of the metric geometry on positive definite matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{congruence, distance, geodesic, midpoint, SpdPoint};
use crate::random::{random_invertible, random_spd, seeded};

/// Geodesic speed is checked at this multiple of the base tolerance.
const GEODESIC_FACTOR: f64 = 10.0;
/// Radius of the ball used for the norm-equivalence estimate.
const EQUIVALENCE_C: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Base tolerance; geodesic speed uses ten times this.
    pub tol: f64,
    /// Condition-number cap for random points and transforms.
    pub max_cond: f64,
}

impl SelftestConfig {
    pub fn new(dim: usize, trials: usize, seed: u64, tol: f64) -> Self {
        Self {
            dim,
            trials,
            seed,
            tol,
            max_cond: 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Largest `lhs - rhs` seen; negative when every check had room to spare.
    pub worst_excess: f64,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            worst_excess: f64::NEG_INFINITY,
        }
    }

    /// Records `lhs ≤ rhs`.
    fn record(&mut self, lhs: f64, rhs: f64) {
        let excess = lhs - rhs;
        self.worst_excess = self.worst_excess.max(excess);
        if excess <= 0.0 {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub properties: Vec<PropertyTally>,
    /// Smallest `K` with `‖a-b‖/K ≤ d(a,b) ≤ K‖a-b‖` over the sampled pairs
    /// in `GL_10`. Informational only.
    pub norm_equivalence_k: f64,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(
                f,
                "{:<18} passed {:>6} failed {:>6} worst_excess {:.16e}",
                p.name, p.passed, p.failed, p.worst_excess
            )?;
        }
        write!(f, "{:<18} K {:.16e}", "norm_equivalence", self.norm_equivalence_k)
    }
}

pub fn run_selftest(config: &SelftestConfig) -> Result<SelftestReport> {
    if config.dim == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "dim",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if config.trials == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "trials",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if !(config.tol >= 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "tol",
            value: config.tol,
            range: "[0, inf)",
        });
    }
    if !(config.max_cond >= 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "max_cond",
            value: config.max_cond,
            range: "[1, inf)",
        });
    }
    let n = config.dim;
    let tol = config.tol;
    let mut rng = seeded(config.seed);
    let mut semi = PropertyTally::new("semi_parallelogram");
    let mut cong = PropertyTally::new("congruence");
    let mut tri = PropertyTally::new("triangle");
    let mut speed = PropertyTally::new("geodesic_speed");
    let mut k_max: f64 = 1.0;

    for _ in 0..config.trials {
        let a = SpdPoint::new(random_spd(&mut rng, n, config.max_cond));
        let b = SpdPoint::new(random_spd(&mut rng, n, config.max_cond));
        let x = SpdPoint::new(random_spd(&mut rng, n, config.max_cond));

        let dab = distance(&a, &b)?;
        let dxa = distance(&x, &a)?;
        let dxb = distance(&x, &b)?;
        let z = midpoint(&a, &b)?;
        let dzx = distance(&z, &x)?;
        let (lhs, rhs) = (dab * dab + 4.0 * dzx * dzx, 2.0 * dxa * dxa + 2.0 * dxb * dxb);
        semi.record(lhs, rhs + tol * (1.0 + lhs + rhs));

        let g = random_invertible(&mut rng, n, config.max_cond);
        let moved = distance(&congruence(&g, &a)?, &congruence(&g, &b)?)?;
        cong.record((dab - moved).abs(), tol * (1.0 + dab));

        tri.record(distance(&a, &x)?, dab + distance(&b, &x)? + tol);

        for t in [0.25, 0.5, 0.75] {
            let p = geodesic(&a, &b, t)?;
            speed.record((distance(&a, &p)? - t * dab).abs(), GEODESIC_FACTOR * tol * (1.0 + dab));
        }

        let u = SpdPoint::new(random_spd(&mut rng, n, EQUIVALENCE_C * EQUIVALENCE_C));
        let v = SpdPoint::new(random_spd(&mut rng, n, EQUIVALENCE_C * EQUIVALENCE_C));
        let d = distance(&u, &v)?;
        let e = (u.matrix() - v.matrix()).l2_norm();
        if d > 0.0 && e > 0.0 {
            k_max = k_max.max(d / e).max(e / d);
        }
    }

    Ok(SelftestReport {
        config: *config,
        properties: vec![semi, cong, tri, speed],
        norm_equivalence_k: k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_selftest(&SelftestConfig::new(2, 100, 7, 1e-8)).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(report.norm_equivalence_k.is_finite());
    }

    #[test]
    fn scalar_case_passes() {
        assert!(run_selftest(&SelftestConfig::new(1, 100, 7, 1e-8))
            .unwrap()
            .all_passed());
    }

    #[test]
    fn zero_tolerance_fails() {
        let report = run_selftest(&SelftestConfig::new(3, 50, 7, 0.0)).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_selftest(&SelftestConfig::new(0, 1, 0, 1e-8)).is_err());
        assert!(run_selftest(&SelftestConfig::new(1, 0, 0, 1e-8)).is_err());
    }
}
