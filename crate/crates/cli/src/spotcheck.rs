//! Random torsion points away from the candidate set should pass the
//! pseudoreflection criterion.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smoothquot_core::groups::AffineGroup;
use smoothquot_core::smoothness::{candidate_points, cst_check, orbit};
use smoothquot_core::torus::RANK;
use smoothquot_core::TorsionVector;

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub seed: u64,
    pub torsion: i64,
    pub sampled: usize,
    /// Sampled points with a nontrivial stabilizer.
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

/// Samples `samples` points of `B[n]` outside the orbits of the candidates.
pub fn spot_check(group: &AffineGroup, samples: usize, n: i64, seed: u64) -> CliResult<SpotCheck> {
    let mut excluded: HashSet<TorsionVector> = HashSet::new();
    for c in candidate_points(group)? {
        excluded.extend(orbit(group, &c.point));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SpotCheck {
        seed,
        torsion: n,
        sampled: 0,
        nontrivial: 0,
        failures: vec![],
    };
    let mut attempts = 0;
    while out.sampled < samples && attempts < 100 * samples {
        attempts += 1;
        let num: Vec<i64> = (0..RANK).map(|_| rng.random_range(0..n)).collect();
        let x = TorsionVector::new(n, num);
        if excluded.contains(&x) {
            continue;
        }
        out.sampled += 1;
        let report = cst_check(&x, group);
        if report.stabilizer.len() > 1 {
            out.nontrivial += 1;
        }
        if !report.passes {
            out.failures.push(x.to_string());
        }
    }
    Ok(out)
}
