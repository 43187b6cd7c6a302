//! Benchmark fixtures shared by the criterion targets.

use primitivoid::builtin;
use primitivoid::CurveDef;

/// The reference curves at the given sample count.
pub fn fixtures(samples: usize) -> Vec<CurveDef> {
    builtin::all()
        .into_iter()
        .map(|c| c.with_samples(samples).expect("valid sample count"))
        .collect()
}
