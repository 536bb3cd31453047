use std::f64::consts::FRAC_PI_4;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{
    accelerate_then_filter, accelerated_generic_pure, accelerated_werner, unruh_apply,
    unruh_apply_kraus, AccelerationParams, FilterParams,
};
use crate::error::Result;
use crate::qstate::{
    from_bloch, generic_pure, random_density_matrix, werner, Axis, DensityMatrix4,
    PureFamilyParams, WernerParams,
};
use crate::steering::{
    closed_form_p, conditional_entropy_sum, pauli_distribution, steerability_report,
    steering_inequality, Direction, CLOSED_FORM_JOINT_ORDER, CLOSED_FORM_MARGINAL_ORDER,
};

pub const DEFAULT_SEED: u64 = 20_240_521;

const RANDOM_CASES: usize = 1000;
const GRID_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<24} cases={:<5} max_deviation={:.3e} tolerance={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.max_deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.suites
            .iter()
            .map(|s| s.max_deviation)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let passed = self.suites.iter().filter(|s| s.passed).count();
        write!(f, "{passed}/{} suites passed", self.suites.len())
    }
}

/// Accumulates the worst deviation over a suite; a case whose evaluation
/// errors counts as an infinite deviation.
struct Suite {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Suite {
            name,
            tolerance,
            cases: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, deviation: Result<f64>) {
        self.cases += 1;
        let d = match deviation {
            Ok(d) if !d.is_nan() => d,
            _ => f64::INFINITY,
        };
        self.worst = self.worst.max(d);
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            max_deviation: self.worst,
            tolerance: self.tolerance,
            passed: self.cases > 0 && self.worst <= self.tolerance,
        }
    }
}

fn random_acceleration(rng: &mut ChaCha8Rng) -> AccelerationParams {
    AccelerationParams::new(
        rng.random_range(0.0..=FRAC_PI_4),
        rng.random_range(0.0..=FRAC_PI_4),
    )
    .expect("sampled inside the domain")
}

fn random_filter(rng: &mut ChaCha8Rng) -> FilterParams {
    FilterParams::new(rng.random_range(0.05..0.95), rng.random_range(0.05..0.95))
        .expect("sampled inside the domain")
}

fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> + Clone {
    (0..GRID_POINTS).map(move |k| lo + (hi - lo) * k as f64 / (GRID_POINTS - 1) as f64)
}

fn suite_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Compares `explicit` against the Kraus form of the acceleration channel on
/// random states and accelerations.
pub fn kraus_suite<F>(seed: u64, explicit: F) -> SuiteResult
where
    F: Fn(&DensityMatrix4, &AccelerationParams) -> DensityMatrix4,
{
    let mut rng = suite_rng(seed, 1);
    let mut suite = Suite::new("kraus_vs_explicit", 1e-12);
    for _ in 0..RANDOM_CASES {
        let rho = random_density_matrix(&mut rng);
        let acc = random_acceleration(&mut rng);
        suite.record(Ok(
            explicit(&rho, &acc).max_abs_diff(&unruh_apply_kraus(&rho, &acc))
        ));
    }
    suite.finish()
}

fn cptp_suites(seed: u64) -> [SuiteResult; 2] {
    let mut rng = suite_rng(seed, 2);
    let mut trace = Suite::new("cptp_trace", 1e-12);
    let mut positivity = Suite::new("cptp_positivity", 1e-10);
    for _ in 0..RANDOM_CASES {
        let rho = random_density_matrix(&mut rng);
        let acc = random_acceleration(&mut rng);
        for out in [unruh_apply(&rho, &acc), unruh_apply_kraus(&rho, &acc)] {
            trace.record(Ok((out.trace() - 1.0).abs()));
            positivity.record(Ok((-out.eigenvalues()[3]).max(0.0)));
        }
    }
    [trace.finish(), positivity.finish()]
}

fn closed_form_werner() -> SuiteResult {
    let mut suite = Suite::new("closed_form_werner", 1e-12);
    let rs = grid(0.0, FRAC_PI_4);
    for c in grid(-1.0, 1.0) {
        // the three correlations sweep a physical path through the tetrahedron
        let Ok(w) = WernerParams::new(c, -c.abs(), (c - 1.0) / 2.0) else {
            continue;
        };
        let Ok(base) = werner(&w) else { continue };
        for r_a in rs.clone() {
            for r_b in rs.clone() {
                let acc = AccelerationParams::new(r_a, r_b).expect("grid inside the domain");
                suite.record(
                    accelerated_werner(&w, &acc)
                        .map(|closed| closed.max_abs_diff(&unruh_apply(&base, &acc))),
                );
            }
        }
    }
    suite.finish()
}

fn closed_form_generic_pure() -> SuiteResult {
    let mut suite = Suite::new("closed_form_generic_pure", 1e-12);
    let rs = grid(0.0, FRAC_PI_4);
    for q in grid(0.0, 1.0) {
        let f = PureFamilyParams::from_q(q).expect("grid inside the domain");
        let base = generic_pure(&f);
        for r_a in rs.clone() {
            for r_b in rs.clone() {
                let acc = AccelerationParams::new(r_a, r_b).expect("grid inside the domain");
                suite.record(Ok(
                    accelerated_generic_pure(&f, &acc).max_abs_diff(&unruh_apply(&base, &acc))
                ));
            }
        }
    }
    suite.finish()
}

fn p_deviation(rho: &DensityMatrix4) -> Result<f64> {
    let p = closed_form_p(rho);
    let mut worst: f64 = 0.0;
    for axis in Axis::ALL {
        let k = axis.index();
        let d = pauli_distribution(rho, axis)?;
        for (i, &slot) in CLOSED_FORM_JOINT_ORDER[k].iter().enumerate() {
            worst = worst.max((p.joint[k][i] - 4.0 * d.joint[slot]).abs());
        }
        for (i, &slot) in CLOSED_FORM_MARGINAL_ORDER[k].iter().enumerate() {
            worst = worst.max((p.alice[k][i] - 2.0 * d.marginal_a[slot]).abs());
            worst = worst.max((p.bob[k][i] - 2.0 * d.marginal_b[slot]).abs());
        }
    }
    Ok(worst)
}

fn identity_deviation(rho: &DensityMatrix4) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for dir in [Direction::AToB, Direction::BToA] {
        let i = steering_inequality(rho, dir)?;
        worst = worst.max((i - (6.0 - 2.0 * conditional_entropy_sum(rho, dir)?)).abs());
    }
    Ok(worst)
}

fn random_pipeline_states(seed: u64, stream: u64) -> Vec<DensityMatrix4> {
    let mut rng = suite_rng(seed, stream);
    (0..RANDOM_CASES)
        .map(|k| {
            let rho = random_density_matrix(&mut rng);
            let acc = random_acceleration(&mut rng);
            let fp = random_filter(&mut rng);
            // every other case goes through the channel and filter
            if k % 2 == 0 {
                rho
            } else {
                accelerate_then_filter(&rho, &acc, &fp)
                    .map(|(out, _)| out)
                    .unwrap_or(rho)
            }
        })
        .collect()
}

fn p_vs_projective(seed: u64) -> SuiteResult {
    let mut suite = Suite::new("p_vs_projective", 1e-10);
    for rho in random_pipeline_states(seed, 3) {
        suite.record(p_deviation(&rho));
    }
    suite.finish()
}

fn functional_identity(seed: u64) -> SuiteResult {
    let mut suite = Suite::new("functional_identity", 1e-9);
    for rho in random_pipeline_states(seed, 4) {
        suite.record(identity_deviation(&rho));
    }
    suite.finish()
}

fn werner_symmetry(seed: u64) -> SuiteResult {
    let mut rng = suite_rng(seed, 5);
    let mut suite = Suite::new("werner_symmetry", 1e-9);
    while suite.cases < RANDOM_CASES {
        let c = [0; 3].map(|_| rng.random_range(-1.0..=1.0));
        let Ok(w) = WernerParams::new(c[0], c[1], c[2]) else {
            continue;
        };
        let Ok(base) = werner(&w) else { continue };
        let acc = AccelerationParams::equal(rng.random_range(0.0..=FRAC_PI_4))
            .expect("sampled inside the domain");
        let fp =
            FilterParams::equal(rng.random_range(0.05..0.95)).expect("sampled inside the domain");
        suite.record(
            accelerate_then_filter(&base, &acc, &fp)
                .and_then(|(out, _)| steerability_report(&out))
                .map(|r| (r.i_ab - r.i_ba).abs().max((r.s_ab - r.s_ba).abs())),
        );
    }
    suite.finish()
}

fn bloch_round_trip(seed: u64) -> SuiteResult {
    let mut rng = suite_rng(seed, 6);
    let mut suite = Suite::new("bloch_round_trip", 1e-12);
    for _ in 0..RANDOM_CASES {
        let rho = random_density_matrix(&mut rng);
        suite.record(from_bloch(&rho.to_bloch()).map(|back| back.max_abs_diff(&rho)));
    }
    suite.finish()
}

/// Runs every cross-check suite. Failures are reported in the result, never
/// raised.
pub fn verify(seed: u64) -> VerifyReport {
    let [trace, positivity] = cptp_suites(seed);
    VerifyReport {
        seed,
        suites: vec![
            kraus_suite(seed, unruh_apply),
            trace,
            positivity,
            closed_form_werner(),
            closed_form_generic_pure(),
            p_vs_projective(seed),
            functional_identity(seed),
            werner_symmetry(seed),
            bloch_round_trip(seed),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::unruh_matrix;
    use crate::linalg::Mat4;

    #[test]
    fn fresh_build_passes() {
        let report = verify(DEFAULT_SEED);
        assert!(report.passed(), "{report}");
        assert!(report.max_deviation() < 1e-9);
        assert_eq!(report.suites.len(), 9);
        for s in &report.suites {
            assert!(s.cases >= 400, "{s}");
        }
    }

    #[test]
    fn fixed_seed_reproduces_report() {
        assert_eq!(verify(7).to_string(), verify(7).to_string());
    }

    #[test]
    fn sign_flip_is_caught() {
        let flipped = |rho: &DensityMatrix4, acc: &AccelerationParams| {
            let mut m: Mat4 = unruh_matrix(rho.entries(), acc);
            m[0][3] = -m[0][3];
            m[3][0] = -m[3][0];
            DensityMatrix4::from_trusted(m)
        };
        let r = kraus_suite(DEFAULT_SEED, flipped);
        assert!(!r.passed);
        assert!(r.max_deviation > 0.05, "{r}");
    }

    #[test]
    fn errors_count_as_failures() {
        let mut s = Suite::new("x", 1.0);
        s.record(Ok(0.5));
        s.record(Err(crate::Error::NotPositive(-1.0)));
        let r = s.finish();
        assert!(!r.passed && r.max_deviation.is_infinite());
        assert!(r.to_string().starts_with("FAIL x"));
    }
}
