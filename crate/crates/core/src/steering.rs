//! Entropic steering functionals built from Pauli measurement statistics.
//!
//! Two routes compute the same quantity. [`conditional_entropy_sum`] measures
//! the three Pauli observables with explicit projectors and sums the Shannon
//! conditional entropies. [`steering_inequality`] evaluates the closed-form
//! eigen-coefficient expressions directly from the matrix elements. They are
//! tied by the identity `I = 6 − 2·ΣH(cond)`, and `I > 2` certifies steering.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{Axis, DensityMatrix4};

/// Joint probabilities below `-NEG_PROB_TOL` are rejected, values in
/// `[-NEG_PROB_TOL, 0)` are clamped to zero.
pub const NEG_PROB_TOL: f64 = 1e-12;

/// Slack on the `[0, 6]` range of the steering functional.
pub const RANGE_TOL: f64 = 1e-9;

/// Largest value of the functional, reached by Bell states.
pub const I_MAX: f64 = 6.0;

/// Steering threshold of the functional.
pub const I_BOUND: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Alice measures, Bob's statistics are conditioned on hers.
    AToB,
    /// Bob measures, Alice's statistics are conditioned on his.
    BToA,
}

/// Outcome statistics of measuring the same Pauli observable on both qubits.
///
/// `joint` is ordered (+,+), (+,−), (−,+), (−,−).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDistribution {
    pub axis: Axis,
    pub joint: [f64; 4],
    pub marginal_a: [f64; 2],
    pub marginal_b: [f64; 2],
}

impl MeasurementDistribution {
    pub fn conditioning_marginal(&self, direction: Direction) -> [f64; 2] {
        match direction {
            Direction::AToB => self.marginal_a,
            Direction::BToA => self.marginal_b,
        }
    }
}

/// Eigenvectors (+1, −1) of each Pauli operator.
fn eigenbasis(axis: Axis) -> [[Complex64; 2]; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r = |v: f64| Complex64::new(v, 0.0);
    match axis {
        Axis::X => [[r(h), r(h)], [r(h), r(-h)]],
        Axis::Y => [
            [r(h), Complex64::new(0.0, h)],
            [r(h), Complex64::new(0.0, -h)],
        ],
        Axis::Z => [[r(1.0), r(0.0)], [r(0.0), r(1.0)]],
    }
}

fn clamp_probability(p: f64) -> Result<f64> {
    if p < -NEG_PROB_TOL || p.is_nan() {
        return Err(Error::NegativeProbability(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

pub fn pauli_distribution(rho: &DensityMatrix4, axis: Axis) -> Result<MeasurementDistribution> {
    let basis = eigenbasis(axis);
    let r = rho.entries();
    let mut joint = [0.0; 4];
    for (oa, va) in basis.iter().enumerate() {
        for (ob, vb) in basis.iter().enumerate() {
            let psi = [va[0] * vb[0], va[0] * vb[1], va[1] * vb[0], va[1] * vb[1]];
            let mut p = Complex64::new(0.0, 0.0);
            for k in 0..4 {
                for l in 0..4 {
                    p += psi[k].conj() * r[k][l] * psi[l];
                }
            }
            joint[2 * oa + ob] = clamp_probability(p.re)?;
        }
    }
    Ok(MeasurementDistribution {
        axis,
        joint,
        marginal_a: [joint[0] + joint[1], joint[2] + joint[3]],
        marginal_b: [joint[0] + joint[2], joint[1] + joint[3]],
    })
}

/// Position in the projective `joint` array of each closed-form coefficient,
/// per axis. For x the coefficients run (++, −−, +−, −+); for y the `±`
/// pairs come out as (−−, ++, +−, −+); z follows the basis order.
pub const CLOSED_FORM_JOINT_ORDER: [[usize; 4]; 3] = [[0, 3, 1, 2], [3, 0, 1, 2], [0, 1, 2, 3]];

/// Position in a projective marginal of each closed-form marginal coefficient.
/// Only y is reversed: its first coefficient `1 + 2 Im(…)` is the −1 outcome.
pub const CLOSED_FORM_MARGINAL_ORDER: [[usize; 2]; 3] = [[0, 1], [1, 0], [0, 1]];

/// Eigen-coefficients of the joint and reduced states evaluated from matrix
/// elements. Joint coefficients are 4× probabilities, marginal ones 2×.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormP {
    /// Indexed by [`Axis::index`].
    pub joint: [[f64; 4]; 3],
    pub alice: [[f64; 2]; 3],
    pub bob: [[f64; 2]; 3],
}

pub fn closed_form_p(rho: &DensityMatrix4) -> ClosedFormP {
    // one-based names to keep the formulas readable against ρ_ij
    let e = |i: usize, j: usize| rho.at(i - 1, j - 1);
    let (r12, r13, r14) = (e(1, 2), e(1, 3), e(1, 4));
    let (r23, r24, r34) = (e(2, 3), e(2, 4), e(3, 4));

    let x = [
        1.0 + 2.0 * (r12 + r13 + r14 + r23 + r24 + r34).re,
        1.0 - 2.0 * (r12 + r13 - r14 - r23 + r24 + r34).re,
        1.0 - 2.0 * (r12 - r13 + r14 + r23 - r24 + r34).re,
        1.0 + 2.0 * (r12 - r13 - r14 - r23 - r24 + r34).re,
    ];
    let y_re_14 = 2.0 * (r23 - r14).re;
    let y_im_12 = 2.0 * (r12 + r13 + r24 + r34).im;
    let y_im_34 = 2.0 * (r12 - r13 - r24 + r34).im;
    let y = [
        1.0 + y_re_14 + y_im_12,
        1.0 + y_re_14 - y_im_12,
        1.0 - y_re_14 + y_im_34,
        1.0 - y_re_14 - y_im_34,
    ];
    let z = [1, 2, 3, 4].map(|i| 4.0 * e(i, i).re);

    let pm = |v: f64| [1.0 + v, 1.0 - v];
    let alice = [
        pm(2.0 * (r13 + r24).re),
        pm(2.0 * (r13 + r24).im),
        pm((e(1, 1) + e(2, 2) - e(3, 3) - e(4, 4)).re),
    ];
    let bob = [
        pm(2.0 * (r12 + r34).re),
        pm(2.0 * (r12 + r34).im),
        pm((e(1, 1) - e(2, 2) + e(3, 3) - e(4, 4)).re),
    ];

    ClosedFormP {
        joint: [x, y, z],
        alice,
        bob,
    }
}

/// `x·log2 x` with `0·log2 0 = 0`; tiny negatives from rounding count as zero.
fn xlog2x(x: f64, scale: f64) -> Result<f64> {
    if x < -NEG_PROB_TOL * scale || x.is_nan() {
        return Err(Error::NegativeProbability(x / scale));
    }
    Ok(if x <= 0.0 { 0.0 } else { x * x.log2() })
}

/// Shannon entropy in bits.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// `Σ_axes [H(joint) − H(conditioning marginal)]`, in `[0, 3]`.
pub fn conditional_entropy_sum(rho: &DensityMatrix4, direction: Direction) -> Result<f64> {
    let mut total = 0.0;
    for axis in Axis::ALL {
        let d = pauli_distribution(rho, axis)?;
        total += shannon_entropy(&d.joint) - shannon_entropy(&d.conditioning_marginal(direction));
    }
    Ok(total)
}

/// The steering functional `I_ab` ([`Direction::AToB`]) or `I_ba`, evaluated
/// from the closed-form coefficients.
pub fn steering_inequality(rho: &DensityMatrix4, direction: Direction) -> Result<f64> {
    let p = closed_form_p(rho);
    let cond = match direction {
        Direction::AToB => &p.alice,
        Direction::BToA => &p.bob,
    };
    let mut joint_term = 0.0;
    let mut cond_term = 0.0;
    for axis in 0..3 {
        for &v in &p.joint[axis] {
            joint_term += xlog2x(v, 4.0)?;
        }
        for &v in &cond[axis] {
            cond_term += xlog2x(v, 2.0)?;
        }
    }
    Ok(0.5 * joint_term - cond_term)
}

/// `max{0, (I − 2)/(I_max − 2)}`
pub fn steerability_degree(i: f64) -> f64 {
    ((i - I_BOUND) / (I_MAX - I_BOUND)).max(0.0)
}

/// Both steering functionals, both steerability degrees and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    #[serde(rename = "I_ab")]
    pub i_ab: f64,
    #[serde(rename = "I_ba")]
    pub i_ba: f64,
    #[serde(rename = "S_ab")]
    pub s_ab: f64,
    #[serde(rename = "S_ba")]
    pub s_ba: f64,
    pub delta: f64,
}

impl SteeringReport {
    pub fn from_functionals(i_ab: f64, i_ba: f64) -> Result<Self> {
        for (name, i) in [("I_ab", i_ab), ("I_ba", i_ba)] {
            if !(-RANGE_TOL..=I_MAX + RANGE_TOL).contains(&i) {
                return Err(Error::Inconsistent(format!("{name} = {i} outside [0, 6]")));
            }
        }
        let s_ab = steerability_degree(i_ab);
        let s_ba = steerability_degree(i_ba);
        Ok(Self {
            i_ab,
            i_ba,
            s_ab,
            s_ba,
            delta: (s_ab - s_ba).abs(),
        })
    }

    pub fn a_steers_b(&self) -> bool {
        self.i_ab > I_BOUND
    }

    pub fn b_steers_a(&self) -> bool {
        self.i_ba > I_BOUND
    }
}

pub fn steerability_report(rho: &DensityMatrix4) -> Result<SteeringReport> {
    SteeringReport::from_functionals(
        steering_inequality(rho, Direction::AToB)?,
        steering_inequality(rho, Direction::BToA)?,
    )
}

/// Lower bound on the summed conditional entropies of `N + 1` mutually
/// unbiased measurements in even dimension `N`.
pub fn entropic_bound(n: u32) -> Result<f64> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::domain(
            "N",
            format!("{n} is not a positive even integer"),
        ));
    }
    let half = f64::from(n) / 2.0;
    Ok(half * half.log2() + (1.0 + half) * (1.0 + half).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{accelerate_then_filter, AccelerationParams, FilterParams};
    use crate::qstate::{
        generic_pure, random_density_matrix, werner, PureFamilyParams, WernerParams,
    };
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Independent oracle for isotropic Werner states with weight w: every
    // axis gives a perfectly symmetric binary channel with flip probability
    // (1 − w)/2, so I = 6 − 6·H2((1 + w)/2).
    fn h2(x: f64) -> f64 {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }

    fn werner_oracle(w: f64) -> f64 {
        6.0 - 6.0 * h2((1.0 + w) / 2.0)
    }

    #[test]
    fn distributions_of_known_states() {
        let d = pauli_distribution(&DensityMatrix4::singlet(), Axis::Z).unwrap();
        assert_eq!(d.joint, [0.0, 0.5, 0.5, 0.0]);
        for axis in Axis::ALL {
            let d = pauli_distribution(&DensityMatrix4::maximally_mixed(), axis).unwrap();
            for p in d.joint {
                assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
            }
        }
        let d = pauli_distribution(&DensityMatrix4::basis(0), Axis::X).unwrap();
        for p in d.joint {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(d.marginal_a[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.marginal_b[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_of_known_states() {
        let p = closed_form_p(&DensityMatrix4::singlet());
        for (got, want) in p.joint[0].iter().zip([0.0, 0.0, 2.0, 2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        for (got, want) in p.joint[2].iter().zip([0.0, 2.0, 2.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        for m in p.alice.iter().chain(p.bob.iter()) {
            assert_abs_diff_eq!(m[0], 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(m[1], 1.0, epsilon = 1e-15);
        }

        let p = closed_form_p(&DensityMatrix4::maximally_mixed());
        for v in p
            .joint
            .iter()
            .flatten()
            .chain(p.alice.iter().flatten())
            .chain(p.bob.iter().flatten())
        {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn closed_form_equals_scaled_projective_statistics() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let rho = random_density_matrix(&mut rng);
            let p = closed_form_p(&rho);
            for axis in Axis::ALL {
                let a = axis.index();
                let d = pauli_distribution(&rho, axis).unwrap();
                assert_abs_diff_eq!(p.joint[a].iter().sum::<f64>(), 4.0, epsilon = 1e-10);
                for (k, &slot) in CLOSED_FORM_JOINT_ORDER[a].iter().enumerate() {
                    assert_abs_diff_eq!(p.joint[a][k], 4.0 * d.joint[slot], epsilon = 1e-10);
                }
                for (k, &slot) in CLOSED_FORM_MARGINAL_ORDER[a].iter().enumerate() {
                    assert_abs_diff_eq!(p.alice[a][k], 2.0 * d.marginal_a[slot], epsilon = 1e-10);
                    assert_abs_diff_eq!(p.bob[a][k], 2.0 * d.marginal_b[slot], epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn conditional_entropies_of_known_states() {
        for dir in [Direction::AToB, Direction::BToA] {
            assert_abs_diff_eq!(
                conditional_entropy_sum(&DensityMatrix4::singlet(), dir).unwrap(),
                0.0,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                conditional_entropy_sum(&DensityMatrix4::maximally_mixed(), dir).unwrap(),
                3.0,
                epsilon = 1e-12
            );
        }
        let h = conditional_entropy_sum(&DensityMatrix4::basis(0), Direction::AToB).unwrap();
        assert_abs_diff_eq!(h, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn functional_of_known_states() {
        for dir in [Direction::AToB, Direction::BToA] {
            assert_abs_diff_eq!(
                steering_inequality(&DensityMatrix4::singlet(), dir).unwrap(),
                6.0,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                steering_inequality(&DensityMatrix4::basis(0), dir).unwrap(),
                2.0,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                steering_inequality(&DensityMatrix4::maximally_mixed(), dir).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        let rho = werner(&WernerParams::isotropic(-0.8).unwrap()).unwrap();
        let i = steering_inequality(&rho, Direction::AToB).unwrap();
        assert_abs_diff_eq!(i, werner_oracle(0.8), epsilon = 1e-12);
        assert_abs_diff_eq!(i, 3.186026438464, epsilon = 1e-9);
    }

    #[test]
    fn reports_of_known_states() {
        let r = steerability_report(&DensityMatrix4::singlet()).unwrap();
        assert_abs_diff_eq!(r.s_ab, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s_ba, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta, 0.0, epsilon = 1e-12);

        let rho = werner(&WernerParams::isotropic(-0.8).unwrap()).unwrap();
        let r = steerability_report(&rho).unwrap();
        let want = (werner_oracle(0.8) - 2.0) / 4.0;
        assert_abs_diff_eq!(r.s_ab, want, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s_ab, 0.2965, epsilon = 1e-4);
        assert_abs_diff_eq!(r.delta, 0.0, epsilon = 1e-12);

        let r = steerability_report(&DensityMatrix4::basis(0)).unwrap();
        assert_eq!(r.s_ab, 0.0);
        assert_eq!(r.s_ba, 0.0);
        assert!(!r.a_steers_b());
    }

    #[test]
    fn inconsistent_functional_is_reported() {
        assert!(matches!(
            SteeringReport::from_functionals(6.1, 3.0),
            Err(Error::Inconsistent(_))
        ));
        assert!(SteeringReport::from_functionals(6.0 + 1e-10, 3.0).is_ok());
    }

    #[test]
    fn invalid_matrix_gives_negative_probability() {
        // diag(1/2, 0, 0, 1/2) with ρ14 = 0.9 has eigenvalue −0.4
        let half = Complex64::new(0.5, 0.0);
        let coh = Complex64::new(0.9, 0.0);
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        m[0][0] = half;
        m[3][3] = half;
        m[0][3] = coh;
        m[3][0] = coh;
        let rho = DensityMatrix4::from_trusted(m);
        assert!(matches!(
            pauli_distribution(&rho, Axis::X),
            Err(Error::NegativeProbability(_))
        ));
        assert!(matches!(
            steering_inequality(&rho, Direction::AToB),
            Err(Error::NegativeProbability(_))
        ));
    }

    #[test]
    fn entropic_bounds() {
        assert_abs_diff_eq!(entropic_bound(2).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            entropic_bound(4).unwrap(),
            2.0 + 3.0 * 3f64.log2(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            entropic_bound(4).unwrap(),
            6.754887502163468,
            epsilon = 1e-12
        );
        assert!(entropic_bound(1).is_err());
        assert!(entropic_bound(0).is_err());
    }

    #[test]
    fn separable_end_of_pure_family() {
        let rho = generic_pure(&PureFamilyParams::from_p(1.0).unwrap());
        let r = steerability_report(&rho).unwrap();
        assert_abs_diff_eq!(r.i_ab, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.i_ba, 2.0, epsilon = 1e-9);
        assert_eq!(r.s_ab, 0.0);
    }

    #[test]
    fn singlet_decoheres_monotonically_without_filter() {
        let mut prev = f64::INFINITY;
        for k in 0..50 {
            let r = std::f64::consts::FRAC_PI_4 * k as f64 / 49.0;
            let acc = AccelerationParams::equal(r).unwrap();
            let (rho, _) =
                accelerate_then_filter(&DensityMatrix4::singlet(), &acc, &FilterParams::identity())
                    .unwrap();
            let i = steering_inequality(&rho, Direction::AToB).unwrap();
            assert!(i <= prev + 1e-12, "I rose at r={r}");
            prev = i;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn functional_identity(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rho = random_density_matrix(&mut rng);
            for dir in [Direction::AToB, Direction::BToA] {
                let i = steering_inequality(&rho, dir).unwrap();
                let h = conditional_entropy_sum(&rho, dir).unwrap();
                prop_assert!((i - (6.0 - 2.0 * h)).abs() <= 1e-9);
                prop_assert!((-RANGE_TOL..=I_MAX + RANGE_TOL).contains(&i));
                prop_assert!((-1e-12..=3.0 + 1e-12).contains(&h));
            }
            let r = steerability_report(&rho).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.s_ab) && (0.0..=1.0).contains(&r.s_ba));
            prop_assert!((0.0..=1.0).contains(&r.delta));
        }

        #[test]
        fn werner_family_is_direction_symmetric(
            c in -1.0f64..=1.0, d in -1.0f64..=1.0, e in -1.0f64..=1.0,
            r in 0.0f64..=std::f64::consts::FRAC_PI_4, alpha in 0.02f64..0.98,
        ) {
            let Ok(rho) = werner(&WernerParams::new(c, d, e).unwrap()) else { return Ok(()) };
            let acc = AccelerationParams::equal(r).unwrap();
            let (out, _) = accelerate_then_filter(&rho, &acc, &FilterParams::equal(alpha).unwrap()).unwrap();
            let ab = steering_inequality(&out, Direction::AToB).unwrap();
            let ba = steering_inequality(&out, Direction::BToA).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-9);
        }
    }
}
