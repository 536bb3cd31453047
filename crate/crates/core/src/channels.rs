//! Acceleration (Unruh) channel, local filtering, and the closed-form
//! accelerated state families.
//!
//! In the single-mode approximation each accelerated qubit undergoes
//! amplitude damping |0⟩ → |1⟩ with probability `sin² r`. Two independent
//! implementations are kept: [`unruh_apply`] writes the output matrix element
//! by element, [`unruh_apply_kraus`] sums over the product Kraus operators.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, kron2, Mat2, Mat4, ONE, ZERO};
use crate::qstate::{self, DensityMatrix4, PureFamilyParams, WernerParams};

/// Filter success probabilities below this are treated as annihilation.
pub const MIN_FILTER_SUCCESS: f64 = 1e-14;

/// Dimensionless acceleration angles of Alice's and Bob's qubits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelerationParams {
    r_a: f64,
    r_b: f64,
}

impl AccelerationParams {
    pub fn new(r_a: f64, r_b: f64) -> Result<Self> {
        check_r("r_a", r_a)?;
        check_r("r_b", r_b)?;
        Ok(Self { r_a, r_b })
    }

    pub fn equal(r: f64) -> Result<Self> {
        Self::new(r, r)
    }

    pub fn inertial() -> Self {
        Self { r_a: 0.0, r_b: 0.0 }
    }

    pub fn r_a(&self) -> f64 {
        self.r_a
    }

    pub fn r_b(&self) -> f64 {
        self.r_b
    }
}

fn check_r(name: &str, r: f64) -> Result<()> {
    if r.is_finite() && (0.0..=FRAC_PI_4).contains(&r) {
        Ok(())
    } else {
        Err(Error::domain(name, format!("{r} not in [0, pi/4]")))
    }
}

/// Local filter strengths, `W_i = diag(√α_i, √(1 − α_i))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    alpha_a: f64,
    alpha_b: f64,
}

impl FilterParams {
    pub fn new(alpha_a: f64, alpha_b: f64) -> Result<Self> {
        for (name, a) in [("alpha_a", alpha_a), ("alpha_b", alpha_b)] {
            if !(a.is_finite() && a > 0.0 && a < 1.0) {
                return Err(Error::domain(name, format!("{a} not in (0, 1)")));
            }
        }
        Ok(Self { alpha_a, alpha_b })
    }

    pub fn equal(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha)
    }

    /// α = 1/2 on both sides: W ∝ I, the filter is a no-op.
    pub fn identity() -> Self {
        Self {
            alpha_a: 0.5,
            alpha_b: 0.5,
        }
    }

    pub fn alpha_a(&self) -> f64 {
        self.alpha_a
    }

    pub fn alpha_b(&self) -> f64 {
        self.alpha_b
    }

    /// Diagonal of `W_a ⊗ W_b`.
    fn weights(&self) -> [f64; 4] {
        let (a0, a1) = (self.alpha_a.sqrt(), (1.0 - self.alpha_a).sqrt());
        let (b0, b1) = (self.alpha_b.sqrt(), (1.0 - self.alpha_b).sqrt());
        [a0 * b0, a0 * b1, a1 * b0, a1 * b1]
    }
}

/// Proper acceleration (m/s²), mode frequency (rad/s) and speed of light (m/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalModeParams {
    pub acceleration: f64,
    pub omega: f64,
    pub c_light: f64,
}

impl PhysicalModeParams {
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

    pub fn new(acceleration: f64, omega: f64, c_light: f64) -> Result<Self> {
        let p = Self {
            acceleration,
            omega,
            c_light,
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        for (name, v) in [
            ("acceleration", self.acceleration),
            ("omega", self.omega),
            ("c_light", self.c_light),
        ] {
            if !(v > 0.0) {
                return Err(Error::domain(name, format!("{v} must be positive")));
            }
        }
        Ok(())
    }
}

/// `r = arctan(exp(−π ω c / a))`
pub fn r_from_physical(pm: &PhysicalModeParams) -> Result<f64> {
    pm.check()?;
    Ok((-PI * pm.omega * pm.c_light / pm.acceleration).exp().atan())
}

/// Accelerated two-qubit state, element by element.
pub fn unruh_apply(rho: &DensityMatrix4, acc: &AccelerationParams) -> DensityMatrix4 {
    DensityMatrix4::from_trusted(unruh_matrix(rho.entries(), acc))
}

pub(crate) fn unruh_matrix(r: &Mat4, acc: &AccelerationParams) -> Mat4 {
    let (ca, sa) = (acc.r_a.cos(), acc.r_a.sin());
    let (cb, sb) = (acc.r_b.cos(), acc.r_b.sin());
    let (ca2, sa2, cb2, sb2) = (ca * ca, sa * sa, cb * cb, sb * sb);

    let mut o = linalg::zeros4();
    o[0][0] = r[0][0] * (ca2 * cb2);
    o[0][1] = r[0][1] * (ca2 * cb);
    o[0][2] = r[0][2] * (ca * cb2);
    o[0][3] = r[0][3] * (ca * cb);
    o[1][1] = (r[1][1] + r[0][0] * sb2) * ca2;
    o[1][2] = r[1][2] * (ca * cb);
    o[1][3] = (r[1][3] + r[0][2] * sb2) * ca;
    o[2][2] = (r[2][2] + r[0][0] * sa2) * cb2;
    o[2][3] = (r[2][3] + r[0][1] * sa2) * cb;
    o[3][3] = (r[1][1] + r[0][0] * sb2) * sa2 + r[2][2] * sb2 + r[3][3];
    fill_lower(&mut o);
    o
}

fn fill_lower(m: &mut Mat4) {
    for i in 0..4 {
        for j in 0..i {
            m[i][j] = m[j][i].conj();
        }
    }
}

/// Kraus pair of the single-qubit acceleration map:
/// `K0 = diag(cos r, 1)`, `K1 = sin r |1⟩⟨0|`.
pub fn unruh_kraus_operators(r: f64) -> [Mat2; 2] {
    let c = Complex64::new(r.cos(), 0.0);
    let s = Complex64::new(r.sin(), 0.0);
    [[[c, ZERO], [ZERO, ONE]], [[ZERO, ZERO], [s, ZERO]]]
}

/// Accelerated state as `Σ_ij (K_i ⊗ K_j) ρ (K_i ⊗ K_j)†`.
pub fn unruh_apply_kraus(rho: &DensityMatrix4, acc: &AccelerationParams) -> DensityMatrix4 {
    let ka = unruh_kraus_operators(acc.r_a);
    let kb = unruh_kraus_operators(acc.r_b);
    let mut out = linalg::zeros4();
    for a in &ka {
        for b in &kb {
            let term = linalg::sandwich4(&kron2(a, b), rho.entries());
            out = linalg::add4(&out, &term);
        }
    }
    DensityMatrix4::from_trusted(out)
}

/// Closed form of the accelerated Werner-family state.
pub fn accelerated_werner(w: &WernerParams, acc: &AccelerationParams) -> Result<DensityMatrix4> {
    qstate::werner(w)?;
    let k = w.coefficients();
    let (ca, sa) = (acc.r_a.cos(), acc.r_a.sin());
    let (cb, sb) = (acc.r_b.cos(), acc.r_b.sin());
    let (ca2, sa2, cb2, sb2) = (ca * ca, sa * sa, cb * cb, sb * sb);

    let mut o = linalg::zeros4();
    o[0][0] = re(ca2 * cb2 * k.a11);
    o[1][1] = re(ca2 * (k.a22 + sb2 * k.a11));
    o[2][2] = re(cb2 * (k.a22 + sa2 * k.a11));
    o[3][3] = re(sa2 * (k.a22 + sb2 * k.a11) + sb2 * k.a22 + k.a11);
    o[0][3] = re(ca * cb * k.a14);
    o[1][2] = re(ca * cb * k.a23);
    fill_lower(&mut o);
    Ok(DensityMatrix4::from_trusted(o))
}

/// Closed form of the accelerated generic pure state.
pub fn accelerated_generic_pure(f: &PureFamilyParams, acc: &AccelerationParams) -> DensityMatrix4 {
    let k = f.coefficients();
    let (b14, b23) = (-k.b11, -k.b22);
    let (ca, sa) = (acc.r_a.cos(), acc.r_a.sin());
    let (cb, sb) = (acc.r_b.cos(), acc.r_b.sin());
    let (ca2, sa2, cb2, sb2) = (ca * ca, sa * sa, cb * cb, sb * sb);

    let mut o = linalg::zeros4();
    o[0][0] = re(ca2 * cb2 * k.b11);
    o[1][1] = re(ca2 * (k.b22 + sb2 * k.b11));
    o[2][2] = re(cb2 * (k.b22 + sa2 * k.b11));
    o[3][3] = re(sa2 * (k.b22 + sb2 * k.b11) + sb2 * k.b22 + k.b11);
    o[0][3] = re(ca * cb * b14);
    o[1][2] = re(ca * cb * b23);
    o[0][1] = re(-ca2 * cb * k.b12);
    o[0][2] = re(ca * cb2 * k.b12);
    o[1][3] = re(ca * (1.0 + sb2) * k.b12);
    o[2][3] = re(-cb * (1.0 + sa2) * k.b12);
    fill_lower(&mut o);
    DensityMatrix4::from_trusted(o)
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Applies `W_a ⊗ W_b` and renormalizes.
///
/// Returns the filtered state together with the success probability
/// `N = Tr[(W_a⊗W_b) ρ (W_a⊗W_b)†]`.
pub fn filter_apply(rho: &DensityMatrix4, fp: &FilterParams) -> Result<(DensityMatrix4, f64)> {
    let w = fp.weights();
    let r = rho.entries();
    let n: f64 = (0..4).map(|i| w[i] * w[i] * r[i][i].re).sum();
    if !(n >= MIN_FILTER_SUCCESS) {
        return Err(Error::DegenerateFilter(n));
    }
    let mut o = linalg::zeros4();
    for i in 0..4 {
        for j in 0..4 {
            o[i][j] = r[i][j] * (w[i] * w[j] / n);
        }
    }
    Ok((DensityMatrix4::from_trusted(o), n))
}

/// The processing order used everywhere: accelerate, then filter.
pub fn accelerate_then_filter(
    rho: &DensityMatrix4,
    acc: &AccelerationParams,
    fp: &FilterParams,
) -> Result<(DensityMatrix4, f64)> {
    filter_apply(&unruh_apply(rho, acc), fp)
}
