//! Two-qubit density matrices and the Bloch-vector / correlation-dyadic
//! parametrization.
//!
//! Basis ordering throughout is |00⟩, |01⟩, |10⟩, |11⟩ with Alice's qubit as
//! the most significant bit. Pauli matrices follow the standard convention
//! `σ_y = [[0, -i], [i, 0]]`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, eigenvalues_hermitian4, hermitian_deviation4, kron2, Mat2, Mat4, ONE, ZERO,
};

/// Trace tolerance applied when a matrix is accepted as a density operator.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as "non-negative".
pub const PSD_TOL: f64 = -1e-10;
/// Slack allowed on Bloch components before they are treated as out of range.
const BLOCH_RANGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn pauli(self) -> Mat2 {
        let i = Complex64::i();
        match self {
            Axis::X => [[ZERO, ONE], [ONE, ZERO]],
            Axis::Y => [[ZERO, -i], [i, ZERO]],
            Axis::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// A validated two-qubit density operator.
///
/// Construction through [`DensityMatrix4::new`] checks Hermiticity (1e-12),
/// unit trace (1e-10) and positive semidefiniteness (smallest eigenvalue
/// ≥ -1e-10). Channel outputs inside this crate are produced by maps that
/// preserve those properties and skip the eigen-decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    entries: Mat4,
}

impl DensityMatrix4 {
    pub fn new(entries: Mat4) -> Result<Self> {
        let dev = hermitian_deviation4(&entries);
        if !(dev <= linalg::HERMITIAN_TOL) {
            return Err(Error::NotHermitian(dev));
        }
        let tr = linalg::trace4(&entries).re;
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::NotUnitTrace(tr));
        }
        let min = eigenvalues_hermitian4(&entries)?[3];
        if min < PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_trusted(entries: Mat4) -> Self {
        debug_assert!(hermitian_deviation4(&entries) <= 1e-9);
        Self { entries }
    }

    pub fn entries(&self) -> &Mat4 {
        &self.entries
    }

    /// Zero-based element access `ρ[i][j]`.
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        linalg::trace4(&self.entries).re
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut sym = self.entries;
        for i in 0..4 {
            sym[i][i] = Complex64::new(sym[i][i].re, 0.0);
            for j in (i + 1)..4 {
                let z = 0.5 * (sym[i][j] + sym[j][i].conj());
                sym[i][j] = z;
                sym[j][i] = z.conj();
            }
        }
        eigenvalues_hermitian4(&sym).expect("symmetrized matrix is Hermitian")
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += self.entries[i][j].norm_sqr();
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix4) -> f64 {
        linalg::max_abs_diff4(&self.entries, &other.entries)
    }

    pub fn maximally_mixed() -> Self {
        let mut m = linalg::zeros4();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        Self { entries: m }
    }

    /// The singlet `(|01⟩ - |10⟩)/√2`.
    pub fn singlet() -> Self {
        let mut m = linalg::zeros4();
        m[1][1] = Complex64::new(0.5, 0.0);
        m[2][2] = Complex64::new(0.5, 0.0);
        m[1][2] = Complex64::new(-0.5, 0.0);
        m[2][1] = Complex64::new(-0.5, 0.0);
        Self { entries: m }
    }

    /// Projector onto computational basis state `k` (0 ↔ |00⟩ … 3 ↔ |11⟩).
    pub fn basis(k: usize) -> Self {
        assert!(k < 4, "basis index {k} out of range");
        let mut m = linalg::zeros4();
        m[k][k] = ONE;
        Self { entries: m }
    }

    /// Projector onto a normalized pure state given by its four amplitudes.
    pub fn from_pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let mut m = linalg::zeros4();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self::new(m)
    }

    /// Reduced state of the kept qubit.
    pub fn partial_trace(&self, keep: Subsystem) -> QubitState {
        let r = &self.entries;
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = match keep {
                    Subsystem::A => r[2 * i][2 * j] + r[2 * i + 1][2 * j + 1],
                    Subsystem::B => r[i][j] + r[i + 2][j + 2],
                };
            }
        }
        QubitState { entries: out }
    }

    /// `Tr[(P_a ⊗ P_b) ρ]` for arbitrary 2×2 operators.
    pub fn expectation(&self, a: &Mat2, b: &Mat2) -> Complex64 {
        let op = kron2(a, b);
        let mut s = ZERO;
        for k in 0..4 {
            for l in 0..4 {
                s += op[k][l] * self.entries[l][k];
            }
        }
        s
    }

    pub fn to_bloch(&self) -> BlochDecomposition {
        let id = linalg::identity2();
        let mut d = BlochDecomposition::default();
        for a in Axis::ALL {
            let i = a.index();
            d.s[i] = self.expectation(&a.pauli(), &id).re;
            d.t[i] = self.expectation(&id, &a.pauli()).re;
            for b in Axis::ALL {
                d.c[i][b.index()] = self.expectation(&a.pauli(), &b.pauli()).re;
            }
        }
        d
    }
}

/// Single-qubit reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    entries: Mat2,
}

impl QubitState {
    pub fn entries(&self) -> &Mat2 {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (self.entries[0][0] + self.entries[1][1]).re
    }

    /// Closed-form spectrum of a Hermitian 2×2, descending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let b = self.entries[0][1];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean + radius, mean - radius]
    }
}

/// Bloch vectors `s` (Alice), `t` (Bob) and correlation dyadic `c`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochDecomposition {
    pub s: [f64; 3],
    pub t: [f64; 3],
    pub c: [[f64; 3]; 3],
}

impl BlochDecomposition {
    pub fn correlations(c: [[f64; 3]; 3]) -> Self {
        Self {
            s: [0.0; 3],
            t: [0.0; 3],
            c,
        }
    }

    fn check_ranges(&self) -> Result<()> {
        let in_range = |v: f64| v.is_finite() && v.abs() <= 1.0 + BLOCH_RANGE_TOL;
        for i in 0..3 {
            if !in_range(self.s[i]) {
                return Err(Error::domain(format!("s[{i}]"), "must lie in [-1, 1]"));
            }
            if !in_range(self.t[i]) {
                return Err(Error::domain(format!("t[{i}]"), "must lie in [-1, 1]"));
            }
            for j in 0..3 {
                if !in_range(self.c[i][j]) {
                    return Err(Error::domain(format!("c[{i}][{j}]"), "must lie in [-1, 1]"));
                }
            }
        }
        Ok(())
    }

    /// `(1/4)(I⊗I + s·σ⊗I + I⊗t·τ + Σ c_ij σ_i⊗τ_j)` without any validation.
    fn expand(&self) -> Mat4 {
        let id = linalg::identity2();
        let mut m = kron2(&id, &id);
        for a in Axis::ALL {
            let i = a.index();
            let p = a.pauli();
            m = linalg::add4(&m, &linalg::scale4(&kron2(&p, &id), self.s[i]));
            m = linalg::add4(&m, &linalg::scale4(&kron2(&id, &p), self.t[i]));
            for b in Axis::ALL {
                let cij = self.c[i][b.index()];
                if cij != 0.0 {
                    m = linalg::add4(&m, &linalg::scale4(&kron2(&p, &b.pauli()), cij));
                }
            }
        }
        linalg::scale4(&m, 0.25)
    }
}

/// Builds ρ from its Bloch decomposition and checks that it is physical.
pub fn from_bloch(d: &BlochDecomposition) -> Result<DensityMatrix4> {
    d.check_ranges()?;
    DensityMatrix4::new(d.expand())
}

/// Diagonal correlation dyadic `diag(c11, c22, c33)` with vanishing Bloch
/// vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerParams {
    pub c11: f64,
    pub c22: f64,
    pub c33: f64,
}

/// Matrix elements of a Werner-family state: the two distinct populations and
/// the two coherences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerCoefficients {
    /// ρ11 = ρ44
    pub a11: f64,
    /// ρ22 = ρ33
    pub a22: f64,
    /// ρ14 = ⟨00|ρ|11⟩
    pub a14: f64,
    /// ρ23 = ⟨01|ρ|10⟩
    pub a23: f64,
}

impl WernerParams {
    pub fn new(c11: f64, c22: f64, c33: f64) -> Result<Self> {
        for (name, v) in [("c11", c11), ("c22", c22), ("c33", c33)] {
            if !(v.is_finite() && (-1.0..=1.0).contains(&v)) {
                return Err(Error::domain(name, format!("{v} not in [-1, 1]")));
            }
        }
        Ok(Self { c11, c22, c33 })
    }

    /// `c11 = c22 = c33 = c`
    pub fn isotropic(c: f64) -> Result<Self> {
        Self::new(c, c, c)
    }

    pub fn coefficients(&self) -> WernerCoefficients {
        // σ_x⊗σ_x contributes +1 to both ρ14 and ρ23, σ_y⊗σ_y contributes
        // -1 to ρ14 and +1 to ρ23.
        WernerCoefficients {
            a11: (1.0 + self.c33) / 4.0,
            a22: (1.0 - self.c33) / 4.0,
            a14: (self.c11 - self.c22) / 4.0,
            a23: (self.c11 + self.c22) / 4.0,
        }
    }

    pub fn bloch(&self) -> BlochDecomposition {
        BlochDecomposition::correlations([
            [self.c11, 0.0, 0.0],
            [0.0, self.c22, 0.0],
            [0.0, 0.0, self.c33],
        ])
    }
}

pub fn werner(w: &WernerParams) -> Result<DensityMatrix4> {
    from_bloch(&w.bloch())
}

/// The one-parameter pure family between the singlet (`q = 1`) and the
/// product state |+⟩|−⟩ (`q = 0`), with `p = √(1 − q²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureFamilyParams {
    q: f64,
    p: f64,
}

/// Nonzero matrix elements of the pure family (up to sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureFamilyCoefficients {
    /// ρ11 = ρ44 = -ρ14
    pub b11: f64,
    /// ρ22 = ρ33 = -ρ23
    pub b22: f64,
    /// ρ13 = ρ24 = -ρ12 = -ρ34
    pub b12: f64,
}

impl PureFamilyParams {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q.is_finite() && (0.0..=1.0).contains(&q)) {
            return Err(Error::domain("q", format!("{q} not in [0, 1]")));
        }
        Ok(Self {
            q,
            p: (1.0 - q * q).max(0.0).sqrt(),
        })
    }

    pub fn from_p(p: f64) -> Result<Self> {
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(Error::domain("p", format!("{p} not in [0, 1]")));
        }
        Ok(Self {
            p,
            q: (1.0 - p * p).max(0.0).sqrt(),
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn coefficients(&self) -> PureFamilyCoefficients {
        PureFamilyCoefficients {
            b11: (1.0 - self.q) / 4.0,
            b22: (1.0 + self.q) / 4.0,
            b12: self.p / 4.0,
        }
    }

    /// `s = (p,0,0)`, `t = (−p,0,0)`, `c = diag(−1, −q, −q)`.
    pub fn bloch(&self) -> BlochDecomposition {
        BlochDecomposition {
            s: [self.p, 0.0, 0.0],
            t: [-self.p, 0.0, 0.0],
            c: [[-1.0, 0.0, 0.0], [0.0, -self.q, 0.0], [0.0, 0.0, -self.q]],
        }
    }
}

pub fn generic_pure(f: &PureFamilyParams) -> DensityMatrix4 {
    // rank one for every q, so skip the PSD eigen-check
    DensityMatrix4::from_trusted(f.bloch().expand())
}

/// Random state `G G† / Tr(G G†)` with `G` a 4×4 matrix of standard complex
/// normal entries.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix4 {
    let mut g = linalg::zeros4();
    for row in g.iter_mut() {
        for v in row.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v = Complex64::new(re, im);
        }
    }
    let ggd = linalg::matmul4(&g, &linalg::dagger4(&g));
    let tr = linalg::trace4(&ggd).re;
    DensityMatrix4::from_trusted(linalg::scale4(&ggd, 1.0 / tr))
}
