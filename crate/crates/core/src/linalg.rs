//! Small fixed-size complex matrix helpers.
//!
//! Everything here works on stack arrays; the largest object is the 8×8 real
//! embedding used by the Hermitian eigensolver.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = [[Complex64; 2]; 2];
pub type Mat4 = [[Complex64; 4]; 4];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hermiticity tolerance shared by validation and the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

pub fn zeros4() -> Mat4 {
    [[ZERO; 4]; 4]
}

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn matmul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zeros4();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn dagger4(a: &Mat4) -> Mat4 {
    let mut out = zeros4();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// `m · rho · m†`
pub fn sandwich4(m: &Mat4, rho: &Mat4) -> Mat4 {
    matmul4(&matmul4(m, rho), &dagger4(m))
}

/// Kronecker product `a ⊗ b` in the |00⟩,|01⟩,|10⟩,|11⟩ ordering.
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = zeros4();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn trace4(a: &Mat4) -> Complex64 {
    (0..4).map(|i| a[i][i]).sum()
}

pub fn scale4(a: &Mat4, s: f64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

pub fn add4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] += b[i][j];
        }
    }
    out
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff4(a: &Mat4, b: &Mat4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

pub fn hermitian_deviation4(a: &Mat4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in i..4 {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a 4×4 Hermitian matrix, sorted descending.
///
/// The matrix `H = A + iB` is embedded as the real symmetric 8×8 block matrix
/// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
/// doubled. Cyclic Jacobi rotations diagonalize the embedding until the
/// off-diagonal Frobenius norm drops below 1e-13; every second value of the
/// sorted diagonal is then the spectrum of `H`.
pub fn eigenvalues_hermitian4(h: &Mat4) -> Result<[f64; 4]> {
    let dev = hermitian_deviation4(h);
    if !(dev <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian(dev));
    }

    let mut a = [[0.0_f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            // symmetrize so the embedding is exactly symmetric
            let z = 0.5 * (h[i][j] + h[j][i].conj());
            a[i][j] = z.re;
            a[i + 4][j + 4] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
        }
    }
    jacobi_symmetric(&mut a);

    let mut diag: Vec<f64> = (0..8).map(|i| a[i][i]).collect();
    diag.sort_by(|x, y| y.total_cmp(x));
    Ok([diag[0], diag[2], diag[4], diag[6]])
}

fn off_diagonal_norm<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

fn jacobi_symmetric<const N: usize>(a: &mut [[f64; N]; N]) {
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(a) < JACOBI_OFF_TOL {
            return;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
}
