//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (degrees 3, 5, 7, 9, 13 selected from the 1-norm).

use super::ComplexMatrix;
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const THETA: [(usize, f64); 5] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_230e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
    (13, 5.371_920_351_148_152),
];

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn axpy_scaled(acc: &mut ComplexMatrix, m: &ComplexMatrix, c: f64) {
    for (a, b) in acc.as_mut_slice().iter_mut().zip(m.as_slice()) {
        *a += b * c;
    }
}

/// Returns the (U, V) pair of the Padé approximant `r_m = (V − U)⁻¹ (V + U)`.
fn pade_low(a: &ComplexMatrix, coeffs: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let a2 = a.matmul(a);
    let mut u = ComplexMatrix::scalar(n, coeffs[1].into());
    let mut v = ComplexMatrix::scalar(n, coeffs[0].into());
    let mut pow = ComplexMatrix::identity(n);
    for j in (2..coeffs.len()).step_by(2) {
        pow = pow.matmul(&a2);
        axpy_scaled(&mut v, &pow, coeffs[j]);
        if j + 1 < coeffs.len() {
            axpy_scaled(&mut u, &pow, coeffs[j + 1]);
        }
    }
    (a.matmul(&u), v)
}

fn pade13(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let b = &B13;
    let a2 = a.matmul(a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let mut inner_u = ComplexMatrix::zeros(n);
    axpy_scaled(&mut inner_u, &a6, b[13]);
    axpy_scaled(&mut inner_u, &a4, b[11]);
    axpy_scaled(&mut inner_u, &a2, b[9]);
    let mut u = a6.matmul(&inner_u);
    axpy_scaled(&mut u, &a6, b[7]);
    axpy_scaled(&mut u, &a4, b[5]);
    axpy_scaled(&mut u, &a2, b[3]);
    u = u.shift(b[1]);
    let u = a.matmul(&u);

    let mut inner_v = ComplexMatrix::zeros(n);
    axpy_scaled(&mut inner_v, &a6, b[12]);
    axpy_scaled(&mut inner_v, &a4, b[10]);
    axpy_scaled(&mut inner_v, &a2, b[8]);
    let mut v = a6.matmul(&inner_v);
    axpy_scaled(&mut v, &a6, b[6]);
    axpy_scaled(&mut v, &a4, b[4]);
    axpy_scaled(&mut v, &a2, b[2]);
    let v = v.shift(b[0]);
    (u, v)
}

/// Matrix exponential.
pub fn mat_exp(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    let norm = m.one_norm();
    if !norm.is_finite() {
        return Err(Error::Range("matrix exponential of a non-finite matrix".into()));
    }
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    if n == 1 {
        let e = m[(0, 0)].exp();
        if !e.is_finite() {
            return Err(Error::Range(format!("exp({}) overflows", m[(0, 0)])));
        }
        return Ok(ComplexMatrix::scalar(1, e));
    }

    let (u, v, squarings) = match THETA.iter().take(4).find(|(_, th)| norm <= *th) {
        Some(&(deg, _)) => {
            let coeffs: &[f64] = match deg {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let (u, v) = pade_low(m, coeffs);
            (u, v, 0)
        }
        None => {
            let s = (norm / THETA[4].1).log2().ceil().max(0.0) as i32;
            if s > 1100 {
                return Err(Error::Range(format!("matrix exponential overflow (norm {norm:e})")));
            }
            let scaled = m.scale_real(2f64.powi(-s));
            let (u, v) = pade13(&scaled);
            (u, v, s)
        }
    };
    let mut r = (&v - &u).solve(&(&v + &u)).map_err(|_| {
        Error::Range("Padé denominator is singular".into())
    })?;
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    if !r.is_finite() {
        return Err(Error::Range(format!("matrix exponential overflow (norm {norm:e})")));
    }
    Ok(r)
}

/// `t^M = exp(M·ln t)` for real `t > 0`; exactly the identity at `t = 1`.
pub fn real_power(t: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Domain(format!("real_power requires a finite base t > 0, got {t}")));
    }
    if t == 1.0 {
        return Ok(ComplexMatrix::identity(m.dim()));
    }
    mat_exp(&m.scale_real(t.ln()))
}
