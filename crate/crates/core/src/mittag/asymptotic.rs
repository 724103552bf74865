use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::gamma::recip_gamma;
use super::MLParams;

const MAX_TERMS: usize = 40;

/// Singularities `s*` of `s^{φ−ψ}/(s^φ − z)` on the principal sheet,
/// `s* = |z|^{1/φ} exp(i(arg z + 2πj)/φ)` with `−π < (arg z + 2πj)/φ ≤ π`.
pub(crate) fn poles(z: Complex64, p: &MLParams) -> Vec<Complex64> {
    let theta = z.arg();
    let r = z.norm().powf(1.0 / p.phi);
    let jmin = (-p.phi / 2.0 - theta / TAU).ceil() as i64;
    let jmax = (p.phi / 2.0 - theta / TAU).floor() as i64;
    (jmin..=jmax)
        .map(|j| Complex64::from_polar(r, (theta + TAU * j as f64) / p.phi))
        .filter(|s| {
            let ang = s.arg();
            ang > -PI && ang <= PI
        })
        .collect()
}

/// Residue of `e^s s^{φ−ψ}/(s^φ − z)` at a pole: `s^{1−ψ} e^s / φ`.
pub(crate) fn residue(s: Complex64, p: &MLParams) -> Complex64 {
    if s.re < -745.0 {
        return Complex64::new(0.0, 0.0);
    }
    s.powf(1.0 - p.psi) * s.exp() / p.phi
}

/// Pole contributions plus the optimally truncated algebraic series.
pub(crate) fn expansion(z: Complex64, p: &MLParams) -> Complex64 {
    let poles: Complex64 = poles(z, p).into_iter().map(|s| residue(s, p)).sum();

    let inv = z.inv();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..=MAX_TERMS {
        zk *= inv;
        let g = recip_gamma(p.psi - p.phi * k as f64);
        if g == 0.0 {
            continue;
        }
        let term = zk * g;
        let mag = term.norm();
        if mag > last {
            break;
        }
        last = mag;
        sum += term;
        if mag <= 1e-18 * sum.norm() {
            break;
        }
    }
    poles - sum
}
