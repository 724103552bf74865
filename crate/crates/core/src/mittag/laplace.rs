//! Inversion of `s^{φ−ψ}/(s^φ − z)` on an optimal parabolic contour.
//!
//! The contour `s(u) = μ(iu + 1)²` is placed in the region between two
//! consecutive singularities (origin or poles) that needs the fewest nodes;
//! poles to its right contribute through their residues.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::asymptotic::{poles, residue};
use super::MLParams;
use crate::error::{Error, Result};

const TARGET_EPS: f64 = 1e-15;
const MAX_NODES: f64 = 200.0;

struct Contour {
    mu: f64,
    h: f64,
    n: f64,
}

fn log_mach() -> f64 {
    f64::EPSILON.ln()
}

/// Contour between the singularities with parameters `phi_j < phi_j1`.
fn bounded_region(phi_j: f64, phi_j1: f64, pj: f64, qj: f64, mut log_eps: f64) -> Contour {
    let fac = 1.01;
    let f_max = (log_eps - log_mach()).exp();
    let sq_j = phi_j.sqrt();
    let threshold = 2.0 * (log_eps - log_mach()).sqrt();
    let sq_j1 = phi_j1.sqrt().min(threshold - sq_j);

    let mut f_bar = 1.0;
    let bar = if pj < 1e-14 && qj < 1e-14 {
        Some((sq_j, sq_j1))
    } else if pj < 1e-14 {
        let f_min = if sq_j > 0.0 {
            fac * (sq_j / (sq_j1 - sq_j)).powf(qj)
        } else {
            fac
        };
        if f_min < f_max {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fq = f_bar.powf(-1.0 / qj);
            Some((sq_j, (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq)))
        } else {
            None
        }
    } else if qj < 1e-14 {
        let f_min = fac * (sq_j1 / (sq_j1 - sq_j)).powf(pj);
        if f_min < f_max {
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fp = f_bar.powf(-1.0 / pj);
            Some(((2.0 * sq_j + fp * sq_j1) / (2.0 - fp), sq_j1))
        } else {
            None
        }
    } else {
        let f_min = fac * (sq_j + sq_j1) / (sq_j1 - sq_j).powf(pj.max(qj));
        if f_min < f_max {
            let f_min = f_min.max(1.5);
            f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fp = f_bar.powf(-1.0 / pj);
            let fq = f_bar.powf(-1.0 / qj);
            let w = -phi_j1 / log_eps;
            let den = 2.0 + w - (1.0 + w) * fp + fq;
            Some((
                ((2.0 + w + fq) * sq_j + fp * sq_j1) / den,
                (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den,
            ))
        } else {
            None
        }
    };

    let Some((bj, bj1)) = bar else {
        return Contour {
            mu: 0.0,
            h: 0.0,
            n: f64::INFINITY,
        };
    };
    log_eps -= f_bar.ln();
    let w = -bj1 * bj1 / log_eps;
    let mu = (((1.0 + w) * bj + bj1) / (2.0 + w)).powi(2);
    let h = -2.0 * PI / log_eps * (bj1 - bj) / ((1.0 + w) * bj + bj1);
    let n = ((1.0 - log_eps / mu).sqrt() / h).ceil();
    if !(n.is_finite() && h > 0.0 && mu > 0.0) {
        return Contour {
            mu: 0.0,
            h: 0.0,
            n: f64::INFINITY,
        };
    }
    Contour { mu, h, n }
}

/// Contour to the right of the last admissible singularity.
fn unbounded_region(phi_j: f64, pj: f64, log_eps: f64) -> Contour {
    let sq_star = phi_j.sqrt();
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_bar = phibar.sqrt();
    let (f_min, f_max, f_tar): (f64, f64, f64) = (1.0, 10.0, 5.0);

    let mut n;
    let mut a;
    let mut sq_mu;
    let mut iterations = 0;
    loop {
        let log_eps_phi = log_eps / phibar;
        n = (phibar / PI * (1.0 - 1.5 * log_eps_phi + (1.0 - 2.0 * log_eps_phi).sqrt())).ceil();
        a = PI * n / phibar;
        sq_mu = sq_bar * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sq_bar - sq_star) / sq_mu).powf(-pj);
        iterations += 1;
        if pj < 1e-14 || (f_min < fbar && fbar < f_max) || iterations > 100 {
            break;
        }
        sq_bar = f_tar.powf(-1.0 / pj) * sq_mu + sq_star;
        phibar = sq_bar * sq_bar;
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt())
        / (4.0 - 7.0 * a + (1.0 + 12.0 * a).sqrt());

    let threshold = log_eps - log_mach();
    if mu > threshold {
        let q = if pj.abs() < 1e-14 {
            0.0
        } else {
            f_tar.powf(-1.0 / pj) * mu.sqrt()
        };
        let phibar = (q + phi_j.sqrt()).powi(2);
        if phibar < threshold {
            let w = (log_mach() / (log_mach() - log_eps)).sqrt();
            let u = (-phibar / log_mach()).sqrt();
            mu = threshold;
            n = (w * log_eps / 2.0 / PI / (u * w - 1.0)).ceil();
            h = w / n;
        } else {
            n = f64::INFINITY;
            h = 0.0;
        }
    }
    Contour { mu, h, n }
}

pub(crate) fn invert(z: Complex64, p: &MLParams) -> Result<Complex64> {
    // Singularities ordered by the contour parameter (Re s + |s|)/2; the
    // origin is always first.
    let mut sing: Vec<(Complex64, f64)> = poles(z, p)
        .into_iter()
        .map(|s| (s, (s.re + s.norm()) / 2.0))
        .filter(|&(_, ph)| ph > 1e-15)
        .collect();
    sing.sort_by(|a, b| a.1.total_cmp(&b.1));
    sing.insert(0, (Complex64::new(0.0, 0.0), 0.0));
    let count = sing.len();

    let mut phis: Vec<f64> = sing.iter().map(|s| s.1).collect();
    phis.push(f64::INFINITY);
    let strength_p: Vec<f64> = (0..count)
        .map(|j| if j == 0 { (-2.0 * (p.phi - p.psi + 1.0)).max(0.0) } else { 1.0 })
        .collect();
    let strength_q: Vec<f64> = (0..count)
        .map(|j| if j + 1 < count { 1.0 } else { f64::INFINITY })
        .collect();

    let mut log_eps = TARGET_EPS.ln();
    let best = loop {
        let admissible: Vec<usize> = (0..count)
            .filter(|&j| phis[j] < log_eps - log_mach() && phis[j] < phis[j + 1])
            .collect();
        let contours: Vec<(usize, Contour)> = admissible
            .into_iter()
            .map(|j| {
                let c = if j + 1 < count {
                    bounded_region(phis[j], phis[j + 1], strength_p[j], strength_q[j], log_eps)
                } else {
                    unbounded_region(phis[j], strength_p[j], log_eps)
                };
                (j, c)
            })
            .collect();
        let best = contours
            .into_iter()
            .min_by(|a, b| a.1.n.total_cmp(&b.1.n));
        match best {
            Some((j, c)) if c.n <= MAX_NODES => break (j, c),
            _ if log_eps < -2.0 => log_eps += 10f64.ln(),
            _ => {
                return Err(Error::Evaluation(format!(
                    "no admissible inversion contour for E_({}, {})({z})",
                    p.phi, p.psi
                )))
            }
        }
    };
    let (region, contour) = best;

    let n = contour.n as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let u = contour.h * k as f64;
        let s = contour.mu * Complex64::new(1.0, u).powi(2);
        let ds = Complex64::new(-2.0 * contour.mu * u, 2.0 * contour.mu);
        let f = s.powf(p.phi - p.psi) / (s.powf(p.phi) - z);
        let term = s.exp() * f * ds;
        if term.is_finite() {
            sum += term;
        }
    }
    let integral = sum * contour.h / Complex64::new(0.0, 2.0 * PI);
    let residues: Complex64 = sing[region + 1..].iter().map(|&(s, _)| residue(s, p)).sum();
    Ok(integral + residues)
}
