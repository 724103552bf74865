use num_complex::Complex64;

use super::gamma::{ln_gamma, recip_gamma};
use super::MLParams;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 4000;

/// Kahan-compensated complex accumulator.
#[derive(Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Direct summation of `Σ z^k / Γ(φk + ψ)`.
pub(crate) fn taylor(z: Complex64, p: &MLParams) -> Result<Complex64> {
    let log_z = z.ln();
    let mut acc = KahanSum::default();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let arg = p.phi * k as f64 + p.psi;
        let term = if arg < 160.0 && zk.norm() < 1e250 {
            zk * recip_gamma(arg)
        } else {
            (log_z * k as f64 - ln_gamma(arg)).exp()
        };
        acc.add(term);
        zk *= z;

        let mag = term.norm();
        let decreasing = mag <= prev;
        prev = mag;
        if decreasing && mag <= 1e-18 * acc.value().norm().max(1e-300) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(acc.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Evaluation(format!(
        "Mittag-Leffler series at z = {z} did not converge in {MAX_TERMS} terms"
    )))
}
