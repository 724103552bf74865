//! Real Gamma function (Lanczos, g = 7, 9 coefficients) with reflection.

use std::f64::consts::PI;

const G: f64 = 7.0;
// published digits, kept verbatim
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x == x.floor() {
        return 0.0;
    }
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x); infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    let y = x - 1.0;
    let t = y + G + 0.5;
    let a = lanczos_sum(y);
    let half = t.powf((y + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

/// ln Γ(x) for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / sin_pi(x)).ln() - ln_gamma(1.0 - x);
    }
    let y = x - 1.0;
    let t = y + G + 0.5;
    LN_SQRT_2PI + (y + 0.5) * t.ln() - t + lanczos_sum(y).ln()
}

/// 1/Γ(x), exactly zero at the nonpositive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 170.0 {
        return (-ln_gamma(x)).exp();
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1−x) / π
        let g = gamma(1.0 - x);
        if g.is_finite() {
            return sin_pi(x) * g / PI;
        }
        return sin_pi(x) * (ln_gamma(1.0 - x) - PI.ln()).exp();
    }
    1.0 / gamma(x)
}
