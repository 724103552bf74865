//! Seeded random problems shared by the integration tests.
#![allow(dead_code)]

use matbeta_core::betafns::ScalarGblfArgs;
use matbeta_core::{BetaProblem, Complex64, ComplexMatrix, ExtensionParams, LogMeanWeights, MLParams, QuadConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real `k×k` matrix with entries uniform in `[−s, s]`.
pub fn noise(rng: &mut ChaCha8Rng, k: usize, s: f64) -> ComplexMatrix {
    let data = (0..k * k).map(|_| Complex64::new(rng.gen_range(-s..=s), 0.0)).collect();
    ComplexMatrix::new(k, data).unwrap()
}

/// `c·I + N` with `‖N‖∞ < c − 0.4`, so every eigenvalue has real part above 0.4.
pub fn positive_stable(rng: &mut ChaCha8Rng, k: usize) -> ComplexMatrix {
    let c = rng.gen_range(1.0..2.5);
    let n = noise(rng, k, (c - 0.45) / k as f64);
    n.shift(c)
}

/// Diagonally dominant regulariser with spectrum in the right half plane.
pub fn regulariser(rng: &mut ChaCha8Rng, k: usize) -> ComplexMatrix {
    let c = rng.gen_range(0.2..2.0);
    noise(rng, k, 0.8 * c / k as f64).shift(c)
}

/// A random non-commuting problem of dimension `k`.
pub fn random_problem(rng: &mut ChaCha8Rng, k: usize) -> BetaProblem {
    let phis = [0.5, 0.8, 1.0, 1.5];
    let psis = [1.0, 1.5, 2.0];
    BetaProblem {
        p: positive_stable(rng, k),
        q: positive_stable(rng, k),
        ext: ExtensionParams {
            r: regulariser(rng, k),
            s: regulariser(rng, k),
            eta: rng.gen_range(0.3..1.5),
            xi: rng.gen_range(0.3..1.5),
        },
        ml: MLParams {
            phi: phis[rng.gen_range(0..phis.len())],
            psi: psis[rng.gen_range(0..psis.len())],
        },
        weights: LogMeanWeights {
            a: rng.gen_range(0.3..5.0),
            b: rng.gen_range(0.3..5.0),
        },
        quad: QuadConfig::default(),
    }
}

/// Twenty-five random problems, alternating between 2×2 and 3×3.
pub fn random_suite() -> Vec<BetaProblem> {
    let mut r = rng(0x5eed);
    (0..25).map(|i| random_problem(&mut r, 2 + i % 2)).collect()
}

/// `c₀I + c₁M + c₂M²` for a fixed `M`: a commuting family.
pub fn polynomial_in(m: &ComplexMatrix, c: [f64; 3]) -> ComplexMatrix {
    let m2 = m.matmul(m);
    &(&m.scale_real(c[1]) + &m2.scale_real(c[2])) + &ComplexMatrix::identity(m.dim()).scale_real(c[0])
}

/// A random problem whose `P, Q, R, S` are polynomials in one matrix.
pub fn random_commuting_problem(rng: &mut ChaCha8Rng, k: usize) -> BetaProblem {
    let m = noise(rng, k, 0.3 / k as f64);
    let mut poly = |lo: f64, hi: f64| {
        let c = [rng.gen_range(lo..hi), rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3)];
        polynomial_in(&m, c)
    };
    let (p, q, r, s) = (poly(1.0, 2.5), poly(1.0, 2.5), poly(0.2, 1.5), poly(0.2, 1.5));
    let mut base = random_problem(rng, k);
    base.p = p;
    base.q = q;
    base.ext.r = r;
    base.ext.s = s;
    base
}

fn one(v: f64) -> ComplexMatrix {
    ComplexMatrix::scalar(1, Complex64::new(v, 0.0))
}

/// Random scalar arguments with `p, q ∈ [0.5, 4]`, `r, s ∈ [0, 2]`,
/// `φ ∈ {0.5, 1, 1.5}` and `ψ ∈ {1, 2}`.
pub fn random_scalar_args(rng: &mut ChaCha8Rng) -> ScalarGblfArgs {
    let phis = [0.5, 1.0, 1.5];
    let psis = [1.0, 2.0];
    ScalarGblfArgs {
        a: rng.gen_range(0.3..5.0),
        b: rng.gen_range(0.3..5.0),
        p: Complex64::new(rng.gen_range(0.5..4.0), 0.0),
        q: Complex64::new(rng.gen_range(0.5..4.0), 0.0),
        r: rng.gen_range(0.0..2.0),
        s: rng.gen_range(0.0..2.0),
        phi: phis[rng.gen_range(0..phis.len())],
        psi: psis[rng.gen_range(0..psis.len())],
        eta: rng.gen_range(0.3..1.5),
        xi: rng.gen_range(0.3..1.5),
    }
}

/// The `1×1` problem of `args`, with tight quadrature tolerances.
pub fn scalar_problem(args: &ScalarGblfArgs) -> BetaProblem {
    BetaProblem {
        p: one(args.p.re),
        q: one(args.q.re),
        ext: ExtensionParams {
            r: one(args.r),
            s: one(args.s),
            eta: args.eta,
            xi: args.xi,
        },
        ml: MLParams {
            phi: args.phi,
            psi: args.psi,
        },
        weights: LogMeanWeights { a: args.a, b: args.b },
        quad: QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_level: 16,
            ..QuadConfig::default()
        },
    }
}

/// The twenty scalar problems of the oracle comparison.
pub fn scalar_suite() -> Vec<ScalarGblfArgs> {
    let mut r = rng(0x0_5ca1a);
    (0..20).map(|_| random_scalar_args(&mut r)).collect()
}
