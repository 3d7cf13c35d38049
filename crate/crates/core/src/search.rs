//! Numerical fiducial search: multi-start minimization of the SIC defect
//! `Σ_(p≠0) (|⟨ψ|D_p ψ⟩|² − 1/(d+1))²` over the unit sphere in `C^d`.
//!
//! The local solver is L-BFGS on the scale-invariant function
//! `g(x) = f(x/‖x‖)` with Armijo backtracking, renormalizing every iterate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::weyl::{
    displace_vector, displacement_overlap, PhaseContext, StateVector, SymplecticIndex,
};

/// Inputs to [`sic_defect`] must have unit norm within this tolerance.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub d: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub target_defect: f64,
    /// Number of L-BFGS correction pairs kept.
    pub memory: usize,
    /// Sufficient-decrease constant of the Armijo test.
    pub armijo: f64,
    /// Step shrink factor per backtrack.
    pub backtrack: f64,
    pub max_backtracks: usize,
}

impl SearchConfig {
    pub fn new(d: usize) -> Self {
        SearchConfig {
            d,
            restarts: 16,
            max_iterations: 3000,
            seed: 0,
            target_defect: 1e-12,
            memory: 8,
            armijo: 1e-4,
            backtrack: 0.5,
            max_backtracks: 60,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub best_vector: StateVector,
    pub best_defect: f64,
    /// Iterations taken by the winning restart.
    pub iterations_used: usize,
    pub best_restart: usize,
    /// `best_defect ≤ target_defect`.
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolishOutcome {
    pub vector: StateVector,
    pub defect: f64,
    /// False when the input was returned unchanged.
    pub improved: bool,
}

/// The defect polynomial at an arbitrary (not necessarily unit) vector.
pub fn defect_value(psi: &[Complex64]) -> f64 {
    let d = psi.len();
    if d <= 1 {
        return 0.0;
    }
    let ctx = PhaseContext::new(d).expect("d ≥ 1");
    defect_value_with(psi, &ctx)
}

fn defect_value_with(psi: &[Complex64], ctx: &PhaseContext) -> f64 {
    let a = 1.0 / (ctx.dim() + 1) as f64;
    SymplecticIndex::nonzero(ctx.dim())
        .map(|p| {
            let r = displacement_overlap(psi, p, ctx).norm_sqr() - a;
            r * r
        })
        .sum()
}

/// Real gradient of [`defect_value`], packed as `∂f/∂Re ψ_k + i ∂f/∂Im ψ_k`.
pub fn defect_gradient(psi: &[Complex64]) -> Vec<Complex64> {
    let d = psi.len();
    if d <= 1 {
        return vec![Complex64::new(0.0, 0.0); d];
    }
    let ctx = PhaseContext::new(d).expect("d ≥ 1");
    value_and_gradient(psi, &ctx).1
}

/// `grad = 2 ∂f/∂ψ̄ = 4 Σ_p (|c_p|² − a)(c̄_p D_p ψ + c_p D_p† ψ)`.
fn value_and_gradient(psi: &[Complex64], ctx: &PhaseContext) -> (f64, Vec<Complex64>) {
    let d = ctx.dim();
    let a = 1.0 / (d + 1) as f64;
    let mut value = 0.0;
    let mut grad = vec![Complex64::new(0.0, 0.0); d];
    for p in SymplecticIndex::nonzero(d) {
        let c = displacement_overlap(psi, p, ctx);
        let r = c.norm_sqr() - a;
        value += r * r;
        let fwd = displace_vector(psi, p, ctx);
        let back = displace_vector(psi, -p, ctx);
        // D_(−p) = D_p†
        for k in 0..d {
            grad[k] += 4.0 * r * (c.conj() * fwd[k] + c * back[k]);
        }
    }
    (value, grad)
}

/// The SIC defect of a unit vector.
pub fn sic_defect(psi: &StateVector) -> Result<f64> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(defect_value(psi.as_slice()))
}

#[inline]
fn real_dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum()
}

fn normalize(v: &mut [Complex64]) {
    let n = real_dot(v, v).sqrt();
    v.iter_mut().for_each(|z| *z /= n);
}

/// Value and tangent gradient of `g` at a unit vector.
fn eval_sphere(x: &[Complex64], ctx: &PhaseContext) -> (f64, Vec<Complex64>) {
    let (f, mut g) = value_and_gradient(x, ctx);
    let radial = real_dot(x, &g);
    g.iter_mut().zip(x).for_each(|(gk, xk)| *gk -= radial * xk);
    (f, g)
}

struct LocalResult {
    x: Vec<Complex64>,
    value: f64,
    iterations: usize,
}

/// Below this the defect is at the double-precision floor.
const VALUE_FLOOR: f64 = 1e-30;

fn minimize(x0: &[Complex64], cfg: &SearchConfig, ctx: &PhaseContext) -> LocalResult {
    let mut x = x0.to_vec();
    normalize(&mut x);
    let (mut f, mut g) = eval_sphere(&x, ctx);
    let mut history: std::collections::VecDeque<(Vec<Complex64>, Vec<Complex64>, f64)> =
        std::collections::VecDeque::with_capacity(cfg.memory);
    let mut iterations = 0;

    while iterations < cfg.max_iterations && f > VALUE_FLOOR {
        let gnorm = real_dot(&g, &g).sqrt();
        if gnorm < 1e-300 {
            break;
        }
        // two-loop recursion
        let mut q: Vec<Complex64> = g.clone();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let alpha = rho * real_dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qk, yk)| *qk -= alpha * yk);
            alphas.push(alpha);
        }
        let gamma = history
            .back()
            .map(|(s, y, _)| real_dot(s, y) / real_dot(y, y))
            .unwrap_or_else(|| 0.1 / gnorm);
        q.iter_mut().for_each(|z| *z *= gamma);
        for ((s, y, rho), alpha) in history.iter().zip(alphas.iter().rev()) {
            let beta = rho * real_dot(y, &q);
            q.iter_mut()
                .zip(s)
                .for_each(|(qk, sk)| *qk += (alpha - beta) * sk);
        }
        let mut dir: Vec<Complex64> = q.into_iter().map(|z| -z).collect();
        let mut slope = real_dot(&g, &dir);
        if slope >= 0.0 {
            history.clear();
            dir = g.iter().map(|z| -z * (0.1 / gnorm)).collect();
            slope = real_dot(&g, &dir);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..cfg.max_backtracks {
            let mut trial: Vec<Complex64> = x.iter().zip(&dir).map(|(a, b)| a + step * b).collect();
            normalize(&mut trial);
            let ft = defect_value_with(&trial, ctx);
            if ft <= f + cfg.armijo * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= cfg.backtrack;
        }
        let Some((x_new, _)) = accepted else {
            break;
        };
        let (f_new, g_new) = eval_sphere(&x_new, ctx);
        iterations += 1;

        let s: Vec<Complex64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<Complex64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = real_dot(&s, &y);
        if sy > 1e-300 {
            if history.len() == cfg.memory {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        let stalled = f_new >= f;
        x = x_new;
        f = f_new;
        g = g_new;
        if stalled {
            break;
        }
    }
    LocalResult {
        x,
        value: f,
        iterations,
    }
}

/// The starting vector of restart `index`: i.i.d. Gaussian real and
/// imaginary parts from stream `index` of a ChaCha8 generator seeded with
/// `seed`.
pub fn random_start(d: usize, seed: u64, index: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    normalize(&mut v);
    v
}

/// Run every restart (in parallel) and keep the lowest defect, ties going
/// to the lower restart index.
pub fn search_fiducial(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if cfg.d == 1 {
        return Ok(SearchOutcome {
            best_vector: StateVector::from_vec(vec![Complex64::new(1.0, 0.0)]),
            best_defect: 0.0,
            iterations_used: 0,
            best_restart: 0,
            converged: true,
        });
    }
    let ctx = PhaseContext::new(cfg.d)?;
    let results: Vec<LocalResult> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|i| minimize(&random_start(cfg.d, cfg.seed, i), cfg, &ctx))
        .collect();
    let (best_restart, best) = results
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value < a.1.value { b } else { a })
        .expect("at least one restart");
    Ok(SearchOutcome {
        converged: best.value <= cfg.target_defect,
        best_defect: best.value,
        iterations_used: best.iterations,
        best_restart,
        best_vector: StateVector::from_vec(best.x),
    })
}

/// Local refinement from `psi`. Returns the input unchanged, flagged as not
/// improved, when the solver cannot lower the defect.
pub fn polish(psi: &StateVector, target: f64) -> PolishOutcome {
    let d = psi.dim();
    let start = psi.normalized();
    let before = defect_value(start.as_slice());
    if d <= 1 {
        return PolishOutcome {
            vector: psi.clone(),
            defect: before,
            improved: false,
        };
    }
    let ctx = PhaseContext::new(d).expect("d ≥ 1");
    let mut cfg = SearchConfig::new(d).with_max_iterations(20_000);
    cfg.target_defect = target;
    let out = minimize(start.as_slice(), &cfg, &ctx);
    if out.value < before {
        PolishOutcome {
            vector: StateVector::from_vec(out.x),
            defect: out.value,
            improved: true,
        }
    } else {
        PolishOutcome {
            vector: psi.clone(),
            defect: before,
            improved: false,
        }
    }
}
