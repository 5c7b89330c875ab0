use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::torsion::big_log;
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// Roots of `Σ c_i z^i` (coefficients in ascending order, nonzero leading
/// coefficient): companion eigenvalues polished by Newton steps.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let eig = m
        .try_schur(f64::EPSILON, 200 * n.max(10))
        .and_then(|s| s.eigenvalues())
        .map(|v| v.iter().copied().collect::<Vec<_>>())
        .unwrap_or_else(|| aberth(coeffs));
    eig.into_iter().map(|z| polish(coeffs, z)).collect()
}

/// Aberth–Ehrlich simultaneous iteration, used when QR does not converge.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = 1.0 + coeffs[..n].iter().map(|c| (c / coeffs[n]).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if eval_with_derivative(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// `log|c| + Σ log⁺|λ|` for a complex-coefficient polynomial; tiny leading
/// coefficients relative to the largest are dropped.
fn jensen(coeffs: &[Complex64]) -> f64 {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() <= 1e-13 * scale {
        hi -= 1;
    }
    let mut lo = 0;
    while lo < hi && coeffs[lo].norm() <= 1e-13 * scale {
        lo += 1;
    }
    let c = &coeffs[lo..hi];
    c[c.len() - 1].norm().ln() + complex_roots(c).iter().map(|z| z.norm().ln().max(0.0)).sum::<f64>()
}

/// Mahler measure of a nonzero one-variable Laurent polynomial.
pub fn mahler_1var(p: &LaurentPoly) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != 1 {
        return Err(Error::NotUnivariate);
    }
    let mut total = big_log(&p.content());
    for (factor, mult) in p.square_free_decomposition()? {
        let (_, dense) = factor.to_dense().expect("one variable");
        let coeffs: Vec<Complex64> =
            dense.iter().map(|c| Complex64::new(c.to_f64().expect("finite coefficient"), 0.0)).collect();
        total += f64::from(mult) * jensen(&coeffs);
    }
    Ok(total)
}

/// Value of a multivariable Mahler measure with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MahlerEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub converged: bool,
}

type Terms = Vec<(Vec<i64>, Complex64)>;

/// Mahler measure over the torus: the first variable is integrated exactly
/// by Jensen's formula, the others by adaptive Gauss–Kronrod quadrature.
pub fn mahler_multivar(p: &LaurentPoly, tolerance: f64) -> MahlerEstimate {
    if p.is_zero() {
        return MahlerEstimate { value: f64::NEG_INFINITY, error_bound: 0.0, converged: false };
    }
    if p.nvars() == 1 {
        let value = mahler_1var(p).expect("nonzero one-variable input");
        return MahlerEstimate { value, error_bound: 0.0, converged: true };
    }
    let terms: Terms = p
        .terms()
        .map(|(e, c)| (e.clone(), Complex64::new(c.to_f64().expect("finite coefficient"), 0.0)))
        .collect();
    let (value, error_bound) = integrate_slices(&terms, p.nvars(), tolerance);
    MahlerEstimate { value, error_bound, converged: error_bound <= tolerance }
}

/// Like [`mahler_multivar`] but an error when the tolerance is missed.
pub fn mahler_multivar_strict(p: &LaurentPoly, tolerance: f64) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let est = mahler_multivar(p, tolerance);
    if est.converged {
        Ok(est.value)
    } else {
        Err(Error::ToleranceNotReached { requested: tolerance, achieved: est.error_bound })
    }
}

fn integrate_slices(terms: &Terms, nvars: usize, tol: f64) -> (f64, f64) {
    if nvars == 1 {
        let lo = terms.iter().map(|(e, _)| e[0]).min().unwrap_or(0);
        let hi = terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e[0] - lo) as usize] += c;
        }
        return (jensen(&coeffs), 0.0);
    }
    let last = nvars - 1;
    let slice = |theta: f64| {
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * theta);
        let mut merged: std::collections::BTreeMap<Vec<i64>, Complex64> = Default::default();
        for (e, c) in terms {
            *merged.entry(e[..last].to_vec()).or_default() += c * z.powi(e[last] as i32);
        }
        let reduced: Terms = merged.into_iter().collect();
        integrate_slices(&reduced, last, tol * 0.1).0
    };
    adaptive_gk(&slice, 0.0, 1.0, tol, 0)
}

const GK_NODES: [f64; 8] = [
    0.991455371120812639,
    0.949107912342758525,
    0.864864423359769073,
    0.741531185599394440,
    0.586087235467691130,
    0.405845151377397167,
    0.207784955007898468,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022935322010529225,
    0.063092092629978553,
    0.104790010322250184,
    0.140653259715525919,
    0.169004726639267903,
    0.190350578064785410,
    0.204432940075298892,
    0.209482141084727828,
];
const GAUSS_WEIGHTS: [f64; 4] = [0.129484966168869693, 0.279705391489276668, 0.381830050505118945, 0.417959183673469388];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for i in 0..7 {
        let x = h * GK_NODES[i];
        let s = f(c - x) + f(c + x);
        kronrod += GK_WEIGHTS[i] * s;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth >= 40 || !v.is_finite() {
        return (v, err);
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive_gk(f, a, m, tol * 0.5, depth + 1);
    let (r, er) = adaptive_gk(f, m, b, tol * 0.5, depth + 1);
    (l + r, el + er)
}
