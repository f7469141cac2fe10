//! Gauss-Legendre quadrature: fixed-order nodes and an adaptive panel
//! integrator for smooth complex-valued integrands on finite intervals.

use crate::error::{Error, Result};
use crate::C64;
use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

fn rule32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(32))
}

/// Fixed Gauss-Legendre panel of given order on [a, b].
pub fn fixed_panel<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, order: usize) -> C64 {
    let (nodes, weights) = gauss_legendre(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights[..]) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Composite rule: `panels` equal GL-16 panels across [a, b]. Suitable when
/// the oscillation scale of the integrand is known in advance.
pub fn composite<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, panels: usize) -> C64 {
    let (nodes, weights) = rule16();
    let h = (b - a) / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..panels {
        let lo = a + h * k as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in nodes.iter().zip(&weights[..]) {
            acc += f(mid + half * x) * *w;
        }
    }
    acc * (0.5 * (b - a) / panels as f64)
}

/// Adaptive Gauss-Legendre integration of a smooth integrand on [a, b] to
/// absolute tolerance `tol`. Panels are bisected until the GL16-vs-GL32
/// discrepancy on each panel falls below its share of the tolerance.
pub fn adaptive<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, tol: f64) -> Result<C64> {
    let mut acc = C64::new(0.0, 0.0);
    // (lo, hi, tol) work stack
    let mut stack = vec![(a, b, tol.max(1e-300))];
    let mut panels = 0usize;
    while let Some((lo, hi, t)) = stack.pop() {
        panels += 1;
        if panels > 200_000 {
            return Err(Error::Convergence(format!(
                "adaptive quadrature exceeded panel budget on [{a}, {b}]"
            )));
        }
        let coarse = panel(f, lo, hi, rule16());
        let fine = panel(f, lo, hi, rule32());
        if (coarse - fine).norm() <= t || hi - lo < 1e-14 * (b - a).abs() {
            acc += fine;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    Ok(acc)
}

fn panel<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> C64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    for (x, w) in rule.0.iter().zip(&rule.1[..]) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}
