//! Smooth compactly supported test weights and their transforms.
//!
//! Two concrete weights are fixed so that all numerical output is
//! reproducible: the bump `psi(x) = exp(-1/((x-1)(2-x)))` on [1, 2], and a
//! plateau weight `w` approximating the indicator of (0, 1], equal to 1 on
//! [2 delta, 1 - delta] with normalized bump-integral smoothstep ramps.
//!
//! Transforms provided: the Mellin transform `F(s) = int F(u) u^{s-1} du`,
//! the combined cosine+sine transform of the bump, and vertical-line grids
//! for contour quadrature against Mellin data.

use crate::error::{Error, Result};
use crate::quad;
use crate::C64;
use rayon::prelude::*;
use std::sync::OnceLock;

// ---------------------------------------------------------------------------
// smoothstep ramp: S(t) = int_0^t b / int_0^1 b,  b(u) = exp(-1/(u(1-u)))
// ---------------------------------------------------------------------------

const RAMP_CELLS: usize = 4096;

struct RampTable {
    /// S at i / RAMP_CELLS
    values: Vec<f64>,
    /// S' = b(t)/B at the same points
    derivs: Vec<f64>,
    total: f64,
}

fn bump01(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        (-1.0 / (u * (1.0 - u))).exp()
    }
}

fn ramp_table() -> &'static RampTable {
    static TABLE: OnceLock<RampTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = RAMP_CELLS;
        let h = 1.0 / n as f64;
        let mut cumulative = vec![0.0f64; n + 1];
        for i in 0..n {
            let lo = i as f64 * h;
            let cell = quad::fixed_panel(|u| C64::new(bump01(u), 0.0), lo, lo + h, 12);
            cumulative[i + 1] = cumulative[i] + cell.re;
        }
        let total = cumulative[n];
        let values: Vec<f64> = cumulative.iter().map(|c| c / total).collect();
        let derivs: Vec<f64> = (0..=n).map(|i| bump01(i as f64 * h) / total).collect();
        RampTable {
            values,
            derivs,
            total,
        }
    })
}

/// Normalized bump-integral smoothstep, monotone C-infinity from 0 to 1.
/// Cubic Hermite interpolation between tabulated cells (the derivative is
/// known in closed form, so each cell is accurate to ~1e-13).
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let table = ramp_table();
    let x = t * RAMP_CELLS as f64;
    let i = (x as usize).min(RAMP_CELLS - 1);
    let u = x - i as f64;
    let h = 1.0 / RAMP_CELLS as f64;
    let (y0, y1) = (table.values[i], table.values[i + 1]);
    let (d0, d1) = (table.derivs[i] * h, table.derivs[i + 1] * h);
    let u2 = u * u;
    let u3 = u2 * u;
    y0 * (2.0 * u3 - 3.0 * u2 + 1.0)
        + d0 * (u3 - 2.0 * u2 + u)
        + y1 * (-2.0 * u3 + 3.0 * u2)
        + d1 * (u3 - u2)
}

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum WeightKind {
    /// exp(-1/((x-1)(2-x))) on (1, 2)
    Bump,
    /// plateau with smoothstep ramps on [delta, 2 delta] and [1-delta, 1]
    Plateau { delta: f64 },
}

/// A fixed C-infinity compactly supported weight with a cheap evaluator.
#[derive(Clone, Debug)]
pub struct SmoothWeight {
    pub support: (f64, f64),
    pub certificate: String,
    kind: WeightKind,
}

impl SmoothWeight {
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            WeightKind::Bump => {
                if x > 1.0 && x < 2.0 {
                    (-1.0 / ((x - 1.0) * (2.0 - x))).exp()
                } else {
                    0.0
                }
            }
            WeightKind::Plateau { delta } => {
                if x <= delta || x >= 1.0 {
                    0.0
                } else if x < 2.0 * delta {
                    smoothstep((x - delta) / delta)
                } else if x <= 1.0 - delta {
                    1.0
                } else {
                    smoothstep((1.0 - x) / delta)
                }
            }
        }
    }
}

/// The bump weight on [1, 2].
pub fn make_psi() -> SmoothWeight {
    SmoothWeight {
        support: (1.0, 2.0),
        certificate: "exp(-1/((x-1)(2-x))) on (1,2); flat to all orders at the endpoints".into(),
        kind: WeightKind::Bump,
    }
}

/// The plateau weight approximating the indicator of (0, 1].
pub fn make_w(delta: f64) -> Result<SmoothWeight> {
    if !(delta > 0.0 && delta < 0.25) {
        return Err(Error::Parameter(format!(
            "ramp width must lie in (0, 1/4), got {delta}"
        )));
    }
    Ok(SmoothWeight {
        support: (delta, 1.0),
        certificate: format!(
            "1 on [{}, {}], normalized bump-integral smoothstep ramps",
            2.0 * delta,
            1.0 - delta
        ),
        kind: WeightKind::Plateau { delta },
    })
}

// ---------------------------------------------------------------------------
// Mellin transform
// ---------------------------------------------------------------------------

/// Mellin transform of a compactly supported weight, entire in s.
/// Oscillation is pre-split so the adaptive integrator starts resolved.
pub fn mellin(f: &SmoothWeight, s: C64) -> Result<C64> {
    let (a0, b0) = f.support;
    let phase = s.im.abs() * (b0 / a0).ln();
    let panels = ((phase / 10.0).ceil() as usize).max(8);
    let mut acc = C64::new(0.0, 0.0);
    let ratio = (b0 / a0).powf(1.0 / panels as f64);
    let mut lo = a0;
    for _ in 0..panels {
        let hi = (lo * ratio).min(b0);
        let g = |u: f64| (s - 1.0).mul_add_exp_ln(u) * f.eval(u);
        acc += quad::adaptive(&g, lo, hi, crate::defaults::QUAD_TOL / panels as f64)?;
        lo = hi;
    }
    Ok(acc)
}

/// Fixed-cost Mellin evaluation used when building grids: composite
/// Gauss-Legendre with panels sized to the oscillation, no adaptivity.
pub fn mellin_fixed(f: &SmoothWeight, s: C64) -> C64 {
    let (a0, b0) = f.support;
    let phase = s.im.abs() * (b0 / a0).ln();
    let panels = ((phase / 8.0).ceil() as usize).max(12);
    quad::composite(
        |u: f64| (s - 1.0).mul_add_exp_ln(u) * f.eval(u),
        a0,
        b0,
        panels,
    )
}

trait PowLn {
    fn mul_add_exp_ln(self, u: f64) -> C64;
}
impl PowLn for C64 {
    /// u^self for positive real u.
    #[inline]
    fn mul_add_exp_ln(self, u: f64) -> C64 {
        (self * u.ln()).exp()
    }
}

// ---------------------------------------------------------------------------
// cosine + sine transform of the bump
// ---------------------------------------------------------------------------

/// tilde(psi)(x) = int psi(u) (cos 2 pi x u + sin 2 pi x u) du, by direct
/// panel quadrature. Exact evaluator; see [`TildePsi`] for the cached form.
pub fn tilde_psi(psi: &SmoothWeight, x: f64) -> f64 {
    let (c, s) = tilde_parts(psi, x.abs());
    if x >= 0.0 {
        c + s
    } else {
        c - s
    }
}

fn tilde_parts(psi: &SmoothWeight, x: f64) -> (f64, f64) {
    let (a0, b0) = psi.support;
    let phase = 2.0 * std::f64::consts::PI * x * (b0 - a0);
    let panels = ((phase / 8.0).ceil() as usize).max(8);
    let omega = 2.0 * std::f64::consts::PI * x;
    let val = quad::composite(
        |u: f64| C64::new(0.0, omega * u).exp() * psi.eval(u),
        a0,
        b0,
        panels,
    );
    (val.re, val.im)
}

/// Chebyshev-panel cache of the cosine and sine transforms of the bump on
/// [0, xmax], where xmax is found by scanning octaves until the transform
/// stays below `threshold`. Immutable after construction.
pub struct TildePsi {
    psi: SmoothWeight,
    panel_width: f64,
    /// per panel: Chebyshev coefficients of (cos part, sin part)
    panels: Vec<(Vec<f64>, Vec<f64>)>,
    pub xmax: f64,
    pub threshold: f64,
}

const CHEB_DEG: usize = 20;

impl TildePsi {
    pub fn build(threshold: f64) -> Result<Self> {
        let psi = make_psi();
        // find xmax: three consecutive octaves below threshold
        let mut x_lo = 8.0f64;
        let mut quiet = 0;
        let mut xmax = x_lo;
        while quiet < crate::defaults::TAIL_OCTAVES {
            if x_lo > 1e5 {
                return Err(Error::Convergence(
                    "cosine+sine transform does not reach threshold below x = 1e5".into(),
                ));
            }
            let mut peak: f64 = 0.0;
            for i in 0..=16 {
                let x = x_lo * (1.0 + i as f64 / 16.0);
                let (c, s) = tilde_parts(&psi, x);
                peak = peak.max(c.abs() + s.abs());
            }
            if peak < threshold {
                quiet += 1;
            } else {
                quiet = 0;
                xmax = 2.0 * x_lo;
            }
            x_lo *= 2.0;
        }
        let width = 0.25f64;
        let n_panels = (xmax / width).ceil() as usize;
        let panels: Vec<(Vec<f64>, Vec<f64>)> = (0..n_panels)
            .into_par_iter()
            .map(|k| {
                let lo = k as f64 * width;
                let mut cvals = [0.0f64; CHEB_DEG + 1];
                let mut svals = [0.0f64; CHEB_DEG + 1];
                for j in 0..=CHEB_DEG {
                    let theta = std::f64::consts::PI * j as f64 / CHEB_DEG as f64;
                    let x = lo + 0.5 * width * (1.0 + theta.cos());
                    let (c, s) = tilde_parts(&psi, x);
                    cvals[j] = c;
                    svals[j] = s;
                }
                (cheb_fit(&cvals), cheb_fit(&svals))
            })
            .collect();
        Ok(Self {
            psi,
            panel_width: width,
            panels,
            xmax,
            threshold,
        })
    }

    /// tilde(psi)(x); 0 beyond the certified cutoff.
    pub fn eval(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax >= self.xmax {
            return 0.0;
        }
        let k = (ax / self.panel_width) as usize;
        let k = k.min(self.panels.len() - 1);
        // map to [-1, 1]; Chebyshev-Lobatto ordering has +1 at j = 0
        let u = 2.0 * (ax - k as f64 * self.panel_width) / self.panel_width - 1.0;
        let (cc, sc) = &self.panels[k];
        let c = cheb_eval(cc, u);
        let s = cheb_eval(sc, u);
        if x >= 0.0 {
            c + s
        } else {
            c - s
        }
    }

    pub fn at_zero(&self) -> f64 {
        self.eval(0.0)
    }

    pub fn psi(&self) -> &SmoothWeight {
        &self.psi
    }
}

/// Chebyshev coefficients from values at Lobatto points x_j = cos(pi j / n).
fn cheb_fit(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    let mut coeffs = vec![0.0f64; n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, v) in values.iter().enumerate() {
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            acc += w * v * (std::f64::consts::PI * (j * k) as f64 / n as f64).cos();
        }
        *c = 2.0 * acc / n as f64;
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    coeffs
}

fn cheb_eval(coeffs: &[f64], u: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    b1 - u * b2
}

// ---------------------------------------------------------------------------
// vertical-line grids
// ---------------------------------------------------------------------------

/// Quadrature data for integrals (1/2 pi i) int_(a) F(s) g(s) ds along a
/// vertical line, with the Mellin data of the weight precomputed at the
/// nodes. Immutable after construction.
pub struct TransformGrid {
    pub a: f64,
    pub truncation: f64,
    pub panel_order: usize,
    pub tail_estimate: f64,
    /// (t, Gauss-Legendre weight, F(a + i t))
    pub nodes: Vec<(f64, f64, C64)>,
}

impl TransformGrid {
    /// Integrate g over the line against the stored transform values:
    /// (1/2 pi i) int F(s) g(s) ds = (1/2 pi) sum w_i F_i g(a + i t_i).
    pub fn integrate<G: Fn(C64, C64) -> C64 + Sync>(&self, g: G) -> C64 {
        let parts: Vec<C64> = self
            .nodes
            .par_iter()
            .with_min_len(64)
            .map(|&(t, w, fv)| g(C64::new(self.a, t), fv) * w)
            .collect();
        crate::util::pairwise(&parts) / (2.0 * std::f64::consts::PI)
    }

    /// Mellin inversion at u: (1/2 pi i) int F(s) u^{-s} ds.
    pub fn inverse_at(&self, u: f64) -> C64 {
        let lnu = u.ln();
        self.integrate(|s, fv| fv * (-s * lnu).exp())
    }

    /// Largest |F| over the last 5% of nodes (used by decay assertions).
    pub fn edge_magnitude(&self) -> f64 {
        let n = self.nodes.len();
        self.nodes[n - n / 20..]
            .iter()
            .map(|&(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Build a vertical-line grid for the Mellin transform of `f` on Re s = a.
///
/// The truncation T is chosen by scanning octaves of int |F(a+it)| dt until
/// three consecutive octaves fall below `tail_tol`; panels are then sized so
/// that downstream integrands with oscillation rate up to `osc_hint`
/// (radians per unit t) stay resolved.
pub fn vertical_line_grid(
    f: &SmoothWeight,
    a: f64,
    tail_tol: f64,
    osc_hint: f64,
) -> Result<TransformGrid> {
    if tail_tol <= 0.0 {
        return Err(Error::Parameter("tail tolerance must be positive".into()));
    }
    let (a0, b0) = f.support;
    let self_osc = a0.ln().abs().max(b0.ln().abs());
    // octave scan
    let mut t_lo = 8.0f64;
    let mut quiet = 0;
    let mut truncation = t_lo;
    let mut octaves: Vec<f64> = Vec::new();
    while quiet < crate::defaults::TAIL_OCTAVES {
        if t_lo > 2.0e5 {
            return Err(Error::Convergence(format!(
                "transform tail of weight does not reach {tail_tol:e} below t = 2e5"
            )));
        }
        let est = octave_integral(f, a, t_lo);
        octaves.push(est);
        if est < tail_tol / crate::defaults::TAIL_OCTAVES as f64 {
            quiet += 1;
        } else {
            quiet = 0;
            truncation = 2.0 * t_lo;
        }
        t_lo *= 2.0;
    }
    let n = octaves.len();
    let ratio = if n >= 2 && octaves[n - 2] > 0.0 {
        (octaves[n - 1] / octaves[n - 2]).min(0.9)
    } else {
        0.5
    };
    let tail_estimate = octaves[n - 1] / (1.0 - ratio);

    let order = 16usize;
    let width = (10.0 / (osc_hint + self_osc + 1e-9)).clamp(1.0 / 64.0, 4.0);
    let panels = ((2.0 * truncation / width).ceil() as usize).max(2);
    if panels * order > 2_000_000 {
        return Err(Error::Budget(format!(
            "vertical grid would need {panels} panels"
        )));
    }
    let (gl_nodes, gl_weights) = quad::gauss_legendre(order);
    let h = 2.0 * truncation / panels as f64;
    let nodes: Vec<(f64, f64, C64)> = (0..panels)
        .into_par_iter()
        .flat_map_iter(|k| {
            let lo = -truncation + k as f64 * h;
            let mid = lo + 0.5 * h;
            let half = 0.5 * h;
            gl_nodes
                .iter()
                .zip(gl_weights.clone())
                .map(move |(x, w)| (mid + half * x, w * half))
                .collect::<Vec<_>>()
                .into_iter()
        })
        .map(|(t, w)| (t, w, mellin_fixed(f, C64::new(a, t))))
        .collect();
    Ok(TransformGrid {
        a,
        truncation,
        panel_order: order,
        tail_estimate,
        nodes,
    })
}

fn octave_integral(f: &SmoothWeight, a: f64, t_lo: f64) -> f64 {
    let samples = 17;
    let h = t_lo / (samples - 1) as f64;
    let mut acc = 0.0;
    for i in 0..samples {
        let t = t_lo + i as f64 * h;
        let w = if i == 0 || i == samples - 1 { 0.5 } else { 1.0 };
        acc += w * mellin_fixed(f, C64::new(a, t)).norm();
    }
    2.0 * acc * h // both signs of t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_pinned_values() {
        let psi = make_psi();
        assert!((psi.eval(1.5) - (-4.0f64).exp()).abs() < 1e-15);
        assert_eq!(psi.eval(1.0), 0.0);
        assert_eq!(psi.eval(3.0), 0.0);
        assert_eq!(psi.eval(0.5), 0.0);
    }

    #[test]
    fn w_plateau_and_ramps() {
        let w = make_w(0.1).unwrap();
        assert_eq!(w.eval(0.5), 1.0);
        assert_eq!(w.eval(1.2), 0.0);
        assert_eq!(w.eval(0.05), 0.0);
        let v = w.eval(0.15);
        assert!(v > 0.0 && v < 1.0);
        // strictly increasing on the ramp
        let mut prev = 0.0;
        for i in 1..20 {
            let x = 0.1 + 0.005 * i as f64;
            let y = w.eval(x);
            assert!(y > prev, "not increasing at {x}");
            prev = y;
        }
        assert!(make_w(0.3).is_err());
        assert!(make_w(0.0).is_err());
    }

    #[test]
    fn smoothstep_matches_direct_quadrature() {
        // oracle: direct adaptive integral of the bump
        let total = quad::adaptive(&|u| C64::new(bump01(u), 0.0), 0.0, 1.0, 1e-14)
            .unwrap()
            .re;
        for &t in &[0.1, 0.3, 0.5, 0.77, 0.95] {
            let oracle = quad::adaptive(&|u| C64::new(bump01(u), 0.0), 0.0, t, 1e-14)
                .unwrap()
                .re
                / total;
            assert!(
                (smoothstep(t) - oracle).abs() < 1e-12,
                "t={t}: {} vs {oracle}",
                smoothstep(t)
            );
        }
    }

    #[test]
    fn w_derivatives_bounded_at_support_edges() {
        // finite-difference derivatives of orders 1..4 stay bounded (and
        // shrink) approaching the flat edges: C-infinity certificate.
        let w = make_w(0.1).unwrap();
        let h = 1e-3;
        for &x in &[0.101, 0.105, 0.995, 0.999] {
            let mut vals = [0.0; 9];
            for (i, v) in vals.iter_mut().enumerate() {
                *v = w.eval(x + (i as f64 - 4.0) * h);
            }
            let d1 = (vals[5] - vals[3]) / (2.0 * h);
            let d2 = (vals[5] - 2.0 * vals[4] + vals[3]) / (h * h);
            let d3 = (vals[6] - 2.0 * vals[5] + 2.0 * vals[3] - vals[2]) / (2.0 * h * h * h);
            let d4 = (vals[6] - 4.0 * vals[5] + 6.0 * vals[4] - 4.0 * vals[3] + vals[2])
                / (h * h * h * h);
            for d in [d1, d2, d3, d4] {
                assert!(d.abs() < 1e9, "unbounded derivative near {x}");
            }
        }
    }

    #[test]
    fn mellin_of_psi_at_one() {
        // int psi: frozen from the adaptive quadrature oracle
        let psi = make_psi();
        let val = mellin(&psi, C64::new(1.0, 0.0)).unwrap();
        assert!((val.re - 7.029858406609576e-3).abs() < 1e-12, "{}", val.re);
        assert!(val.im.abs() < 1e-15);
        // and equals the cosine+sine transform at 0
        assert!((val.re - tilde_psi(&psi, 0.0)).abs() < 1e-12);
    }

    #[test]
    fn mellin_scaling_by_substitution() {
        // Mellin of u -> F(u/N) at s equals N^s F(s).
        let w = make_w(0.1).unwrap();
        let s = C64::new(0.7, 1.3);
        let n = 37.0;
        let scaled = {
            let (a0, b0) = w.support;
            quad::adaptive(
                &|u: f64| ((s - 1.0) * u.ln()).exp() * w.eval(u / n),
                a0 * n,
                b0 * n,
                1e-12,
            )
            .unwrap()
        };
        let direct = mellin(&w, s).unwrap() * (s * n.ln()).exp();
        assert!((scaled - direct).norm() < 1e-9 * direct.norm());
    }

    #[test]
    fn tilde_psi_parity_and_decay() {
        let psi = make_psi();
        let x = 3.7;
        let plus = tilde_psi(&psi, x);
        let minus = tilde_psi(&psi, -x);
        let (c, s) = tilde_parts(&psi, x);
        assert!((plus - (c + s)).abs() < 1e-15);
        assert!((minus - (c - s)).abs() < 1e-15);
        // super-polynomial decay, frozen from the quadrature oracle:
        // relative size 1.0e-4 at x = 10, below 1e-6 of tilde(0) by x = 20
        let t0 = tilde_psi(&psi, 0.0);
        let t10 = tilde_psi(&psi, 10.0).abs();
        assert!(t10 < 2e-4 * t0, "t10/t0 = {}", t10 / t0);
        assert!(tilde_psi(&psi, 20.0).abs() < 1e-6 * t0);
        // decay beats x^{-8} growth across octaves
        let t40 = tilde_psi(&psi, 40.0).abs();
        assert!(t40 < t10 * (10.0f64 / 40.0).powi(8).recip() * 1e-4);
    }

    #[test]
    fn tilde_cache_matches_direct() {
        let cache = TildePsi::build(1e-14).unwrap();
        let psi = make_psi();
        for &x in &[0.0, 0.2, 1.7, 5.3, 11.0, 26.5, -3.3, -17.9] {
            let a = cache.eval(x);
            let b = tilde_psi(&psi, x);
            assert!((a - b).abs() < 1e-11, "x={x}: {a} vs {b}");
        }
        assert!(cache.xmax >= 16.0);
        assert_eq!(cache.eval(cache.xmax + 1.0), 0.0);
    }

    #[test]
    fn psi_mellin_exponential_type_decay() {
        // |psi(a+it)| (1+|t|)^4 bounded on t in [-200, 200] for a in {-1,0,1}
        let psi = make_psi();
        for &a in &[-1.0, 0.0, 1.0] {
            let mut bound: f64 = 0.0;
            for i in 0..=80 {
                let t = -200.0 + 5.0 * i as f64;
                let v = mellin_fixed(&psi, C64::new(a, t)).norm() * (1.0 + t.abs()).powi(4);
                bound = bound.max(v);
            }
            assert!(bound < 1e3, "a={a}: bound {bound}");
        }
    }

    #[test]
    fn grid_inversion_and_line_independence() {
        let w = make_w(0.1).unwrap();
        let g1 = vertical_line_grid(&w, 0.1, 1e-8, 1.0).unwrap();
        assert!(g1.edge_magnitude() < 1e-9);
        for &u in &[0.3, 0.5, 0.9] {
            let rec = g1.inverse_at(u);
            assert!(
                (rec.re - w.eval(u)).abs() < 1e-6 && rec.im.abs() < 1e-8,
                "u={u}: {rec}"
            );
        }
        // Cauchy invariance between lines
        let g2 = vertical_line_grid(&w, 0.3, 1e-8, 1.0).unwrap();
        for &u in &[0.5, 0.9] {
            let d = (g1.inverse_at(u) - g2.inverse_at(u)).norm();
            assert!(d < 1e-7, "u={u}: {d}");
        }
        // node symmetry under t -> -t (weight is real)
        for &(t, _, v) in g1.nodes.iter().take(40) {
            let mirror = g1
                .nodes
                .iter()
                .min_by(|x, y| {
                    (x.0 + t).abs().partial_cmp(&(y.0 + t).abs()).unwrap()
                })
                .unwrap();
            assert!((mirror.2 - v.conj()).norm() < 1e-10);
        }
    }
}
