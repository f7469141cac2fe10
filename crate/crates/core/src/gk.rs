//! The multiplicative character-sum function G_k(m) from the Poisson
//! summation formula for quadratic characters, and a numerical check of
//! that formula.
//!
//! For odd m, G_0(m) = phi(m) if m is a perfect square and 0 otherwise.
//! For k != 0, G_k is multiplicative in m with value at p^mu determined by
//! kappa = v_p(k):
//!
//! * 0                          if mu <= kappa, mu odd
//! * phi(p^mu)                  if mu <= kappa, mu even
//! * -p^kappa                   if mu = kappa + 1, mu even
//! * (k p^-kappa / p) p^kappa sqrt(p)   if mu = kappa + 1, mu odd
//! * 0                          if mu >= kappa + 2

use crate::arith::{kronecker, MultTable};
use crate::error::{Error, Result};
use crate::weights::TildePsi;

/// Evaluator of G_k(m) for one fixed odd m, cheap per k. The factor values
/// are cached by (prime index, kappa); kappa above the interesting range
/// never contributes.
pub struct GkEvaluator {
    m: u64,
    factors: Vec<(u64, u32)>,
    phi_m: f64,
    is_square: bool,
    /// cache[i][kappa] for kappa <= mu_i + 1 (the only cases where the
    /// symbol-free part of the factor is determined by kappa alone)
    phi_cache: Vec<Vec<f64>>,
    sqrt_p: Vec<f64>,
}

impl GkEvaluator {
    pub fn new(table: &MultTable, m: u64) -> Result<Self> {
        if m % 2 == 0 {
            return Err(Error::Parameter(format!("G_k needs odd m, got {m}")));
        }
        let f = table.factorize(m)?;
        let phi_m = table.phi(m)? as f64;
        let is_square = f.factors.iter().all(|&(_, e)| e % 2 == 0);
        let mut phi_cache = Vec::new();
        let mut sqrt_p = Vec::new();
        for &(p, mu) in &f.factors {
            let pf = p as f64;
            let mut row = Vec::new();
            for kappa in 0..=mu + 1 {
                let v = if mu <= kappa {
                    if mu % 2 == 1 {
                        0.0
                    } else {
                        pf.powi(mu as i32) - pf.powi(mu as i32 - 1)
                    }
                } else if mu == kappa + 1 {
                    if mu % 2 == 0 {
                        -pf.powi(kappa as i32)
                    } else {
                        // symbol applied at eval time
                        pf.powi(kappa as i32) * pf.sqrt()
                    }
                } else {
                    0.0
                };
                row.push(v);
            }
            phi_cache.push(row);
            sqrt_p.push(pf.sqrt());
        }
        Ok(Self {
            m,
            factors: f.factors,
            phi_m,
            is_square,
            phi_cache,
            sqrt_p,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn eval(&self, k: i64) -> f64 {
        if k == 0 {
            return if self.is_square { self.phi_m } else { 0.0 };
        }
        let mut out = 1.0f64;
        for (i, &(p, mu)) in self.factors.iter().enumerate() {
            // kappa = v_p(k); only kappa <= mu + 1 distinguishes cases
            let mut kappa = 0u32;
            let mut reduced = k;
            let pi = p as i64;
            while reduced % pi == 0 && kappa <= mu {
                reduced /= pi;
                kappa += 1;
            }
            let base = self.phi_cache[i][kappa.min(mu + 1) as usize];
            if base == 0.0 {
                return 0.0;
            }
            out *= base;
            if mu == kappa + 1 && mu % 2 == 1 {
                out *= kronecker(reduced, pi) as f64;
                if reduced % pi == 0 {
                    return 0.0; // kappa was really >= mu + 1
                }
            }
        }
        out
    }
}

/// One-off evaluation of G_k(m).
pub fn g_k(table: &MultTable, k: i64, m: u64) -> Result<f64> {
    Ok(GkEvaluator::new(table, m)?.eval(k))
}

/// Closed form for square index and prime-power argument:
/// G_{p^{2k}}(p^m) = phi(p^m) if m <= 2k and m even, p^{2k + 1/2} if
/// m = 2k + 1, and 0 otherwise.
pub fn g_square_prime_power(k: u32, p: u64, m: u32) -> f64 {
    let pf = p as f64;
    if m % 2 == 0 && m <= 2 * k {
        if m == 0 {
            1.0
        } else {
            pf.powi(m as i32) - pf.powi(m as i32 - 1)
        }
    } else if m == 2 * k + 1 {
        pf.powi(2 * k as i32) * pf.sqrt()
    } else {
        0.0
    }
}

/// Both sides of the Poisson summation formula at truncation Y.
#[derive(Debug, Clone, Copy)]
pub struct PoissonCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// k = 0 part of the right side (with the outer prefactor applied)
    pub rhs_k0: f64,
    pub k_max: i64,
}

impl PoissonCheck {
    pub fn rel_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(1e-300)
    }
}

/// Evaluate both sides of the Poisson formula for the weighted character
/// sum over odd d sieved by squares c^2 | d, c <= Y:
///
/// lhs = sum_{d odd} sum_{c^2|d, c<=Y} mu(c) Psi(d/D) (d/m)
/// rhs = D (2/m)/(2m) sum_{(c,2m)=1, c<=Y} mu(c)/c^2
///         sum_k (-1)^k G_k(m) tilde(Psi)(kD / (2 c^2 m))
///
/// The identity is exact for every Y; the k-sum is extended adaptively
/// until an octave contributes below the configured relative share.
pub fn poisson_check(
    table: &MultTable,
    tilde: &TildePsi,
    d_scale: u64,
    m: u64,
    y: f64,
) -> Result<PoissonCheck> {
    if m % 2 == 0 {
        return Err(Error::Parameter(format!("odd m required, got {m}")));
    }
    let psi = tilde.psi();
    let d_hi = 2 * d_scale;
    if d_hi > table.limit() {
        return Err(Error::Bound {
            value: d_hi,
            bound: table.limit(),
        });
    }
    let df = d_scale as f64;

    // left side
    let mut lhs = 0.0f64;
    let mut c = 1u64;
    while (c as f64) <= y {
        if c % 2 == 1 && table.mobius(c)? != 0 {
            let mu_c = table.mobius(c)? as f64;
            let c2 = c * c;
            let mut b = (d_scale / c2).max(1);
            if b % 2 == 0 {
                b += 1;
            }
            while c2 * b <= d_hi {
                let d = c2 * b;
                let w = psi.eval(d as f64 / df);
                if w != 0.0 {
                    lhs += mu_c * w * kronecker(d as i64, m as i64) as f64;
                }
                b += 2;
            }
        }
        c += 1;
    }

    // right side
    let evaluator = GkEvaluator::new(table, m)?;
    let prefactor = df * kronecker(2, m as i64) as f64 / (2.0 * m as f64);
    let mut rhs_sum = 0.0f64;
    let mut rhs_k0 = 0.0f64;
    let mut k_max = 0i64;
    let mut c = 1u64;
    while (c as f64) <= y {
        if c % 2 == 1 && table.mobius(c)? != 0 {
            // (c, 2m) = 1: c odd and sharing no prime with m
            if num_integer::gcd(c, m) == 1 {
                let mu_c = table.mobius(c)? as f64 / (c * c) as f64;
                let x0 = df / (2.0 * (c * c) as f64 * m as f64);
                let mut inner = evaluator.eval(0) * tilde.eval(0.0);
                rhs_k0 += mu_c * inner;
                let mut k = 1i64;
                let mut octave_end = 2i64;
                loop {
                    let mut octave = 0.0f64;
                    while k < octave_end {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        octave += sign
                            * (evaluator.eval(k) * tilde.eval(k as f64 * x0)
                                + evaluator.eval(-k) * tilde.eval(-(k as f64) * x0));
                        k += 1;
                    }
                    inner += octave;
                    k_max = k_max.max(k - 1);
                    let done_by_support = (k as f64) * x0 > tilde.xmax;
                    // the share criterion only counts once the k-grid has
                    // passed the transform's support scale (sparse G values
                    // make early octaves vanish identically)
                    let done_by_share = (k as f64) * x0 > 16.0
                        && octave.abs()
                            < crate::defaults::K_OCTAVE_REL * inner.abs().max(1e-12);
                    if done_by_support || done_by_share {
                        break;
                    }
                    if k > 50_000_000 {
                        return Err(Error::Convergence(format!(
                            "k-sum for c={c}, m={m} did not settle below k = 5e7"
                        )));
                    }
                    octave_end *= 2;
                }
                rhs_sum += mu_c * inner;
            }
        }
        c += 1;
    }
    Ok(PoissonCheck {
        lhs,
        rhs: prefactor * rhs_sum,
        rhs_k0: prefactor * rhs_k0,
        k_max,
    })
}
