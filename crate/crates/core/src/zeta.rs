//! Riemann zeta for complex argument.
//!
//! The workhorse is Euler-Maclaurin summation ([`zeta_em`]), good to roughly
//! machine precision for |Im s| up to a few thousand. A structurally
//! independent alternating-series evaluator ([`zeta_alternating`], Borwein's
//! method) is kept alongside it so functional-equation and continuation
//! checks never compare an implementation against itself.

use crate::error::{Error, Result};
use crate::C64;

/// B_2, B_4, ..., B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler-Maclaurin evaluation of zeta(s) with 12 Bernoulli correction terms.
/// The cutoff scales with |Im s|; valid anywhere except the pole s = 1.
pub fn zeta_em(s: C64) -> C64 {
    if s.re > 40.0 {
        // Dirichlet series converges to machine precision almost immediately.
        let mut acc = C64::new(1.0, 0.0);
        for n in 2..32u32 {
            acc += (-s * (n as f64).ln()).exp();
        }
        return acc;
    }
    let m = (16.0 + 0.8 * s.im.abs()).ceil() as u32;
    let mf = m as f64;
    let mut acc = C64::new(0.0, 0.0);
    for n in 1..m {
        acc += (-s * (n as f64).ln()).exp();
    }
    let m_to_minus_s = (-s * mf.ln()).exp();
    acc += m_to_minus_s * mf / (s - 1.0);
    acc += m_to_minus_s * 0.5;
    // Correction terms B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(1-s-2j).
    let mut rising = s; // s(s+1)...(s+2j-2), updated per term
    let mut factorial = 2.0f64; // (2j)!
    let mut mpow = m_to_minus_s / mf; // M^(-s-2j+1)
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc += rising * *b / factorial * mpow;
        let k = 2.0 * j as f64 + 2.0;
        factorial *= (k + 1.0) * (k + 2.0);
        rising = rising * (s + k - 1.0) * (s + k);
        mpow /= mf * mf;
    }
    acc
}

/// zeta with the Euler factor at 2 removed: (1 - 2^{-s}) zeta(s).
pub fn zeta2_em(s: C64) -> C64 {
    (C64::new(1.0, 0.0) - (-s * std::f64::consts::LN_2).exp()) * zeta_em(s)
}

/// Borwein's alternating-series algorithm. Independent of [`zeta_em`];
/// reliable for moderate |Im s| (the only regime the check suites use it in).
pub fn zeta_alternating(s: C64) -> C64 {
    let n = 64usize;
    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0f64; // i = 0 value of (n+i-1)!/((n-i)!(2i)!) * 4^i, times n later
    d[0] = 1.0;
    for i in 1..=n {
        // ratio between successive i: 4 * (n+i-1)(n-i+1) / ((2i)(2i-1))
        term *= 4.0 * ((n + i - 1) as f64) * ((n - i + 1) as f64)
            / ((2 * i) as f64 * (2 * i - 1) as f64);
        d[i] = d[i - 1] + term;
    }
    for v in d.iter_mut() {
        *v *= n as f64;
    }
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += (d[k] - d[n]) * sign * (-s * ((k + 1) as f64).ln()).exp();
    }
    let denom = C64::new(1.0, 0.0) - ((1.0 - s) * std::f64::consts::LN_2).exp();
    -acc / (d[n] * denom)
}

const SMALL_PRIMES: [u32; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
const MU_SMALL: [i32; 13] = [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];

/// Prime zeta over odd primes, sum over p > 2 of p^{-s}, for Re s > 1.
///
/// Small primes are summed directly; the remainder comes from the Moebius
/// expansion of log zeta with the small-prime Euler factors stripped, which
/// keeps every logarithm close to zero and branch-safe.
pub fn prime_zeta_odd(s: C64) -> Result<C64> {
    if s.re <= 1.02 {
        return Err(Error::Domain(format!(
            "prime zeta needs Re s > 1.02, got {}",
            s.re
        )));
    }
    let mut acc = C64::new(0.0, 0.0);
    for &p in &SMALL_PRIMES[1..] {
        acc += (-s * (p as f64).ln()).exp();
    }
    // j ranges until 31^(-j Re s) is negligible.
    let jmax = ((40.0 / (s.re * (31.0f64).ln())).ceil() as usize).clamp(1, 12);
    for j in 1..=jmax {
        let mu = MU_SMALL[j];
        if mu == 0 {
            continue;
        }
        let js = s * j as f64;
        let mut val = zeta_em(js);
        for &p in &SMALL_PRIMES {
            val *= C64::new(1.0, 0.0) - (-js * (p as f64).ln()).exp();
        }
        acc += val.ln() * (mu as f64 / j as f64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta_em(C64::new(2.0, 0.0)).re - pi * pi / 6.0).abs() < 1e-13);
        assert!((zeta_em(C64::new(4.0, 0.0)).re - pi.powi(4) / 90.0).abs() < 1e-13);
        assert!((zeta_em(C64::new(0.0, 0.0)).re + 0.5).abs() < 1e-13);
        assert!((zeta_em(C64::new(-1.0, 0.0)).re + 1.0 / 12.0).abs() < 1e-13);
        // zeta^[2](2) = (1 - 1/4) zeta(2) = pi^2 / 8
        assert!((zeta2_em(C64::new(2.0, 0.0)).re - pi * pi / 8.0).abs() < 1e-13);
    }

    #[test]
    fn em_matches_alternating_series() {
        let pts = [
            C64::new(0.3, 0.0),
            C64::new(0.5, 14.1),
            C64::new(1.5, -3.0),
            C64::new(2.0, 25.0),
            C64::new(-0.7, 2.0),
            C64::new(0.9, 0.4),
        ];
        for &s in &pts {
            let a = zeta_em(s);
            let b = zeta_alternating(s);
            assert!(
                (a - b).norm() / a.norm().max(1.0) < 1e-12,
                "mismatch at {s}: {a} vs {b}"
            );
        }
        // zeta^[2] factored form against the independent evaluator
        let s = C64::new(0.3, 0.0);
        let direct = zeta2_em(s);
        let oracle =
            (C64::new(1.0, 0.0) - (-s * std::f64::consts::LN_2).exp()) * zeta_alternating(s);
        assert!((direct - oracle).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn prime_zeta_against_direct_sum() {
        // At Re s = 3 the tail beyond 10^5 is below 1e-11.
        let s = C64::new(3.0, 0.7);
        let val = prime_zeta_odd(s).unwrap();
        let t = crate::arith::MultTable::new(100_000).unwrap();
        let mut direct = C64::new(0.0, 0.0);
        for &p in t.primes() {
            if p > 2 {
                direct += (-s * (p as f64).ln()).exp();
            }
        }
        assert!((val - direct).norm() < 1e-10);
        assert!(prime_zeta_odd(C64::new(1.0, 0.0)).is_err());
    }
}
