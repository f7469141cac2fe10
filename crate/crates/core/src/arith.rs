//! Exact integer arithmetic: least-prime-factor sieving, multiplicative
//! function tables, Kronecker symbols and fundamental discriminants.

use crate::defaults::SIEVE_BOUND_MAX;
use crate::error::{Error, Result};

/// Canonical factorization of a positive integer, primes increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// p-adic valuation of the value.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Sieved tables of the least prime factor, Mobius function and Euler phi
/// up to a fixed limit. Immutable after construction; all lookups are pure.
pub struct MultTable {
    limit: u64,
    lpf: Vec<u32>,
    primes: Vec<u32>,
    mobius: Vec<i8>,
    phi: Vec<u32>,
}

impl MultTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 1 {
            return Err(Error::Parameter("sieve limit must be >= 1".into()));
        }
        if limit > SIEVE_BOUND_MAX {
            return Err(Error::Bound {
                value: limit,
                bound: SIEVE_BOUND_MAX,
            });
        }
        let n = limit as usize;
        let mut lpf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        let mut mobius = vec![0i8; n + 1];
        let mut phi = vec![0u32; n + 1];
        if n >= 1 {
            mobius[1] = 1;
            phi[1] = 1;
        }
        // Linear sieve: every composite is crossed once by its least prime.
        for i in 2..=n {
            if lpf[i] == 0 {
                lpf[i] = i as u32;
                primes.push(i as u32);
                mobius[i] = -1;
                phi[i] = (i - 1) as u32;
            }
            for &p in &primes {
                let p = p as usize;
                if p > lpf[i] as usize || i * p > n {
                    break;
                }
                lpf[i * p] = p as u32;
                if i % p == 0 {
                    mobius[i * p] = 0;
                    phi[i * p] = phi[i] * p as u32;
                } else {
                    mobius[i * p] = -mobius[i];
                    phi[i * p] = phi[i] * (p - 1) as u32;
                }
            }
        }
        Ok(Self {
            limit,
            lpf,
            primes,
            mobius,
            phi,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n == 0 || n > self.limit {
            return Err(Error::Bound {
                value: n,
                bound: self.limit,
            });
        }
        Ok(n as usize)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        let mut m = self.check(n)?;
        let mut factors = Vec::new();
        while m > 1 {
            let p = self.lpf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization { value: n, factors })
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(self.mobius[self.check(n)?])
    }

    pub fn phi(&self, n: u64) -> Result<u64> {
        Ok(self.phi[self.check(n)?] as u64)
    }

    pub fn is_squarefree(&self, n: u64) -> Result<bool> {
        Ok(self.mobius[self.check(n)?] != 0)
    }

    /// mu^2(2n): true iff 2n is squarefree, i.e. n odd and squarefree.
    pub fn in_family(&self, n: u64) -> Result<bool> {
        Ok(n % 2 == 1 && self.is_squarefree(n)?)
    }
}

/// Kronecker symbol (d/n), defined for all integers.
///
/// Computed by the reciprocity algorithm rather than by table so it works
/// far beyond any sieve bound. Completely multiplicative in n, and equal to
/// the primitive quadratic character chi_d(n) when d is a fundamental
/// discriminant (chi_1 = 1).
pub fn kronecker(d: i64, n: i64) -> i32 {
    let mut a = d;
    let mut b = n;
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut result = 1i32;
    // Pull the even part out of n; each factor 2 contributes (d/2).
    let mut twos = 0u32;
    while b % 2 == 0 {
        b /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        match (a % 8 + 8) % 8 {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0, // a even
        }
    }
    if b < 0 {
        b = -b;
        if a < 0 {
            result = -result;
        }
    }
    // Now b odd and positive: Jacobi-style loop with reciprocity.
    a = a.rem_euclid(b);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if b % 8 == 3 || b % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut b);
        if a % 4 == 3 && b % 4 == 3 {
            result = -result;
        }
        a %= b;
    }
    if b == 1 {
        result
    } else {
        0
    }
}

fn squarefree_small(m: u64) -> bool {
    let mut m = m;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// True iff d is a fundamental discriminant: d = 1, d squarefree with
/// d = 1 mod 4, or d = 4m with m squarefree and m = 2,3 mod 4.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let r4 = d.rem_euclid(4);
    if r4 == 1 {
        return squarefree_small(d.unsigned_abs());
    }
    if r4 == 0 {
        let m = d / 4;
        let m4 = m.rem_euclid(4);
        return (m4 == 2 || m4 == 3) && squarefree_small(m.unsigned_abs());
    }
    false
}

/// The discriminant family {8d : 2d squarefree and positive}, indexed by d.
/// Members are enumerated up to the support of the averaging weight, i.e.
/// all d <= 2D (the weight vanishes beyond x = 2).
#[derive(Debug, Clone)]
pub struct DiscriminantFamily {
    pub scale: u64,
    pub members: Vec<u64>,
}

impl DiscriminantFamily {
    pub fn new(scale: u64, table: &MultTable) -> Result<Self> {
        let hi = 2 * scale;
        if hi > table.limit() {
            return Err(Error::Bound {
                value: hi,
                bound: table.limit(),
            });
        }
        let mut members = Vec::new();
        for d in 1..=hi {
            if table.in_family(d)? {
                members.push(d);
            }
        }
        Ok(Self { scale, members })
    }
}
