//! Shift sets, the shifted divisor coefficients tau_A, and the associated
//! zeta products.
//!
//! tau_A is defined by prod_a zeta(s + a) = sum tau_A(n) n^{-s}; on prime
//! powers it is the complete homogeneous symmetric polynomial of the local
//! parameters p^{-a}.

use crate::arith::MultTable;
use crate::defaults::POLE_RADIUS;
use crate::error::{Error, Result};
use crate::zeta::{zeta2_em, zeta_em};
use crate::C64;
use num_traits::{One, Zero};

/// Where an element of a shift set came from; bookkeeping only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Original,
    Shifted,
    Negated,
}

/// An ordered multiset of complex shifts. Order is stable so removal and
/// swap operations are well-defined.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSet {
    shifts: Vec<C64>,
    provenance: Vec<Provenance>,
}

impl ShiftSet {
    pub fn new(shifts: Vec<C64>) -> Self {
        let provenance = vec![Provenance::Original; shifts.len()];
        Self { shifts, provenance }
    }

    pub fn from_re(re: &[f64]) -> Self {
        Self::new(re.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.shifts
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn get(&self, i: usize) -> C64 {
        self.shifts[i]
    }

    /// A_s = {a + s : a in A}.
    pub fn shifted(&self, s: C64) -> ShiftSet {
        let provenance = if s.is_zero() {
            self.provenance.clone()
        } else {
            self.provenance
                .iter()
                .map(|&p| {
                    if p == Provenance::Original {
                        Provenance::Shifted
                    } else {
                        p
                    }
                })
                .collect()
        };
        ShiftSet {
            shifts: self.shifts.iter().map(|&a| a + s).collect(),
            provenance,
        }
    }

    /// A - U + U^-: elements at the given indices are replaced by their
    /// negatives (cardinality preserved). Indices must be distinct and in
    /// range.
    pub fn swap_set(&self, swap: &[usize]) -> Result<ShiftSet> {
        let mut seen = vec![false; self.len()];
        for &i in swap {
            if i >= self.len() {
                return Err(Error::Parameter(format!(
                    "swap index {i} out of range for set of size {}",
                    self.len()
                )));
            }
            if seen[i] {
                return Err(Error::Parameter(format!("swap index {i} repeated")));
            }
            seen[i] = true;
        }
        let mut out = self.clone();
        for &i in swap {
            out.shifts[i] = -out.shifts[i];
            out.provenance[i] = Provenance::Negated;
        }
        Ok(out)
    }

    /// A' = A with the element at `idx` removed.
    pub fn removed(&self, idx: usize) -> ShiftSet {
        let mut out = self.clone();
        out.shifts.remove(idx);
        out.provenance.remove(idx);
        out
    }

    /// Append one element.
    pub fn with_extra(&self, value: C64, provenance: Provenance) -> ShiftSet {
        let mut out = self.clone();
        out.shifts.push(value);
        out.provenance.push(provenance);
        out
    }

    /// Smallest pairwise distance (infinity for fewer than two elements).
    pub fn min_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                gap = gap.min((self.shifts[i] - self.shifts[j]).norm());
            }
        }
        gap
    }

    /// All real parts at least `lo` (the continuation domain of the
    /// square-supported series).
    pub fn check_re_lower(&self, lo: f64) -> Result<()> {
        for &a in &self.shifts {
            if a.re < lo {
                return Err(Error::Domain(format!(
                    "shift {a} has Re < {lo} (outside continuation domain)"
                )));
            }
        }
        Ok(())
    }

    /// True if the multiset is closed under complex conjugation.
    pub fn conjugation_closed(&self) -> bool {
        let mut used = vec![false; self.len()];
        'outer: for i in 0..self.len() {
            if used[i] {
                continue;
            }
            let target = self.shifts[i].conj();
            for j in 0..self.len() {
                if !used[j] && (self.shifts[j] - target).norm() < 1e-15 && (i != j || self.shifts[i].im.abs() < 1e-15) {
                    used[i] = true;
                    if i != j {
                        used[j] = true;
                    }
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

/// Complete homogeneous symmetric polynomial h_e of the given values,
/// over any coefficient ring. h_0 = 1.
pub fn hom_sym<R>(xs: &[R], e: usize) -> R
where
    R: Clone + Zero + One + std::ops::Mul<Output = R> + std::ops::Add<Output = R>,
{
    let mut h: Vec<R> = vec![R::zero(); e + 1];
    h[0] = R::one();
    for x in xs {
        for j in 1..=e {
            let add = x.clone() * h[j - 1].clone();
            h[j] = h[j].clone() + add;
        }
    }
    h[e].clone()
}

/// tau_A(p^e): coefficient of p^{-e s} in prod_a (1 - p^{-a} p^{-s})^{-1}.
pub fn tau_prime_power(a: &ShiftSet, p: u64, e: u32) -> C64 {
    let lnp = (p as f64).ln();
    let xs: Vec<C64> = a.values().iter().map(|&al| (-al * lnp).exp()).collect();
    hom_sym(&xs, e as usize)
}

/// Sieved table of tau_A(n) for n <= limit.
pub struct TauTable {
    pub shifts: ShiftSet,
    pub limit: u64,
    values: Vec<C64>,
}

impl TauTable {
    pub fn get(&self, n: u64) -> Result<C64> {
        if n == 0 || n > self.limit {
            return Err(Error::Bound {
                value: n,
                bound: self.limit,
            });
        }
        Ok(self.values[n as usize])
    }
}

/// Build tau_A up to N by multiplicativity over the least-prime-factor
/// sieve. Prime-power values come from the homogeneous recurrence.
pub fn build_tau_table(a: &ShiftSet, n: u64, table: &MultTable) -> Result<TauTable> {
    if n > table.limit() {
        return Err(Error::Bound {
            value: n,
            bound: table.limit(),
        });
    }
    let lnp_cache: std::collections::HashMap<u64, Vec<C64>> = Default::default();
    let mut pp_cache = lnp_cache; // (keyed by p, vec over e)
    let mut values = vec![C64::new(0.0, 0.0); n as usize + 1];
    if n >= 1 {
        values[1] = C64::new(1.0, 0.0);
    }
    for m in 2..=n {
        let f = table.factorize(m)?;
        let (p, e) = f.factors[0];
        let pe = p.pow(e);
        let rest = m / pe;
        let tau_pe = {
            let entry = pp_cache.entry(p).or_default();
            while entry.len() <= e as usize {
                let k = entry.len() as u32;
                entry.push(tau_prime_power(a, p, k));
            }
            entry[e as usize]
        };
        values[m as usize] = tau_pe * values[rest as usize];
    }
    Ok(TauTable {
        shifts: a.clone(),
        limit: n,
        values,
    })
}

/// Values of the shifted zeta products at s.
#[derive(Debug, Clone, Copy)]
pub struct ZetaProducts {
    /// prod_a zeta(s + a)
    pub z_a: C64,
    /// prod_a zeta^[2](s + a)
    pub z_a_odd: C64,
    /// zeta^[2](s)
    pub zeta_odd: C64,
}

/// Z_A(s), Z_A^[2](s) and zeta^[2](s), guarding the poles at s + a = 1.
pub fn zeta_products(a: &ShiftSet, s: C64) -> Result<ZetaProducts> {
    let mut z_a = C64::one();
    let mut z_a_odd = C64::one();
    for &al in a.values() {
        let arg = s + al;
        if (arg - C64::one()).norm() < POLE_RADIUS {
            return Err(Error::Singularity {
                shift: al,
                radius: POLE_RADIUS,
            });
        }
        z_a *= zeta_em(arg);
        z_a_odd *= zeta2_em(arg);
    }
    Ok(ZetaProducts {
        z_a,
        z_a_odd,
        zeta_odd: zeta2_em(s),
    })
}
