//! Vandermonde products and contour condensation of permutation sums.
//!
//! Sums over distinct tuples drawn from a shift set, weighted by reciprocal
//! Vandermonde factors, blow up coefficientwise as shifts merge but stay
//! bounded in aggregate. Rewriting them as multidimensional contour
//! integrals over small circles makes them robustly computable at (or near)
//! coincident shifts; the trapezoid rule on circles is spectrally accurate
//! for analytic integrands.

use crate::defaults::{CONTOUR_NODES, CONTOUR_RADIUS_MAX, MERGE_GAP};
use crate::error::{Error, Result};
use crate::shifts::ShiftSet;
use crate::util;
use crate::C64;

/// Vandermonde product prod_{i<j} (p_j - p_i); 1 for a singleton.
pub fn vandermonde(points: &[C64]) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            acc *= points[j] - points[i];
        }
    }
    acc
}

/// Cross product prod_r prod_s (z_r - a_s).
pub fn cross_vandermonde(zs: &[C64], alphas: &[C64]) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for &z in zs {
        for &a in alphas {
            acc *= z - a;
        }
    }
    acc
}

/// Circles that together encircle each element of a shift set exactly once.
/// Clusters of shifts tighter than the merge gap share a circle.
#[derive(Debug, Clone)]
pub struct ContourSpec {
    pub centers: Vec<C64>,
    pub radii: Vec<f64>,
    pub nodes_per_circle: usize,
}

impl ContourSpec {
    /// Cluster the shifts and choose radii: a third of the distance to the
    /// nearest foreign cluster, capped, but large enough to hold the
    /// cluster with margin.
    pub fn for_shifts(a: &ShiftSet, nodes_per_circle: usize) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Parameter("empty shift set".into()));
        }
        // greedy clustering by the merge gap
        let mut clusters: Vec<Vec<C64>> = Vec::new();
        for &s in a.values() {
            match clusters
                .iter_mut()
                .find(|c| c.iter().any(|&x| (x - s).norm() < MERGE_GAP))
            {
                Some(c) => c.push(s),
                None => clusters.push(vec![s]),
            }
        }
        let centers: Vec<C64> = clusters
            .iter()
            .map(|c| c.iter().sum::<C64>() / c.len() as f64)
            .collect();
        let mut radii = Vec::with_capacity(centers.len());
        for (i, c) in clusters.iter().enumerate() {
            let span = c
                .iter()
                .map(|&x| (x - centers[i]).norm())
                .fold(0.0, f64::max);
            let foreign = clusters
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .flat_map(|(_, other)| other.iter())
                .map(|&x| (x - centers[i]).norm())
                .fold(f64::INFINITY, f64::min);
            let r = (foreign / 3.0).min(CONTOUR_RADIUS_MAX).max(4.0 * span + 1e-7);
            radii.push(r);
        }
        let spec = Self {
            centers,
            radii,
            nodes_per_circle,
        };
        spec.validate(a)?;
        Ok(spec)
    }

    /// Enclosure invariants: every shift inside exactly one circle, every
    /// circle clear of foreign shifts by a radius margin, node count a
    /// power of two >= 64.
    pub fn validate(&self, a: &ShiftSet) -> Result<()> {
        let n = self.nodes_per_circle;
        if n < 64 || n & (n - 1) != 0 {
            return Err(Error::Contour(format!(
                "node count {n} is not a power of two >= 64"
            )));
        }
        if self.centers.len() != self.radii.len() {
            return Err(Error::Contour("centers/radii length mismatch".into()));
        }
        for &s in a.values() {
            let inside = self
                .centers
                .iter()
                .zip(&self.radii)
                .filter(|(&c, &r)| (s - c).norm() < r)
                .count();
            if inside != 1 {
                return Err(Error::Contour(format!(
                    "shift {s} enclosed by {inside} circles (want exactly 1)"
                )));
            }
        }
        for (i, (&ci, &ri)) in self.centers.iter().zip(&self.radii).enumerate() {
            for (j, (&cj, &rj)) in self.centers.iter().zip(&self.radii).enumerate() {
                if i != j && (ci - cj).norm() < ri + rj {
                    return Err(Error::Contour(format!(
                        "circles {i} and {j} overlap"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Flattened trapezoid nodes over the union contour: (point, weight)
    /// with weights normalized so sum w * f(z) = (1/2 pi i) oint f dz.
    fn nodes(&self) -> Vec<(C64, C64)> {
        let n = self.nodes_per_circle;
        let mut out = Vec::with_capacity(n * self.centers.len());
        for (&c, &r) in self.centers.iter().zip(&self.radii) {
            for m in 0..n {
                let theta = 2.0 * std::f64::consts::PI * (m as f64 + 0.5) / n as f64;
                let e = C64::new(0.0, theta).exp();
                out.push((c + r * e, e * (r / n as f64)));
            }
        }
        out
    }
}

/// Condensed permutation sum: for distinct shifts this equals the sum of
/// G(u)/D(u; A-u) over ordered distinct j-tuples from A; at coincident
/// shifts it is the continuous extension of that sum.
///
/// Computed as (-1)^{j(j-1)/2} (1/(2 pi i)^j) oint..oint G(z) D(z)^2 /
/// D(z; A) d^j z over the union contour: collecting residues gives
/// prod_r prod_{a in A - u_r} (u_r - a) = (-1)^{j(j-1)/2} D(u)^2 D(u; A-u),
/// so the raw contour carries that alternating sign relative to the sum.
pub fn condensed_sum_single<G>(g: &G, a: &ShiftSet, j: usize, spec: &ContourSpec) -> Result<C64>
where
    G: Fn(&[C64]) -> C64 + Sync,
{
    if j == 0 {
        return Err(Error::Parameter("need at least one contour variable".into()));
    }
    spec.validate(a)?;
    let nodes = spec.nodes();
    let alphas = a.values();
    let total = nodes.len().pow(j as u32 - 1);
    let outer = util::tree_sum_complex(nodes.len(), |first| {
        let mut acc = C64::new(0.0, 0.0);
        let mut z = vec![C64::new(0.0, 0.0); j];
        let mut idx = vec![0usize; j.saturating_sub(1)];
        z[0] = nodes[first].0;
        for flat in 0..total {
            let mut rest = flat;
            let mut w = nodes[first].1;
            for (d, slot) in idx.iter_mut().enumerate() {
                *slot = rest % nodes.len();
                rest /= nodes.len();
                z[d + 1] = nodes[*slot].0;
                w *= nodes[*slot].1;
            }
            let vd = vandermonde(&z);
            let integrand = g(&z) * vd * vd / cross_vandermonde(&z, alphas);
            acc += integrand * w;
        }
        acc
    });
    let sign = if (j * (j - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(outer * sign)
}

/// The 2k-variable version: j z-variables and (k-j) w-variables, where
/// k = |A|. Equals sum F(u; v)/D(u; v) over tuples with all k entries
/// distinct, extended by continuity at coincident shifts. The residue
/// algebra carries an orientation factor (-1)^{k(k-1)/2}, folded in here.
pub fn condensed_sum_double<F>(f: &F, a: &ShiftSet, j: usize, spec: &ContourSpec) -> Result<C64>
where
    F: Fn(&[C64], &[C64]) -> C64 + Sync,
{
    let k = a.len();
    if j > k {
        return Err(Error::Parameter(format!("j = {j} exceeds |A| = {k}")));
    }
    if j == k {
        // no w-variables: reduces to the single condensation of F(.;[])
        return condensed_sum_single(&|z: &[C64]| f(z, &[]), a, j, spec);
    }
    spec.validate(a)?;
    let nodes = spec.nodes();
    let alphas = a.values();
    let dims = k;
    let total = nodes.len().pow(dims as u32 - 1);
    let outer = util::tree_sum_complex(nodes.len(), |first| {
        let mut acc = C64::new(0.0, 0.0);
        let mut pt = vec![C64::new(0.0, 0.0); dims];
        pt[0] = nodes[first].0;
        for flat in 0..total {
            let mut rest = flat;
            let mut w = nodes[first].1;
            for d in 1..dims {
                let slot = rest % nodes.len();
                rest /= nodes.len();
                pt[d] = nodes[slot].0;
                w *= nodes[slot].1;
            }
            let (z, wv) = pt.split_at(j);
            let dz = vandermonde(z);
            let dw = vandermonde(wv);
            let integrand = f(z, wv) * cross_vandermonde(z, wv) * dz * dz * dw * dw
                / (cross_vandermonde(z, alphas) * cross_vandermonde(wv, alphas));
            acc += integrand * w;
        }
        acc
    });
    let sign = if (k * (k - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(outer * sign)
}

/// Direct sum over ordered distinct j-tuples: sum G(u) / D(u; A - u).
/// Only defined for pairwise distinct shifts.
pub fn direct_sum_single<G>(g: &G, a: &ShiftSet, j: usize) -> C64
where
    G: Fn(&[C64]) -> C64,
{
    let k = a.len();
    let mut acc = C64::new(0.0, 0.0);
    let mut pick = vec![0usize; j];
    loop {
        let distinct = (0..j).all(|d| (0..d).all(|e| pick[e] != pick[d]));
        if distinct {
            let u: Vec<C64> = pick.iter().map(|&i| a.get(i)).collect();
            let rest: Vec<C64> = (0..k)
                .filter(|i| !pick.contains(i))
                .map(|i| a.get(i))
                .collect();
            acc += g(&u) / cross_vandermonde(&u, &rest);
        }
        // odometer
        let mut d = 0;
        loop {
            if d == j {
                return acc;
            }
            pick[d] += 1;
            if pick[d] < k {
                break;
            }
            pick[d] = 0;
            d += 1;
        }
    }
}

/// Direct sum over tuples (u_1..u_j, v_1..v_{k-j}) with all k entries
/// distinct: sum F(u; v) / D(u; v).
pub fn direct_sum_double<F>(f: &F, a: &ShiftSet, j: usize) -> C64
where
    F: Fn(&[C64], &[C64]) -> C64,
{
    let k = a.len();
    let mut acc = C64::new(0.0, 0.0);
    let mut pick = vec![0usize; k];
    loop {
        let distinct = (0..k).all(|d| (0..d).all(|e| pick[e] != pick[d]));
        if distinct {
            let u: Vec<C64> = pick[..j].iter().map(|&i| a.get(i)).collect();
            let v: Vec<C64> = pick[j..].iter().map(|&i| a.get(i)).collect();
            acc += f(&u, &v) / cross_vandermonde(&u, &v);
        }
        let mut d = 0;
        loop {
            if d == k {
                return acc;
            }
            pick[d] += 1;
            if pick[d] < k {
                break;
            }
            pick[d] = 0;
            d += 1;
        }
    }
}
