//! Complex gamma function (Lanczos approximation, g = 7).

use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma(z) for complex z, via Lanczos with reflection for Re z < 1/2.
pub fn gamma(z: C64) -> C64 {
    let pi = std::f64::consts::PI;
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return pi / ((pi * z).sin() * gamma(C64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * pi).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Distance from z to the nearest pole of Gamma (the non-positive integers).
pub fn gamma_pole_distance(z: C64) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let k = z.re.round().min(0.0);
    (z - C64::new(k, 0.0)).norm()
}
