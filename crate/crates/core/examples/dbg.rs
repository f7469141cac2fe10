use qtwist::contour::*;
use qtwist::shifts::ShiftSet;
use qtwist::C64;
fn c(re: f64, im: f64) -> C64 { C64::new(re, im) }
fn main() {
    let a = ShiftSet::new(vec![c(0.02, 0.01), c(0.06, -0.03), c(-0.04, 0.02)]);
    let g1 = |_: &[C64]| c(1.0, 0.0);
    println!("direct = {}", direct_sum_single(&g1, &a, 1));
    let spec = ContourSpec::for_shifts(&a, 128).unwrap();
    println!("spec: centers {:?} radii {:?}", spec.centers, spec.radii);
    println!("contour = {}", condensed_sum_single(&g1, &a, 1, &spec).unwrap());
}
