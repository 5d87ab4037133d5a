//! Outer billiards on the Penrose kite: the first return map to the two
//! horizontal lines, and the pinwheel map built from four strip maps.

use penrose_kite::golden::{GoldenPoint, GoldenReal};
use penrose_kite::kite::{check_pinwheel, pinwheel, Kite};
use penrose_kite::pipeline::pinwheel_samples;

fn main() {
    let kite = Kite::penrose();
    println!("kite parameter A = {} ~ {:.6}", kite.a, kite.a.to_f64());

    let p = GoldenPoint::new(GoldenReal::new(101, -7, 2), GoldenReal::ONE);
    let r = kite.return_map(p).expect("defined");
    println!("return of {:?}: {:?} after {} steps", p.to_f64(), r.point.to_f64(), r.steps);
    println!("pinwheel of the same point: {:?}", pinwheel(p).expect("defined").to_f64());

    let samples = pinwheel_samples(200);
    let rep = check_pinwheel(&kite, &samples);
    println!(
        "{} points: {} mismatches, {} reflection failures, longest orbit {}",
        rep.checked,
        rep.mismatches.len(),
        rep.asymmetric.len(),
        rep.longest_orbit
    );
}
