//! Exact arithmetic in Z[phi][1/2]: ring operations, sign decisions, the
//! reductions used on the torus and the "a b k" text form.

use penrose_kite::golden::{interpolate, GoldenReal};

fn main() {
    let phi = GoldenReal::phi_pow(1);
    let x = GoldenReal::new(3, -2, 1); // (3 - 2 phi) / 2
    println!("phi^2 = {}  (phi + 1 = {})", phi * phi, phi + GoldenReal::ONE);
    println!("x = {x} ~ {:.6}, sign {}", x.to_f64(), x.signum());

    // a large value that is very close to zero
    let tiny = GoldenReal::new(-165_580_141, 102_334_155, 0);
    // floating point loses it entirely; the exact sign does not
    println!("F40 phi - F41 = {tiny}: f64 says {:.1e}, exact sign {}", tiny.to_f64(), tiny.signum());

    let y = GoldenReal::new(37, 11, 2);
    println!("floor({y}) = {}", y.floor());
    println!("reduce1 -> {}, reduce8 -> {}", y.reduce1(), y.reduce8());
    println!("phi^-1 a + phi^-2 b for a = 1, b = 0: {}", interpolate(GoldenReal::ONE, GoldenReal::ZERO));

    let text = y.to_string();
    let back: GoldenReal = text.parse().expect("parses");
    assert_eq!(back, y);
    println!("\"{text}\" round-trips");
}
