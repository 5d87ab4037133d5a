//! Excursions of the strand through the origin: basepoints, their Cantor
//! coding, heights by 2-adic valuation, the gap around P3 and the descent
//! argument on the Cantor interval.

use penrose_kite::data::DataSet;
use penrose_kite::graph::{trace, LatticePoint, Partition};
use penrose_kite::orbit::{basepoints, check_basepoints, descent_check, gap_check, heights_by_nu, rising_profile};

fn main() {
    let partition = Partition::new(DataSet::embedded().partition);
    let o = LatticePoint::new(0, 0);
    let back = trace(&partition, o, 0, 1 << 13).expect("backward");
    let fwd = trace(&partition, o, 1, 1 << 12).expect("forward");

    let points: Vec<LatticePoint> = basepoints(&back).into_iter().map(|b| b.1).collect();
    println!("first basepoints {:?}", &points[..points.len().min(6)]);
    let b = check_basepoints(&partition, &points, 4);
    println!(
        "{} basepoints, pieces fit {}, {} coding failures, {} codes checked",
        b.count,
        b.pieces_fit,
        b.coding_failures.len(),
        b.codes_checked
    );

    let profile = rising_profile(&back, &fwd);
    let (by_nu, rising) = heights_by_nu(&profile);
    println!("max heights by nu {by_nu:.1?}, increasing {rising}");

    let gap = gap_check(&partition, 2, 16, 400, (1, 10_000), &[&fwd, &back]);
    println!("gap: min distance {:.6}, {} close samples", gap.min_distance, gap.close.len());

    let d = descent_check(40);
    println!("descent: {} candidates, {} stay in the interval", d.candidates, d.members.len());
}
