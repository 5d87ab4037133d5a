//! The arithmetic graph: classify lattice points through the torus
//! partition, follow the strand through the origin and check a window
//! against the billiards dynamics.

use penrose_kite::data::DataSet;
use penrose_kite::graph::{build_graph, check_embedding, map_t, psi, trace, LatticePoint, Partition};
use penrose_kite::kite::Kite;

fn main() {
    let partition = Partition::new(DataSet::embedded().partition);
    let o = LatticePoint::new(0, 0);
    println!("T(0,0) = {}, psi(0,0) ~ {:?}, type {}", map_t(o), psi(o).to_f64(), partition.classify(o).unwrap());

    let t = trace(&partition, o, 1, 20).expect("trace");
    for (v, k) in t.vertices.iter().zip(&t.types).take(8) {
        println!("  {v}  type {k:>2}  T ~ {:.4}", map_t(*v).to_f64());
    }

    let g = build_graph(&partition, &Kite::penrose(), 15).expect("window");
    let e = check_embedding(&g);
    println!(
        "window radius 15: {} points, {} edges, {} mismatches, {} crossings",
        g.points,
        g.edges.len(),
        g.mismatches.len(),
        e.crossings.len()
    );
}
