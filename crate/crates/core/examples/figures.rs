//! Write the four SVG figures into a directory (the first argument, or the
//! system temp dir).

use std::path::PathBuf;

use penrose_kite::data::DataSet;
use penrose_kite::graph::{build_graph, trace, LatticePoint, Partition};
use penrose_kite::inflation::gene_records;
use penrose_kite::kite::Kite;
use penrose_kite::render;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let data = DataSet::embedded();
    let partition = Partition::new(data.partition.clone());

    let g = build_graph(&partition, &Kite::penrose(), 12).expect("window");
    let t = trace(&partition, LatticePoint::new(0, 0), 1, 400).expect("trace");
    let genes = gene_records(&partition, &data).expect("genes");
    let figures = [
        ("graph-window.svg", render::graph_window(&g, Some(&t), 16.0)),
        ("torus-partition.svg", render::torus_partition(&partition, 600.0)),
        ("dynpoly-overlay.svg", render::dynpoly_overlay(&partition, &data.dynamical, 600.0)),
        ("gene-shadow.svg", render::gene_shadow(&genes[0], 24.0)),
    ];
    for (name, svg) in figures {
        let path = dir.join(name);
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
