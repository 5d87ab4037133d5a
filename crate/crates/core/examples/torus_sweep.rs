//! The piecewise isometry on the 4-torus: lift a few partition tiles,
//! subdivide them and check that every point follows one itinerary.

use penrose_kite::data::DataSet;
use penrose_kite::graph::Partition;
use penrose_kite::torus4::{itinerary_string, lifted_tiles, verify_partition, ExtensionMap};

fn main() {
    let data = DataSet::embedded();
    let partition = Partition::new(data.partition.clone());
    let maps: [ExtensionMap; 4] = data.extmaps.clone().try_into().expect("four maps");
    for m in &maps {
        println!(
            "map {}: {} dividing points, component distance {:.4}",
            m.index,
            m.breaks.len(),
            m.component_distance()
        );
    }
    let tiles: Vec<_> = lifted_tiles(&partition).into_iter().take(12).collect();
    let rep = verify_partition(&partition, &maps, 6, &tiles);
    for t in &rep.tiles {
        println!(
            "tile {:>2} (polygon {:>2}, sign {:>2}): {} {:?} -> {}",
            t.id,
            t.base,
            t.sign,
            t.itinerary.as_ref().map(itinerary_string).unwrap_or_default(),
            t.displacement,
            if t.passed { "ok" } else { "FAIL" }
        );
    }
}
