//! Genes of the graph, their dynamical polygons and the special similarities
//! that send each polygon onto its shadow strand.

use penrose_kite::data::DataSet;
use penrose_kite::graph::{trace, LatticePoint, Partition};
use penrose_kite::inflation::{census, gene_records, verify_dynamical_polygon, verify_shadowing};

fn main() {
    let data = DataSet::embedded();
    let partition = Partition::new(data.partition.clone());
    let records = gene_records(&partition, &data).expect("genes");
    for rec in records.iter().take(5) {
        let poly_ok = verify_dynamical_polygon(&partition, &rec.polygon, &rec.arrays).passed();
        let shadow_ok = rec.gamma.is_some_and(|g| verify_shadowing(&partition, &rec.polygon, &g, &rec.shadow));
        println!(
            "gene {:>2} at {}: polygon {poly_ok}, gamma {:?}, shadow {shadow_ok}",
            rec.index, rec.center, rec.gamma
        );
    }
    let with_gamma = records.iter().filter(|r| r.gamma.is_some()).count();
    println!("{with_gamma} of {} genes have a unique similarity", records.len());

    let t = trace(&partition, LatticePoint::new(0, 0), 1, 1 << 10).expect("trace");
    let c = census(&t);
    println!("census on 2^10 steps: {} gene types, {} extended", c.genes.len(), c.extended.len());
}
