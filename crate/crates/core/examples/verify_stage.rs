//! Run verification stages through the pipeline with a reduced configuration
//! and print each report.

use penrose_kite::data::DataSet;
use penrose_kite::pipeline::{Pipeline, PipelineConfig, Stage};

fn main() {
    let config = PipelineConfig { window: 20, samples: 500, rounds: 6, tiles: Some(40), ..Default::default() };
    let p = Pipeline::new(DataSet::embedded(), config);
    for stage in [Stage::Pinwheel, Stage::Classification, Stage::Genes, Stage::Partition] {
        let r = p.run(stage).expect("stage runs");
        println!("{}", r.headline());
        for line in &r.summary {
            println!("  {line}");
        }
    }
}
