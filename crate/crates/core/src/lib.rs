pub mod data;
pub mod error;
pub mod golden;
pub mod graph;
pub mod inflation;
pub mod kite;
pub mod orbit;
pub mod pipeline;
pub mod polygon;
pub mod qfield;
pub mod render;
pub mod torus4;
