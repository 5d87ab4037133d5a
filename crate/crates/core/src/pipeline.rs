//! The verification stages, their configuration and their reports.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::data::DataSet;
use crate::error::PipelineError;
use crate::golden::{GoldenPoint, GoldenReal};
use crate::graph::{
    build_graph, check_embedding, map_t, partition_tiling, psi_collisions, trace, GraphWindow, LatticePoint, Partition,
    Trace,
};
use crate::inflation::{
    canonical_psi, census, coherence, compute_dynamical_polygon, endpoints_close, gene_records,
    same_polygon_mod_lattice, verify_dynamical_polygon, verify_shadowing, within, GeneRecord,
};
use crate::kite::{check_pinwheel, Kite};
use crate::orbit::{
    basepoints, cantor_step, check_basepoints, descent_check, gap_check, height, heights_by_nu, rising_profile,
};
use crate::torus4::{itinerary_string, lifted_tiles, verify_partition, ExtensionMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Pinwheel,
    Classification,
    Embedding,
    Genes,
    Shadowing,
    Coherence,
    Census,
    Partition,
    Gap,
    Descent,
    Rising,
}

impl Stage {
    pub const ALL: [Stage; 11] = [
        Stage::Pinwheel,
        Stage::Classification,
        Stage::Embedding,
        Stage::Genes,
        Stage::Shadowing,
        Stage::Coherence,
        Stage::Census,
        Stage::Partition,
        Stage::Gap,
        Stage::Descent,
        Stage::Rising,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Pinwheel => "verify-pinwheel",
            Stage::Classification => "verify-classification",
            Stage::Embedding => "verify-embedding",
            Stage::Genes => "verify-genes",
            Stage::Shadowing => "verify-shadowing",
            Stage::Coherence => "verify-coherence",
            Stage::Census => "census",
            Stage::Partition => "verify-partition",
            Stage::Gap => "gap-check",
            Stage::Descent => "descent-check",
            Stage::Rising => "rising-profile",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = PipelineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s || st.name().strip_prefix("verify-") == Some(s))
            .ok_or_else(|| PipelineError::UnknownStage(s.to_string()))
    }
}

/// Sizes of every computation. The defaults are the full desk-scale run.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Lattice window `|x|, |y| <= window` for classification and embedding.
    pub window: i64,
    /// Pinwheel samples per family.
    pub samples: usize,
    /// Subdivision rounds per lifted tile.
    pub rounds: u32,
    /// Only the first this many lifted tiles, when set.
    pub tiles: Option<usize>,
    pub census_depths: Vec<u32>,
    /// Forward trace `2^depth` used for coherence, the gap corollary and the height premise.
    pub forward_depth: u32,
    pub backward_steps: usize,
    pub coherence_genes: usize,
    pub gap_samples: usize,
    pub descent_bound: i128,
    pub code_length: usize,
    pub out: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            window: 50,
            samples: 10_000,
            rounds: 10,
            tiles: None,
            census_depths: vec![10, 13],
            forward_depth: 14,
            backward_steps: 1 << 17,
            coherence_genes: 1024,
            gap_samples: 2000,
            descent_bound: 100,
            code_length: 6,
            out: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub id: String,
    pub detail: String,
    pub reproduce: String,
}

/// Outcome of one stage.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub stage: Stage,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub wall: Duration,
    /// Human-readable lines, free of timings so reruns match.
    pub summary: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl VerificationReport {
    fn new(stage: Stage) -> Self {
        VerificationReport {
            stage,
            checks: 0,
            failures: Vec::new(),
            wall: Duration::ZERO,
            summary: Vec::new(),
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Count one check, recording a failure when `ok` is false.
    fn check(&mut self, ok: bool, id: impl Into<String>, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                id: id.into(),
                detail: detail(),
                reproduce: format!("penrose verify {}", self.stage),
            });
        }
        ok
    }

    fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    fn table(&mut self, header: &[&str]) {
        self.header = header.iter().map(|h| h.to_string()).collect();
    }

    /// One line per stage: status, checks, failures.
    pub fn headline(&self) -> String {
        format!(
            "{} {}: {} checks, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.stage,
            self.checks,
            self.failures.len()
        )
    }

    /// Writes `<stage>.csv` (the table) and `<stage>.txt` (summary and failures).
    pub fn write(&self, dir: &Path) -> Result<(), PipelineError> {
        let io = |file: &Path| {
            let file = file.display().to_string();
            move |source| PipelineError::Io { file, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let csv_path = dir.join(format!("{}.csv", self.stage));
        let mut w = csv::Writer::from_path(&csv_path)?;
        if !self.header.is_empty() {
            w.write_record(&self.header)?;
        }
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush().map_err(io(&csv_path))?;
        let mut text = format!("{}\n", self.headline());
        for line in &self.summary {
            text.push_str(&format!("  {line}\n"));
        }
        for f in &self.failures {
            text.push_str(&format!("  failure {}: {} (rerun: {})\n", f.id, f.detail, f.reproduce));
        }
        let txt = dir.join(format!("{}.txt", self.stage));
        std::fs::write(&txt, text).map_err(io(&txt))
    }
}

/// Evenly spaced points `(i + phi^-1) 2^-e` of `(0, 10)` on both lines, then
/// lattice values `T(x, y)` in `(0, 100)`, alternating lines.
pub fn pinwheel_samples(n: usize) -> Vec<GoldenPoint> {
    let e = (n as f64 / 10.0).log2().ceil().max(0.0) as i32;
    let offset = GoldenReal::phi_pow(-1);
    let mut out = Vec::with_capacity(3 * n);
    for i in 0..n {
        let x = (GoldenReal::int(i as i128) + offset).shift(-e);
        out.push(GoldenPoint::new(x, GoldenReal::ONE));
        out.push(GoldenPoint::new(x, -GoldenReal::ONE));
    }
    let hundred = GoldenReal::int(100);
    let mut col = 0i64;
    let mut lattice = 0;
    while lattice < n {
        // columns 0, 1, -1, 2, -2, ...
        let x = if col % 2 == 0 { -col / 2 } else { col / 2 + 1 };
        col += 1;
        let mut y = (-map_t(LatticePoint::new(x, 0)).to_f64() / 2.0).floor() as i64 - 1;
        while lattice < n && map_t(LatticePoint::new(x, y)) < hundred {
            let t = map_t(LatticePoint::new(x, y));
            if t > GoldenReal::ZERO {
                let eps = if lattice % 2 == 0 { GoldenReal::ONE } else { -GoldenReal::ONE };
                out.push(GoldenPoint::new(t, eps));
                lattice += 1;
            }
            y += 1;
        }
    }
    out
}

/// Data and configuration, with the traces and gene records shared between stages.
pub struct Pipeline {
    pub data: DataSet,
    pub partition: Partition,
    pub config: PipelineConfig,
    records: OnceLock<Vec<GeneRecord>>,
    forward: OnceLock<Trace>,
    backward: OnceLock<Trace>,
    graph: OnceLock<GraphWindow>,
}

fn cached<T>(cell: &OnceLock<T>, make: impl FnOnce() -> Result<T, PipelineError>) -> Result<&T, PipelineError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = make()?;
    Ok(cell.get_or_init(|| v))
}

fn p(pt: LatticePoint) -> String {
    format!("({},{})", pt.x, pt.y)
}

impl Pipeline {
    pub fn new(data: DataSet, config: PipelineConfig) -> Self {
        let partition = Partition::new(data.partition.clone());
        Pipeline {
            data,
            partition,
            config,
            records: OnceLock::new(),
            forward: OnceLock::new(),
            backward: OnceLock::new(),
            graph: OnceLock::new(),
        }
    }

    pub fn records(&self) -> Result<&[GeneRecord], PipelineError> {
        cached(&self.records, || Ok(gene_records(&self.partition, &self.data)?)).map(|v| v.as_slice())
    }

    /// `Gamma_0` forward from `(0,0)`, `2^forward_depth` steps.
    pub fn forward(&self) -> Result<&Trace, PipelineError> {
        cached(&self.forward, || {
            Ok(trace(&self.partition, LatticePoint::new(0, 0), 1, 1 << self.config.forward_depth)?)
        })
    }

    pub fn backward(&self) -> Result<&Trace, PipelineError> {
        cached(&self.backward, || Ok(trace(&self.partition, LatticePoint::new(0, 0), 0, self.config.backward_steps)?))
    }

    pub fn graph(&self) -> Result<&GraphWindow, PipelineError> {
        cached(&self.graph, || Ok(build_graph(&self.partition, &Kite::penrose(), self.config.window)?))
    }

    fn maps(&self) -> [ExtensionMap; 4] {
        [0, 1, 2, 3].map(|i| self.data.extmaps[i].clone())
    }

    pub fn run(&self, stage: Stage) -> Result<VerificationReport, PipelineError> {
        let start = Instant::now();
        let mut r = VerificationReport::new(stage);
        match stage {
            Stage::Pinwheel => self.pinwheel(&mut r),
            Stage::Classification => self.classification(&mut r)?,
            Stage::Embedding => self.embedding(&mut r)?,
            Stage::Genes => self.genes(&mut r)?,
            Stage::Shadowing => self.shadowing(&mut r)?,
            Stage::Coherence => self.coherence(&mut r)?,
            Stage::Census => self.census(&mut r)?,
            Stage::Partition => self.torus_partition(&mut r),
            Stage::Gap => self.gap(&mut r)?,
            Stage::Descent => self.descent(&mut r),
            Stage::Rising => self.rising(&mut r)?,
        }
        r.wall = start.elapsed();
        if let Some(dir) = &self.config.out {
            r.write(dir)?;
        }
        Ok(r)
    }

    pub fn run_all(&self) -> Result<Vec<VerificationReport>, PipelineError> {
        Stage::ALL.into_iter().map(|s| self.run(s)).collect()
    }

    fn pinwheel(&self, r: &mut VerificationReport) {
        let samples = pinwheel_samples(self.config.samples);
        let rep = check_pinwheel(&Kite::penrose(), &samples);
        r.table(&["x", "line", "problem"]);
        for (pt, why) in &rep.mismatches {
            r.check(false, format!("{:?}", pt), || why.clone());
            r.rows.push(vec![pt.x.to_string(), pt.y.to_string(), why.clone()]);
        }
        r.checks += rep.checked - rep.mismatches.len();
        for pt in &rep.asymmetric {
            r.check(false, format!("{:?}", pt), || "reflection symmetry fails".into());
            r.rows.push(vec![pt.x.to_string(), pt.y.to_string(), "asymmetric".into()]);
        }
        r.checks += rep.checked - rep.asymmetric.len();
        r.note(format!(
            "{} sample points, {} mismatches, {} asymmetric",
            rep.checked,
            rep.mismatches.len(),
            rep.asymmetric.len()
        ));
        r.note(format!(
            "{} distinct horizontal displacements, longest orbit {} steps",
            rep.displacements, rep.longest_orbit
        ));
    }

    fn classification(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let g = self.graph()?;
        r.table(&["x", "y", "type"]);
        let mut pts: Vec<_> = g.types.iter().collect();
        pts.sort();
        for (pt, k) in pts {
            r.rows.push(vec![pt.x.to_string(), pt.y.to_string(), k.to_string()]);
        }
        r.checks += g.points - g.mismatches.len();
        for m in &g.mismatches {
            r.check(false, p(*m), || "partition type disagrees with the return map".into());
        }
        for (a, b) in &g.one_way {
            r.check(false, format!("{}-{}", p(*a), p(*b)), || "edge not returned".into());
        }
        for v in &g.bad_valence {
            r.check(false, p(*v), || "valence is neither 0 nor 2".into());
        }
        let tiling = partition_tiling(&self.partition);
        r.check(tiling.area == GoldenReal::ONE, "area", || format!("areas sum to {:?}", tiling.area));
        r.check(tiling.overlaps.is_empty(), "overlap", || format!("overlapping interiors {:?}", tiling.overlaps));
        r.check(tiling.non_convex.is_empty(), "convexity", || format!("non-convex {:?}", tiling.non_convex));
        let coll = psi_collisions(self.config.window);
        r.check(coll.is_empty(), "injectivity", || format!("psi collisions {coll:?}"));
        for (pt, want) in [(LatticePoint::new(3, 4), 11), (LatticePoint::new(0, 0), 3)] {
            let got = g.types.get(&pt).copied();
            r.check(got == Some(want), p(pt), || format!("type {got:?}, expected {want}"));
        }
        r.note(format!(
            "window |x|,|y| <= {}: {} points of H, {} edges, {} mismatches",
            g.radius,
            g.points,
            g.edges.len(),
            g.mismatches.len()
        ));
        r.note(format!(
            "partition area {:?}, {} overlapping pairs, {} psi collisions",
            tiling.area,
            tiling.overlaps.len(),
            coll.len()
        ));
        Ok(())
    }

    fn embedding(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let g = self.graph()?;
        let e = check_embedding(g);
        r.table(&["first", "second"]);
        r.checks += 1;
        for c in &e.type_pair_hits {
            r.check(false, p(*c), || "both diagonals of a unit square are edges".into());
        }
        for (s, t) in &e.crossings {
            r.check(false, format!("{}-{}", p(s.0), p(s.1)), || format!("crosses {}-{}", p(t.0), p(t.1)));
            r.rows.push(vec![format!("{}-{}", p(s.0), p(s.1)), format!("{}-{}", p(t.0), p(t.1))]);
        }
        r.note(format!(
            "{} edges, {} squares with both diagonals, {} crossings",
            e.edges,
            e.type_pair_hits.len(),
            e.crossings.len()
        ));
        Ok(())
    }

    fn genes(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let quarter_sq = GoldenReal::new(1, 0, 4);
        r.table(&["gene", "center", "type", "vertices_closed", "midpoints_open", "recomputed", "inside_cell", "small"]);
        let mut good = 0;
        for rec in self.records()? {
            let chk = verify_dynamical_polygon(&self.partition, &rec.polygon, &rec.arrays);
            let recomputed = compute_dynamical_polygon(&self.partition, &rec.arrays)
                .is_some_and(|q| same_polygon_mod_lattice(&q, &rec.polygon));
            let ty = rec.arrays.left[0].ty;
            let cell = self.partition.polygon(ty);
            let inside = (-3..=3i128)
                .flat_map(|i| (-3..=3i128).map(move |j| (i, j)))
                .any(|(i, j)| rec.polygon.vertices.iter().all(|v| cell.contains_closed(*v + GoldenPoint::ints(i, j))));
            let small = rec
                .polygon
                .vertices
                .iter()
                .all(|a| rec.polygon.vertices.iter().all(|b| (*a - *b).norm_sq() < quarter_sq));
            let id = format!("gene {}", rec.index);
            let ok = [
                r.check(chk.vertices_ok, id.clone(), || "a vertex fails the closed test".into()),
                r.check(chk.edges_ok, id.clone(), || "an edge midpoint passes the open test".into()),
                r.check(recomputed, id.clone(), || "recomputed polygon differs".into()),
                r.check(inside, id.clone(), || format!("not inside partition polygon {ty}")),
                r.check(small, id, || "diameter not below 1/4".into()),
            ];
            if ok.iter().all(|b| *b) {
                good += 1;
            }
            r.rows.push(vec![
                rec.index.to_string(),
                p(rec.center),
                ty.to_string(),
                chk.vertices_ok.to_string(),
                chk.edges_ok.to_string(),
                recomputed.to_string(),
                inside.to_string(),
                small.to_string(),
            ]);
        }
        r.note(format!("{good}/{} dynamical polygons verified", self.records()?.len()));
        Ok(())
    }

    fn shadowing(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        r.table(&["gene", "m", "n", "shadowing", "middle_within_3", "ends_within_3"]);
        let mut good = 0;
        for rec in self.records()? {
            let id = format!("gene {}", rec.index);
            let found = r.check(rec.gamma.is_some(), id.clone(), || "no similarity with |m|,|n| <= 7".into());
            let shadows = rec.gamma.is_some_and(|g| verify_shadowing(&self.partition, &rec.polygon, &g, &rec.shadow));
            let middle = within(rec.center, rec.shadow_center, 3);
            let ends = endpoints_close(&rec.arrays, rec.center, rec.shadow.ends);
            let ok = [
                found,
                r.check(shadows, id.clone(), || "gamma(P) leaves the shadow region".into()),
                r.check(middle, id.clone(), || "shadow middle not within 3 of the dilated centre".into()),
                r.check(ends, id, || "shadow ends not within 3 of the dilated core".into()),
            ];
            if ok.iter().all(|b| *b) {
                good += 1;
            }
            let (m, n) = rec.gamma.map_or((String::new(), String::new()), |g| (g.m.to_string(), g.n.to_string()));
            r.rows.push(vec![rec.index.to_string(), m, n, shadows.to_string(), middle.to_string(), ends.to_string()]);
        }
        r.note(format!("{good}/{} genes shadowed", self.records()?.len()));
        Ok(())
    }

    fn coherence(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let rep = coherence(&self.partition, self.records()?, self.config.coherence_genes, self.forward()?)?;
        r.table(&["gene_center", "shadow"]);
        for (g, s) in &rep.pairs {
            r.rows.push(vec![p(*g), p(*s)]);
        }
        r.checks += rep.pairs.len();
        for f in &rep.failures {
            r.check(false, "coherence", || f.clone());
        }
        r.check(rep.monotone, "order", || "shadow points are not met in order".into());
        let expected = [((1, 1), (3, 4)), ((1, 2), (3, 9)), ((1, 3), (3, 13)), ((2, 4), (8, 18))]
            .map(|(a, b)| (LatticePoint::new(a.0, a.1), LatticePoint::new(b.0, b.1)));
        let first: Vec<_> = rep.pairs.iter().take(4).copied().collect();
        r.check(first == expected, "first pairs", || format!("first pairs {first:?}"));
        r.note(format!("{} pairs, {} failures, in order: {}", rep.pairs.len(), rep.failures.len(), rep.monotone));
        Ok(())
    }

    fn census(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        r.table(&["depth", "direction", "genes", "extended"]);
        for (column, dir) in [(1, "forward"), (0, "backward")] {
            let mut sets = Vec::new();
            for &d in &self.config.census_depths {
                let t = trace(&self.partition, LatticePoint::new(0, 0), column, 1 << d)?;
                let c = census(&t);
                let id = format!("{dir} 2^{d}");
                let (g, e) = (c.genes.len(), c.extended.len());
                r.check(g == 75, id.clone(), || format!("{g} gene types, expected 75"));
                r.check(e == 89, id, || format!("{e} extended gene types, expected 89"));
                r.rows.push(vec![d.to_string(), dir.into(), g.to_string(), e.to_string()]);
                r.note(format!("{dir} 2^{d}: {g} gene types, {e} extended"));
                sets.push(c);
            }
            let stable = sets.windows(2).all(|w| w[0] == w[1]);
            r.check(stable, dir, || "type sets change with depth".into());
        }
        Ok(())
    }

    fn torus_partition(&self, r: &mut VerificationReport) {
        let maps = self.maps();
        let mut tiles = lifted_tiles(&self.partition);
        if let Some(n) = self.config.tiles {
            tiles.truncate(n);
        }
        let rep = verify_partition(&self.partition, &maps, self.config.rounds, &tiles);
        r.table(&[
            "tile",
            "polygon",
            "translate",
            "sign",
            "itinerary",
            "displacement",
            "vertices",
            "max_stretch",
            "passed",
        ]);
        for t in &rep.tiles {
            r.check(t.passed, format!("tile {}", t.id), || t.failure.clone().unwrap_or_default());
            r.rows.push(vec![
                t.id.to_string(),
                t.base.to_string(),
                format!("{} {}", t.translate.0, t.translate.1),
                t.sign.to_string(),
                t.itinerary.as_ref().map(itinerary_string).unwrap_or_default(),
                t.displacement.map(p).unwrap_or_default(),
                t.vertices.to_string(),
                format!("{:.3e}", t.max_stretch),
                t.passed.to_string(),
            ]);
        }
        if self.config.tiles.is_none() {
            for m in &rep.type_mismatches {
                r.check(false, "types", || m.clone());
            }
            r.checks += 1;
            for (i, j) in &rep.adjacent_collisions {
                r.check(false, format!("polygons {i},{j}"), || "adjacent polygons share a displacement pair".into());
            }
            r.checks += rep.adjacent_pairs;
            r.note(format!(
                "{} adjacent polygon pairs with distinct displacement pairs",
                rep.adjacent_pairs - rep.adjacent_collisions.len()
            ));
        }
        r.note(format!(
            "{} of {} lifted tiles pass after {} rounds",
            rep.tiles.len() - rep.failed_tiles(),
            rep.tiles.len(),
            self.config.rounds
        ));
        r.note(format!("component distances {:?}", rep.component_distances.map(|d| format!("{d:.4}"))));
    }

    fn gap(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let traces = [self.forward()?, self.backward()?];
        let rep = gap_check(&self.partition, 2, 16, self.config.gap_samples, (1, 10_000), &traces);
        r.table(&["sample"]);
        r.checks += rep.samples - rep.close.len();
        for i in &rep.close {
            r.check(false, format!("sample {i}"), || "within 1e-4 of P3".into());
            r.rows.push(vec![i.to_string()]);
        }
        r.check(rep.covers_segment, "cover", || {
            format!("minimum distance {} does not cover the sample gaps", rep.min_distance)
        });
        r.check(rep.diagonal_ok, "diagonal", || "psi(0), psi(2 phi^-3) are not opposite corners of P3".into());
        r.checks += rep.type3_checked - rep.type3_violations.len();
        for v in &rep.type3_violations {
            r.check(false, p(*v), || "type 3 vertex with phi^-3 <= v < 7".into());
        }
        r.note(format!("{} samples of [2,16], minimum distance to P3 {:.6}", rep.samples, rep.min_distance));
        r.note(format!("{} traced type-3 vertices, {} in the gap", rep.type3_checked, rep.type3_violations.len()));
        Ok(())
    }

    fn descent(&self, r: &mut VerificationReport) {
        let rep = descent_check(self.config.descent_bound);
        r.table(&["a", "b"]);
        r.checks += rep.candidates - rep.members.len();
        for x in &rep.members {
            r.check(false, format!("{x:?}"), || "orbit stays in the Cantor interval".into());
            r.rows.push(vec![x.a().to_string(), x.b().to_string()]);
        }
        r.check(cantor_step(GoldenReal::new(-2, 2, 0)).is_none(), "-2+2phi", || "not rejected".into());
        r.note(format!(
            "{} candidates with even |a|,|b| <= {}: {} reach an endpoint, {} stay",
            rep.candidates,
            self.config.descent_bound,
            rep.endpoint_orbits,
            rep.members.len()
        ));
        r.note("every orbit of the Cantor set being unbounded is a limit statement and is not checked here");
    }

    fn rising(&self, r: &mut VerificationReport) -> Result<(), PipelineError> {
        let fwd = self.forward()?;
        let back = self.backward()?;
        let top = fwd.vertices.iter().map(|v| height(*v)).max().unwrap_or(GoldenReal::ZERO);
        r.check(top >= GoldenReal::int(100), "height", || format!("forward trace only reaches {:.1}", top.to_f64()));
        let profile = rising_profile(back, fwd);
        let (by_nu, rising) = heights_by_nu(&profile);
        r.check(rising, "heights", || format!("heights by nu {by_nu:?}"));
        let mut prefix_by_nu = vec![0usize; by_nu.len()];
        for e in &profile {
            prefix_by_nu[e.nu] = prefix_by_nu[e.nu].max(e.prefix);
        }
        r.check(prefix_by_nu.windows(2).all(|w| w[0] < w[1]), "prefixes", || {
            format!("prefixes by nu {prefix_by_nu:?}")
        });
        let points: Vec<LatticePoint> = basepoints(back).into_iter().map(|b| b.1).collect();
        let known = [(0, 0), (-5, 1), (-21, 5), (-26, 6)].map(|(x, y)| LatticePoint::new(x, y));
        r.check(points.starts_with(&known), "first basepoints", || format!("{:?}", &points[..points.len().min(4)]));
        let k = self.partition.polygon(3);
        r.check(points.iter().all(|x| canonical_psi(k, *x).is_some()), "in P3", || "a basepoint misses P3".into());
        let b = check_basepoints(&self.partition, &points, self.config.code_length);
        r.check(b.pieces_fit, "pieces", || "gamma0(P3) or its translate does not fit in P3".into());
        r.checks += b.count - b.coding_failures.len();
        for (n, j) in &b.coding_failures {
            r.check(false, format!("basepoint {}", 2 * n + *j as usize), || format!("not gamma_{j} of basepoint {n}"));
        }
        r.checks += b.codes_checked - b.piece_failures.len();
        for c in &b.piece_failures {
            r.check(false, format!("code {c}"), || "basepoint outside its piece".into());
        }
        r.table(&["n", "nu", "basepoint", "height", "return_time", "prefix"]);
        for e in &profile {
            r.rows.push(vec![
                e.index.to_string(),
                e.nu.to_string(),
                p(e.basepoint),
                format!("{:.3}", e.height),
                e.steps.to_string(),
                e.prefix.to_string(),
            ]);
        }
        r.note(format!("forward 2^{} trace reaches height {:.1}", self.config.forward_depth, top.to_f64()));
        r.note(format!("{} basepoints on {} backward steps", points.len(), self.config.backward_steps));
        r.note(format!("maximum height by nu: {:?}", by_nu.iter().map(|h| format!("{h:.1}")).collect::<Vec<_>>()));
        r.note("unboundedness of the orbits is a limit statement; only these finite premises are checked");
        Ok(())
    }
}

/// `0` when every report passed.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_names_roundtrip() {
        for s in Stage::ALL {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert_eq!("genes".parse::<Stage>().unwrap(), Stage::Genes);
        assert!("nope".parse::<Stage>().is_err());
    }

    #[test]
    fn samples_stay_in_range() {
        let s = pinwheel_samples(100);
        assert_eq!(s.len(), 300);
        let ten = GoldenReal::int(10);
        assert!(s[..200].iter().all(|p| p.x > GoldenReal::ZERO && p.x < ten));
        assert!(s[200..].iter().all(|p| p.x > GoldenReal::ZERO && p.x < GoldenReal::int(100)));
    }
}
