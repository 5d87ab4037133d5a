//! Genes, dynamical polygons, special similarities and the shadowing and
//! coherence checks built on them.

use std::collections::{BTreeSet, HashMap};

use crate::data::{DataSet, ShadowTriple};
use crate::error::{GraphError, InflationError};
use crate::golden::{interpolate, GoldenPoint, GoldenReal};
use crate::graph::{local_type, psi, psi_linear, reduce_torus, trace, LatticePoint, Partition, Trace};
use crate::polygon::GoldenPolygon;
use crate::qfield::{clip_convex, signed_area2, QPoint};

/// One entry of an orbit array: the type of the current vertex and the step taken from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitStep {
    pub ty: usize,
    pub step: LatticePoint,
}

pub type OrbitArray = Vec<OrbitStep>;

fn next_step(
    ty: usize,
    prev: Option<LatticePoint>,
    column: usize,
    at: LatticePoint,
) -> Result<LatticePoint, GraphError> {
    let edges = local_type(ty).edges.ok_or(GraphError::Stalled(at.x, at.y))?;
    match prev {
        None => Ok(edges[column]),
        Some(prev) if edges[0] == -prev => Ok(edges[1]),
        Some(prev) if edges[1] == -prev => Ok(edges[0]),
        Some(_) => Err(GraphError::Stalled(at.x, at.y)),
    }
}

/// `len` steps from `p`, leaving along `column` (0 or 1) of its type.
pub fn get_orbit(partition: &Partition, p: LatticePoint, column: usize, len: usize) -> Result<OrbitArray, GraphError> {
    let mut out = Vec::with_capacity(len);
    let mut cur = p;
    let mut prev = None;
    for _ in 0..len {
        let ty = partition.classify(cur)?;
        let step = next_step(ty, prev, column, cur)?;
        out.push(OrbitStep { ty, step });
        prev = Some(step);
        cur = cur + step;
    }
    Ok(out)
}

/// Steps from `p` until one of `stops` is reached; the stop vertex itself is
/// not classified. Returns the array and the stop reached.
pub fn get_orbit_until(
    partition: &Partition,
    p: LatticePoint,
    column: usize,
    stops: &[LatticePoint],
    cap: usize,
) -> Result<(OrbitArray, LatticePoint), GraphError> {
    let mut out = Vec::new();
    let mut cur = p;
    let mut prev = None;
    while !stops.contains(&cur) {
        if out.len() >= cap {
            return Err(GraphError::Stalled(cur.x, cur.y));
        }
        let ty = partition.classify(cur)?;
        let step = next_step(ty, prev, column, cur)?;
        out.push(OrbitStep { ty, step });
        prev = Some(step);
        cur = cur + step;
    }
    Ok((out, cur))
}

/// Does the torus point follow the given type sequence?
pub fn match_orbit(partition: &Partition, s: GoldenPoint, arr: &[OrbitStep], open: bool) -> bool {
    let mut s = s;
    for o in arr {
        let poly = partition.polygon(o.ty);
        let ok = if open { poly.lattice_contains_open(s) } else { poly.lattice_contains_closed(s) };
        if !ok {
            return false;
        }
        s = reduce_torus(s + psi_linear(o.step));
    }
    true
}

/// The two half-orbits of length 3 describing the gene centred at `center`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneArrays {
    pub left: OrbitArray,
    pub right: OrbitArray,
}

pub fn gene_arrays(partition: &Partition, center: LatticePoint) -> Result<GeneArrays, GraphError> {
    Ok(GeneArrays { left: get_orbit(partition, center, 0, 3)?, right: get_orbit(partition, center, 1, 3)? })
}

impl GeneArrays {
    /// The seven vertices of the gene, from the left end to the right end.
    pub fn vertices(&self, center: LatticePoint) -> Vec<LatticePoint> {
        let walk = |arr: &OrbitArray| {
            let mut v = vec![center];
            for o in arr {
                v.push(*v.last().unwrap() + o.step);
            }
            v
        };
        let mut left = walk(&self.left);
        left.reverse();
        left.extend(walk(&self.right).into_iter().skip(1));
        left
    }

    /// Key identifying the gene type: centre type plus the edge sequence, read
    /// in whichever direction is smaller.
    pub fn type_key(&self) -> (usize, Vec<LatticePoint>) {
        let forward: Vec<LatticePoint> =
            self.left.iter().rev().map(|o| -o.step).chain(self.right.iter().map(|o| o.step)).collect();
        let backward: Vec<LatticePoint> = forward.iter().rev().map(|e| -*e).collect();
        (self.left[0].ty, forward.min(backward))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynPolyCheck {
    pub vertices_ok: bool,
    pub edges_ok: bool,
}

impl DynPolyCheck {
    pub fn passed(&self) -> bool {
        self.vertices_ok && self.edges_ok
    }
}

/// Vertices lie in the closed dynamical region and every edge lies on its boundary.
pub fn verify_dynamical_polygon(partition: &Partition, poly: &GoldenPolygon, arrays: &GeneArrays) -> DynPolyCheck {
    let vertices_ok = poly
        .vertices
        .iter()
        .all(|v| match_orbit(partition, *v, &arrays.left, false) && match_orbit(partition, *v, &arrays.right, false));
    let edges_ok = poly.edges().all(|(p1, p2)| {
        let q = GoldenPoint::new(interpolate(p2.x, p1.x), interpolate(p2.y, p1.y));
        !match_orbit(partition, q, &arrays.left, true) || !match_orbit(partition, q, &arrays.right, true)
    });
    DynPolyCheck { vertices_ok, edges_ok }
}

/// Constraint polygons `P_t - offset` whose intersection is the dynamical polygon.
fn constraints(arrays: &GeneArrays) -> Vec<(usize, GoldenPoint)> {
    let mut out = vec![(arrays.left[0].ty, GoldenPoint::ORIGIN)];
    for arr in [&arrays.left, &arrays.right] {
        let mut off = GoldenPoint::ORIGIN;
        for w in arr.windows(2) {
            off = off + psi_linear(w[0].step);
            out.push((w[1].ty, off));
        }
    }
    out
}

/// Intersect the constraint polygons directly, inside the stored lift of the centre polygon.
pub fn compute_dynamical_polygon(partition: &Partition, arrays: &GeneArrays) -> Option<GoldenPolygon> {
    let cons = constraints(arrays);
    let base = partition.polygon(cons[0].0);
    let to_q = |p: &GoldenPolygon| p.vertices.iter().map(|v| QPoint::from_golden(*v)).collect::<Vec<_>>();
    let mut pieces = vec![to_q(base)];
    for (ty, off) in &cons[1..] {
        let shifted = partition.polygon(*ty).translate(-*off);
        let (bx, by) = base.centroid_f64();
        let (sx, sy) = shifted.centroid_f64();
        let (ci, cj) = ((bx - sx).round() as i64, (by - sy).round() as i64);
        let mut next = Vec::new();
        for piece in &pieces {
            for i in ci - 2..=ci + 2 {
                for j in cj - 2..=cj + 2 {
                    let c = shifted.translate(GoldenPoint::ints(i as i128, j as i128));
                    let r = clip_convex(piece, &to_q(&c));
                    if !r.is_empty() && signed_area2(&r).signum() != 0 {
                        next.push(r);
                    }
                }
            }
        }
        pieces = next;
    }
    if pieces.len() != 1 {
        return None;
    }
    let verts: Option<Vec<GoldenPoint>> = pieces[0].iter().map(|q| q.to_golden()).collect();
    Some(GoldenPolygon::new(verts?))
}

/// Vertex sets agree up to one integer translation.
pub fn same_polygon_mod_lattice(a: &GoldenPolygon, b: &GoldenPolygon) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    for cand in b.vertices.iter().map(|w| *w - a.vertices[0]) {
        if !(cand.x.is_integer() && cand.y.is_integer()) {
            continue;
        }
        let sa: BTreeSet<String> = a.vertices.iter().map(|v| format!("{:?}", *v + cand)).collect();
        let sb: BTreeSet<String> = b.vertices.iter().map(|v| format!("{v:?}")).collect();
        if sa == sb {
            return true;
        }
    }
    false
}

/// Lift of `psi(p)` lying in the closed polygon, found among translates by `[-7, 7]^2`.
pub fn canonical_psi(poly: &GoldenPolygon, p: LatticePoint) -> Option<GoldenPoint> {
    let s = psi(p);
    for i in -7..=7i128 {
        for j in -7..=7i128 {
            let y = s + GoldenPoint::ints(i, j);
            if poly.contains_closed(y) {
                return Some(y);
            }
        }
    }
    None
}

/// `z -> -phi^{-3} z + (m phi^{-4} + n phi^{-1}, m phi^{-3})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpecialSimilarity {
    pub m: i64,
    pub n: i64,
}

impl SpecialSimilarity {
    pub fn translation(&self) -> GoldenPoint {
        psi_linear(LatticePoint::new(self.m, self.n))
    }

    pub fn apply(&self, z: GoldenPoint) -> GoldenPoint {
        z.scale(-GoldenReal::phi_pow(-3)) + self.translation()
    }

    pub fn apply_polygon(&self, p: &GoldenPolygon) -> GoldenPolygon {
        p.map(|v| self.apply(v))
    }
}

/// The two half-strands of a shadow strand, from its middle point to its ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowArrays {
    pub first: OrbitArray,
    pub second: OrbitArray,
    pub ends: [LatticePoint; 2],
}

pub fn shadow_arrays(partition: &Partition, s: &ShadowTriple) -> Result<ShadowArrays, GraphError> {
    let stops = [s.start, s.end];
    let (first, e1) = get_orbit_until(partition, s.middle, 0, &stops, 10_000)?;
    let (second, e2) = get_orbit_until(partition, s.middle, 1, &stops, 10_000)?;
    if e1 == e2 {
        return Err(GraphError::Stalled(e1.x, e1.y));
    }
    Ok(ShadowArrays { first, second, ends: [e1, e2] })
}

impl ShadowArrays {
    pub fn matches(&self, partition: &Partition, s: GoldenPoint, open: bool) -> bool {
        match_orbit(partition, s, &self.first, open) && match_orbit(partition, s, &self.second, open)
    }
}

/// Every `|m|, |n| <= 7` whose similarity carries the centre of the gene
/// along the shadow strand.
pub fn gamma_candidates(
    partition: &Partition,
    poly: &GoldenPolygon,
    center: LatticePoint,
    shadow: &ShadowArrays,
) -> Vec<SpecialSimilarity> {
    let Some(y) = canonical_psi(poly, center) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for m in -7..=7 {
        for n in -7..=7 {
            let g = SpecialSimilarity { m, n };
            if shadow.matches(partition, g.apply(y), true) {
                out.push(g);
            }
        }
    }
    out
}

/// The similarity for a gene. When several candidates follow the strand,
/// the one sending the centre exactly onto `psi(shadow_center)` wins.
pub fn find_gamma(
    partition: &Partition,
    poly: &GoldenPolygon,
    center: LatticePoint,
    shadow: &ShadowArrays,
    shadow_center: LatticePoint,
) -> Option<SpecialSimilarity> {
    let all = gamma_candidates(partition, poly, center, shadow);
    if all.len() <= 1 {
        return all.first().copied();
    }
    let y = canonical_psi(poly, center)?;
    let target = psi(shadow_center);
    let exact: Vec<_> = all.iter().filter(|g| reduce_torus(g.apply(y)) == target).copied().collect();
    (exact.len() == 1).then(|| exact[0])
}

/// Every vertex of `gamma(P)` follows the shadow strand in the closed sense.
pub fn verify_shadowing(
    partition: &Partition,
    poly: &GoldenPolygon,
    g: &SpecialSimilarity,
    shadow: &ShadowArrays,
) -> bool {
    g.apply_polygon(poly).vertices.iter().all(|v| shadow.matches(partition, *v, false))
}

/// Dilation by `phi^3`, the map a gene is compared against.
pub fn dilate(p: LatticePoint) -> GoldenPoint {
    p.to_golden().scale(GoldenReal::phi_pow(3))
}

/// Squared distance from `phi^3 b` to a lattice point is below `r^2`.
pub fn within(b: LatticePoint, e: LatticePoint, r: i128) -> bool {
    let d = dilate(b) - e.to_golden();
    d.norm_sq() < GoldenReal::int(r * r)
}

/// Both ends of the core (the neighbours of the centre) dilate to within 3
/// of the ends of the shadow strand.
pub fn endpoints_close(arrays: &GeneArrays, center: LatticePoint, ends: [LatticePoint; 2]) -> bool {
    let v = arrays.vertices(center);
    let (b0, b1) = (v[2], v[4]);
    (within(b0, ends[0], 3) && within(b1, ends[1], 3)) || (within(b0, ends[1], 3) && within(b1, ends[0], 3))
}

/// Gene and extended gene census along a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub genes: BTreeSet<(usize, Vec<LatticePoint>)>,
    pub extended: BTreeSet<(Vec<usize>, Vec<LatticePoint>)>,
}

fn sym_min<T: Ord + Clone>(
    types: &[usize],
    edges: &[LatticePoint],
    f: impl Fn(Vec<usize>, Vec<LatticePoint>) -> T,
) -> T {
    let rev_e: Vec<LatticePoint> = edges.iter().rev().map(|e| -*e).collect();
    let rev_t: Vec<usize> = types.iter().rev().copied().collect();
    f(types.to_vec(), edges.to_vec()).min(f(rev_t, rev_e))
}

/// Count gene types (length 6 arcs pointed at their centre) and extended gene
/// types (length 7 arcs, the union of two consecutive genes).
pub fn census(t: &Trace) -> Census {
    let v = &t.vertices;
    let edges: Vec<LatticePoint> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let mut c = Census::default();
    for s in 0..edges.len().saturating_sub(5) {
        let key = sym_min(&t.types[s + 1..s + 6], &edges[s..s + 6], |ty, e| (ty[2], e));
        c.genes.insert(key);
    }
    for s in 0..edges.len().saturating_sub(6) {
        let key = sym_min(&t.types[s + 1..s + 7], &edges[s..s + 7], |ty, e| (ty, e));
        c.extended.insert(key);
    }
    c
}

/// Everything known about one of the 75 tabulated genes.
#[derive(Clone, Debug)]
pub struct GeneRecord {
    pub index: usize,
    pub center: LatticePoint,
    pub arrays: GeneArrays,
    pub polygon: GoldenPolygon,
    pub shadow: ShadowArrays,
    pub shadow_center: LatticePoint,
    pub gamma: Option<SpecialSimilarity>,
}

pub fn gene_records(partition: &Partition, data: &DataSet) -> Result<Vec<GeneRecord>, InflationError> {
    let mut out = Vec::new();
    for (j, center) in data.gene_centers.iter().enumerate() {
        let arrays = gene_arrays(partition, *center)?;
        let polygon = data.dynamical[j].clone();
        let shadow = shadow_arrays(partition, &data.shadows[j])?;
        let shadow_center = data.shadows[j].middle;
        let gamma = find_gamma(partition, &polygon, *center, &shadow, shadow_center);
        out.push(GeneRecord { index: j, center: *center, arrays, polygon, shadow, shadow_center, gamma });
    }
    Ok(out)
}

/// Result of the coherence walk along the first gene centres of the forward trace.
#[derive(Clone, Debug, Default)]
pub struct CoherenceReport {
    pub pairs: Vec<(LatticePoint, LatticePoint)>,
    pub failures: Vec<String>,
    pub monotone: bool,
}

/// For each of the first `count` vertices `g` of the forward trace, find the
/// unique lattice point `g'` within 3 of `phi^3 g` whose torus image is the
/// similarity image of `g`, then check the `g'` appear in order.
pub fn coherence(
    partition: &Partition,
    records: &[GeneRecord],
    count: usize,
    deep: &Trace,
) -> Result<CoherenceReport, InflationError> {
    let by_key: HashMap<(usize, Vec<LatticePoint>), &GeneRecord> =
        records.iter().map(|r| (r.arrays.type_key(), r)).collect();
    let fwd = trace(partition, LatticePoint::new(0, 0), 1, count + 4)?;
    let position: HashMap<LatticePoint, usize> = deep.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut rep = CoherenceReport { monotone: true, ..Default::default() };
    let mut last_pos: Option<usize> = None;
    for j in 1..=count {
        let g = fwd.vertices[j];
        let arrays = gene_arrays(partition, g)?;
        let Some(rec) = by_key.get(&arrays.type_key()) else {
            rep.failures.push(format!("gene at {g} has no tabulated type"));
            continue;
        };
        let Some(gamma) = rec.gamma else {
            rep.failures.push(format!("gene type {} has no similarity", rec.index));
            continue;
        };
        let Some(y) = canonical_psi(&rec.polygon, g) else {
            rep.failures.push(format!("psi({g}) is not in dynamical polygon {}", rec.index));
            continue;
        };
        let target = crate::graph::reduce_torus(gamma.apply(y));
        let Some(gp) = shadow_of(g, target) else {
            rep.failures.push(format!("no shadow point for {g}"));
            continue;
        };
        let rec_shadow = gene_arrays(partition, gp).map(|a| by_key.get(&a.type_key()).map(|r| r.index)).ok().flatten();
        let shadow_type = gene_arrays(partition, rec.shadow_center).ok().map(|a| a.type_key());
        let expected = shadow_type.and_then(|k| by_key.get(&k).map(|r| r.index));
        if rec_shadow.is_none() || rec_shadow != expected {
            rep.failures.push(format!("shadow {gp} of {g} is not equivalent to the tabulated shadow"));
        }
        match position.get(&gp) {
            Some(&pos) => {
                if let Some(lp) = last_pos {
                    if pos <= lp {
                        rep.monotone = false;
                    }
                }
                last_pos = Some(pos);
            }
            None => {
                rep.monotone = false;
                rep.failures.push(format!("shadow {gp} not on the deep trace"));
            }
        }
        rep.pairs.push((g, gp));
    }
    Ok(rep)
}

/// Lattice point within 3 of `phi^3 g` with the given reduced torus image.
pub fn shadow_of(g: LatticePoint, target: GoldenPoint) -> Option<LatticePoint> {
    let (cx, cy) = dilate(g).to_f64();
    let mut found = None;
    for x in (cx.floor() as i64 - 3)..=(cx.ceil() as i64 + 3) {
        for y in (cy.floor() as i64 - 3)..=(cy.ceil() as i64 + 3) {
            let q = LatticePoint::new(x, y);
            if !within(g, q, 3) {
                continue;
            }
            if psi(q) == target {
                found = Some(q);
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Partition, DataSet) {
        let d = DataSet::embedded();
        (Partition::new(d.partition.clone()), d)
    }

    #[test]
    fn first_gene_is_a_seven_vertex_arc() {
        let (p, d) = setup();
        let c = d.gene_centers[0];
        let a = gene_arrays(&p, c).unwrap();
        let v = a.vertices(c);
        assert_eq!(v.len(), 7);
        assert_eq!(v[3], c);
        assert_eq!(a.left[0].ty, a.right[0].ty);
        assert!(verify_dynamical_polygon(&p, &d.dynamical[0], &a).passed());
    }

    #[test]
    fn first_gene_has_a_unique_similarity() {
        let (p, d) = setup();
        let rec = &gene_records(&p, &d).unwrap()[0];
        let g = rec.gamma.expect("similarity");
        assert!(g.m.abs() <= 7 && g.n.abs() <= 7);
        assert!(verify_shadowing(&p, &rec.polygon, &g, &rec.shadow));
        assert!(endpoints_close(&rec.arrays, rec.center, rec.shadow.ends));
    }

    #[test]
    fn dilation_distances() {
        let o = LatticePoint::new(0, 0);
        assert!(within(o, o, 1));
        assert!(within(LatticePoint::new(1, 0), LatticePoint::new(4, 0), 1));
        assert!(!within(LatticePoint::new(1, 0), LatticePoint::new(3, 0), 1));
        assert_eq!(dilate(LatticePoint::new(0, 1)).y, GoldenReal::phi_pow(3));
    }

    #[test]
    fn census_is_symmetric_under_reversal() {
        let (p, _) = setup();
        let t = trace(&p, LatticePoint::new(0, 0), 1, 256).unwrap();
        let mut r = t.clone();
        r.vertices.reverse();
        r.types.reverse();
        let (a, b) = (census(&t), census(&r));
        assert_eq!(a, b);
        assert!(!a.genes.is_empty() && a.extended.len() >= a.genes.len());
    }
}
