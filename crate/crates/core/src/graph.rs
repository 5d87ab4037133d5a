//! The arithmetic graph: lattice points of the half-plane `T > 0`, joined when
//! the return map carries one to the other.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::GraphError;
use crate::golden::{GoldenPoint, GoldenReal};
use crate::kite::Kite;
use crate::polygon::GoldenPolygon;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn to_golden(self) -> GoldenPoint {
        GoldenPoint::ints(self.x as i128, self.y as i128)
    }

    pub fn dist_sq(self, o: LatticePoint) -> i64 {
        let (dx, dy) = (self.x - o.x, self.y - o.y);
        dx * dx + dy * dy
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `T(x, y) = 2Ax + 2y + (1 - A)/2 = (4x - 1) phi + 2 - 6x + 2y`.
pub fn map_t(p: LatticePoint) -> GoldenReal {
    GoldenReal::new(2 - 6 * p.x as i128 + 2 * p.y as i128, 4 * p.x as i128 - 1, 0)
}

/// Inverse of [`map_t`] on its image.
pub fn t_inverse(v: GoldenReal) -> Option<LatticePoint> {
    if v.k() != 0 || (v.b() + 1).rem_euclid(4) != 0 {
        return None;
    }
    let x = (v.b() + 1) / 4;
    let twice_y = v.a() - 2 + 6 * x;
    (twice_y % 2 == 0).then(|| LatticePoint::new(x as i64, (twice_y / 2) as i64))
}

/// Displacement `T(p + d) - T(p)` for a lattice vector `d`.
pub fn t_displacement(d: LatticePoint) -> GoldenReal {
    GoldenReal::new(2 * d.y as i128 - 6 * d.x as i128, 4 * d.x as i128, 0)
}

pub fn in_half_plane(p: LatticePoint) -> bool {
    map_t(p) > GoldenReal::ZERO
}

/// Linear part of the torus embedding:
/// `(x, y) -> (x phi^-4 + y phi^-1, x phi^-3)`.
pub fn psi_linear(d: LatticePoint) -> GoldenPoint {
    let (x, y) = (d.x as i128, d.y as i128);
    GoldenPoint::new(GoldenReal::new(5 * x - y, y - 3 * x, 0), GoldenReal::new(-3 * x, 2 * x, 0))
}

/// Unreduced lift `(T / 2 phi, T / 2)` of the torus embedding.
pub fn psi_lift(p: LatticePoint) -> GoldenPoint {
    let t = map_t(p);
    GoldenPoint::new(t.mul_inv_phi().half(), t.half())
}

/// The torus embedding reduced to `[-1/2, 1/2)^2`. Lattice points with
/// `2 - 6x + 2y = 0` land on `x = 1/2 mod 1` and are sent to `-1/2`.
pub fn psi(p: LatticePoint) -> GoldenPoint {
    reduce_torus(psi_lift(p))
}

/// Reduce a torus point to `[-1/2, 1/2)^2`, sending ties to `-1/2`.
pub fn reduce_torus(p: GoldenPoint) -> GoldenPoint {
    GoldenPoint::new(p.x.reduce1(), p.y.reduce1())
}

/// The two edge vectors leaving a vertex of a given type; `None` for the
/// trivial types, which are isolated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalType {
    pub index: usize,
    pub edges: Option<[LatticePoint; 2]>,
}

/// Edge pairs of the 26 polygon types, first column then second column.
pub const TYPE_EDGES: [Option<[(i64, i64); 2]>; 26] = [
    Some([(1, 1), (0, 1)]),
    Some([(-1, -1), (0, -1)]),
    Some([(-1, 1), (1, 1)]),
    Some([(1, -1), (-1, -1)]),
    Some([(-1, 1), (0, -1)]),
    Some([(1, -1), (0, 1)]),
    Some([(-1, 1), (0, -1)]),
    Some([(1, -1), (0, 1)]),
    Some([(0, 1), (-1, -1)]),
    Some([(0, -1), (1, 1)]),
    Some([(1, 1), (-1, 0)]),
    Some([(-1, -1), (1, 0)]),
    Some([(1, 1), (-1, 0)]),
    Some([(-1, -1), (1, 0)]),
    Some([(0, -1), (-1, 0)]),
    Some([(0, 1), (1, 0)]),
    Some([(0, -1), (-1, 0)]),
    Some([(0, 1), (1, 0)]),
    Some([(0, 1), (-1, 0)]),
    Some([(0, -1), (1, 0)]),
    Some([(0, 1), (0, -1)]),
    Some([(0, -1), (0, 1)]),
    Some([(0, 1), (0, -1)]),
    None,
    None,
    None,
];

pub fn local_type(index: usize) -> LocalType {
    let edges = TYPE_EDGES[index - 1].map(|[a, b]| [LatticePoint::new(a.0, a.1), LatticePoint::new(b.0, b.1)]);
    LocalType { index, edges }
}

/// The 26-polygon partition of the torus with a classifier.
#[derive(Clone, Debug)]
pub struct Partition {
    pub polygons: Vec<GoldenPolygon>,
}

impl Partition {
    pub fn new(polygons: Vec<GoldenPolygon>) -> Self {
        Partition { polygons }
    }

    pub fn polygon(&self, k: usize) -> &GoldenPolygon {
        &self.polygons[k - 1]
    }

    /// Index `1..=26` of the polygon whose open interior contains the torus point.
    pub fn classify_point(&self, s: GoldenPoint) -> Result<usize, usize> {
        let hits: Vec<usize> =
            (1..=self.polygons.len()).filter(|&k| self.polygon(k).lattice_contains_open(s)).collect();
        if hits.len() == 1 {
            Ok(hits[0])
        } else {
            Err(hits.len())
        }
    }

    pub fn classify(&self, p: LatticePoint) -> Result<usize, GraphError> {
        if !in_half_plane(p) {
            return Err(GraphError::NotInHalfPlane(p.x, p.y));
        }
        let s = psi(p);
        match self.classify_point(s) {
            Ok(k) => Ok(k),
            Err(0) => Err(GraphError::Unclassified(p.x, p.y)),
            Err(n) => Err(GraphError::MultiplyClassified(p.x, p.y, n)),
        }
    }
}

/// Edge vectors at `p` computed directly from the return map, in the order
/// (start on `y = 1`, start on `y = -1`). A zero vector means no edge.
pub fn dynamic_edges(kite: &Kite, p: LatticePoint) -> Result<[LatticePoint; 2], GraphError> {
    if !in_half_plane(p) {
        return Err(GraphError::NotInHalfPlane(p.x, p.y));
    }
    let t = map_t(p);
    let mut out = [LatticePoint::default(); 2];
    for (slot, eps) in out.iter_mut().zip([1, -1]) {
        let r = kite.return_map(GoldenPoint::new(t, GoldenReal::int(eps)))?;
        let q = t_inverse(r.point.x).expect("the return map preserves T(Z^2)");
        *slot = q - p;
    }
    Ok(out)
}

/// Unordered edge set of a type, normalised for comparison.
pub fn edge_set(edges: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut v: Vec<LatticePoint> = edges.iter().copied().filter(|e| *e != LatticePoint::default()).collect();
    v.sort();
    v.dedup();
    v
}

/// A traced path in the arithmetic graph.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub vertices: Vec<LatticePoint>,
    pub types: Vec<usize>,
}

/// Follow the graph from `start`, leaving along column `column` (0 or 1) of
/// the start type and never immediately backtracking.
pub fn trace(partition: &Partition, start: LatticePoint, column: usize, steps: usize) -> Result<Trace, GraphError> {
    let mut t = Trace::default();
    let mut cur = start;
    let mut last: Option<LatticePoint> = None;
    for _ in 0..=steps {
        let k = partition.classify(cur)?;
        t.vertices.push(cur);
        t.types.push(k);
        if t.vertices.len() == steps + 1 {
            break;
        }
        let Some(edges) = local_type(k).edges else {
            return Err(GraphError::Stalled(cur.x, cur.y));
        };
        let step = match last {
            None => edges[column],
            Some(prev) => {
                let back = -prev;
                if edges[0] == back {
                    edges[1]
                } else if edges[1] == back {
                    edges[0]
                } else {
                    return Err(GraphError::Stalled(cur.x, cur.y));
                }
            }
        };
        last = Some(step);
        cur = cur + step;
    }
    Ok(t)
}

/// Cached classifier for repeated queries.
#[derive(Debug, Default)]
pub struct TypeCache {
    map: HashMap<LatticePoint, usize>,
}

impl TypeCache {
    pub fn get(&mut self, partition: &Partition, p: LatticePoint) -> Result<usize, GraphError> {
        if let Some(k) = self.map.get(&p) {
            return Ok(*k);
        }
        let k = partition.classify(p)?;
        self.map.insert(p, k);
        Ok(k)
    }
}

/// The graph on the square `|x|, |y| <= radius`, built from the partition
/// and checked against the return map.
#[derive(Clone, Debug, Default)]
pub struct GraphWindow {
    pub radius: i64,
    pub points: usize,
    pub types: HashMap<LatticePoint, usize>,
    /// Undirected edges with the smaller endpoint first.
    pub edges: BTreeSet<(LatticePoint, LatticePoint)>,
    /// Points whose partition edges differ from the dynamical ones.
    pub mismatches: Vec<LatticePoint>,
    /// Edges inside the window that the far endpoint does not return.
    pub one_way: Vec<(LatticePoint, LatticePoint)>,
    /// Points of valence other than 0 or 2.
    pub bad_valence: Vec<LatticePoint>,
}

impl GraphWindow {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.one_way.is_empty() && self.bad_valence.is_empty()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        p.x.abs() <= self.radius && p.y.abs() <= self.radius
    }
}

pub fn build_graph(partition: &Partition, kite: &Kite, radius: i64) -> Result<GraphWindow, GraphError> {
    let rows: Vec<Vec<(LatticePoint, usize, bool)>> = (-radius..=radius)
        .into_par_iter()
        .map(|y| {
            (-radius..=radius)
                .map(|x| LatticePoint::new(x, y))
                .filter(|p| in_half_plane(*p))
                .map(|p| {
                    let k = partition.classify(p)?;
                    let from_table = edge_set(&local_type(k).edges.unwrap_or_default());
                    let from_dynamics = edge_set(&dynamic_edges(kite, p)?);
                    Ok((p, k, from_table == from_dynamics))
                })
                .collect::<Result<Vec<_>, GraphError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut g = GraphWindow { radius, ..Default::default() };
    for (p, k, agree) in rows.into_iter().flatten() {
        g.points += 1;
        g.types.insert(p, k);
        if !agree {
            g.mismatches.push(p);
        }
    }
    for (p, k) in &g.types {
        let Some(edges) = local_type(*k).edges else { continue };
        for e in edges {
            let q = *p + e;
            g.edges.insert(if *p < q { (*p, q) } else { (q, *p) });
            if let Some(kq) = g.types.get(&q) {
                if !local_type(*kq).edges.is_some_and(|f| f.contains(&-e)) {
                    g.one_way.push((*p, q));
                }
            }
        }
    }
    let mut valence: HashMap<LatticePoint, usize> = HashMap::new();
    for (a, b) in &g.edges {
        *valence.entry(*a).or_default() += 1;
        *valence.entry(*b).or_default() += 1;
    }
    g.bad_valence = valence.iter().filter(|(p, v)| g.contains(**p) && **v != 2).map(|(p, _)| *p).collect();
    g.mismatches.sort();
    g.one_way.sort();
    g.bad_valence.sort();
    Ok(g)
}

/// Crossing diagonals in unit squares of the window.
#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub edges: usize,
    /// Lower-left corners of squares where both diagonals are edges.
    pub type_pair_hits: Vec<LatticePoint>,
    /// Pairs of edges meeting away from a shared endpoint.
    pub crossings: Vec<((LatticePoint, LatticePoint), (LatticePoint, LatticePoint))>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.type_pair_hits.is_empty() && self.crossings.is_empty()
    }
}

fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)).signum()
}

fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Two lattice segments share a point other than a common endpoint.
pub fn segments_cross(s: (LatticePoint, LatticePoint), t: (LatticePoint, LatticePoint)) -> bool {
    let shared = [s.0, s.1].iter().filter(|p| **p == t.0 || **p == t.1).count();
    if shared == 2 {
        return false;
    }
    let (d1, d2) = (orient(t.0, t.1, s.0), orient(t.0, t.1, s.1));
    let (d3, d4) = (orient(s.0, s.1, t.0), orient(s.0, s.1, t.1));
    if shared == 1 {
        // only a collinear overlap can add a second common point
        return d1 == 0 && d2 == 0 && {
            let far = |p: LatticePoint, seg: (LatticePoint, LatticePoint)| {
                p != seg.0 && p != seg.1 && on_segment(seg.0, seg.1, p)
            };
            far(s.0, t) || far(s.1, t) || far(t.0, s) || far(t.1, s)
        };
    }
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(t.0, t.1, s.0) || on_segment(t.0, t.1, s.1) || on_segment(s.0, s.1, t.0) || on_segment(s.0, s.1, t.1)
}

/// The graph has no transversal crossings: no square carries both
/// diagonals, and no two edges meet except at a shared endpoint.
pub fn check_embedding(graph: &GraphWindow) -> EmbeddingReport {
    let mut rep = EmbeddingReport { edges: graph.edges.len(), ..Default::default() };
    let has = |a: LatticePoint, b: LatticePoint| graph.edges.contains(&if a < b { (a, b) } else { (b, a) });
    let mut cells: HashMap<(i64, i64), Vec<(LatticePoint, LatticePoint)>> = HashMap::new();
    for &(a, b) in &graph.edges {
        let c = (a.x.min(b.x), a.y.min(b.y));
        if a.x != b.x && a.y != b.y {
            let ll = LatticePoint::new(c.0, c.1);
            let (ur, lr, ul) =
                (ll + LatticePoint::new(1, 1), ll + LatticePoint::new(1, 0), ll + LatticePoint::new(0, 1));
            if (a, b) == (ll, ur) && has(lr, ul) {
                rep.type_pair_hits.push(ll);
            }
        }
        cells.entry(c).or_default().push((a, b));
    }
    for (c, list) in &cells {
        let mut near: Vec<(LatticePoint, LatticePoint)> = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(l) = cells.get(&(c.0 + dx, c.1 + dy)) {
                    near.extend(l);
                }
            }
        }
        for s in list {
            for t in &near {
                if s < t && segments_cross(*s, *t) {
                    rep.crossings.push((*s, *t));
                }
            }
        }
    }
    rep.type_pair_hits.sort();
    rep.crossings.sort();
    rep
}

/// Exact checks that the partition tiles the torus.
#[derive(Clone, Debug)]
pub struct TilingReport {
    pub area: GoldenReal,
    pub overlaps: Vec<(usize, usize, i64, i64)>,
    pub non_convex: Vec<usize>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.area == GoldenReal::int(1) && self.overlaps.is_empty() && self.non_convex.is_empty()
    }
}

pub fn partition_tiling(partition: &Partition) -> TilingReport {
    let n = partition.polygons.len();
    let area = partition.polygons.iter().fold(GoldenReal::ZERO, |acc, p| acc + p.area2().abs()).half();
    let non_convex = (1..=n).filter(|k| !partition.polygon(*k).is_convex()).collect();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let overlaps = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (a, b) = (partition.polygon(i), partition.polygon(j));
            (-2..=2i64)
                .flat_map(|x| (-2..=2i64).map(move |y| (x, y)))
                .filter(move |&(x, y)| !(i == j && x == 0 && y == 0))
                .filter(move |&(x, y)| !a.interiors_disjoint(&b.translate(GoldenPoint::ints(x as i128, y as i128))))
                .map(move |(x, y)| (i, j, x, y))
        })
        .collect();
    TilingReport { area, overlaps, non_convex }
}

/// Lattice points of the window in `H` sharing a torus image.
pub fn psi_collisions(radius: i64) -> Vec<(LatticePoint, LatticePoint)> {
    let mut seen: HashMap<GoldenPoint, LatticePoint> = HashMap::new();
    let mut out = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            let p = LatticePoint::new(x, y);
            if !in_half_plane(p) {
                continue;
            }
            if let Some(q) = seen.insert(psi(p), p) {
                out.push((q, p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DataSet;

    fn partition() -> Partition {
        Partition::new(DataSet::embedded().partition)
    }

    fn lp(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn t_on_small_points() {
        assert_eq!(map_t(lp(0, 0)), GoldenReal::new(2, -1, 0));
        assert_eq!(map_t(lp(0, 1)), GoldenReal::new(4, -1, 0));
        assert_eq!(map_t(lp(1, 0)), GoldenReal::new(-4, 3, 0));
        for p in [lp(0, 0), lp(7, -3), lp(-5, 11)] {
            assert_eq!(t_inverse(map_t(p)), Some(p));
            assert_eq!(map_t(p) + t_displacement(lp(2, 1)), map_t(p + lp(2, 1)));
        }
        assert_eq!(t_inverse(GoldenReal::new(1, 0, 0)), None);
    }

    #[test]
    fn origin_embeds_inside_the_square() {
        assert_eq!(psi(lp(0, 0)), GoldenPoint::new(GoldenReal::new(-3, 2, 1), GoldenReal::new(2, -1, 1)));
    }

    #[test]
    fn known_types() {
        let p = partition();
        assert_eq!(p.classify(lp(0, 0)).unwrap(), 3);
        assert_eq!(p.classify(lp(3, 4)).unwrap(), 11);
    }

    #[test]
    fn crossing_cases() {
        let s = (lp(0, 0), lp(1, 1));
        assert!(segments_cross(s, (lp(0, 1), lp(1, 0))));
        assert!(!segments_cross(s, (lp(1, 1), lp(2, 0))));
        assert!(!segments_cross(s, (lp(0, 1), lp(1, 2))));
        assert!(segments_cross(s, (lp(-1, -1), lp(2, 2))));
    }

    #[test]
    fn forward_strand_rises() {
        let t = trace(&partition(), lp(0, 0), 1, 100).unwrap();
        assert_eq!(t.vertices.len(), 101);
        assert!(t.vertices.iter().any(|v| v.x > 0 && v.y > 0));
        assert!(t.vertices.iter().all(|v| in_half_plane(*v)));
    }

    #[test]
    fn small_window_is_consistent() {
        let g = build_graph(&partition(), &Kite::penrose(), 6).unwrap();
        assert!(g.passed());
        assert!(g.contains(lp(-6, 6)) && !g.contains(lp(7, 0)));
        let e = check_embedding(&g);
        assert!(e.passed());
        assert_eq!(e.edges, g.edges.len());
    }
}
