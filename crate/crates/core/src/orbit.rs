//! The Cantor set on the bottom line, basepoints of the backward trace and
//! their 2-adic coding, the gap phenomenon and the descent argument.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::golden::{GoldenPoint, GoldenReal};
use crate::graph::{map_t, psi_linear, reduce_torus, LatticePoint, Partition, Trace};
use crate::inflation::{canonical_psi, SpecialSimilarity};
use crate::polygon::GoldenPolygon;
use crate::qfield::{segment_dist_sq, QGolden, QPoint};

/// Binary string `b1 b2 ... bL`; `n(11001) = 25`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CantorCode(pub Vec<u8>);

impl CantorCode {
    pub fn parse(s: &str) -> Option<CantorCode> {
        s.chars().map(|c| c.to_digit(2).map(|d| d as u8)).collect::<Option<Vec<_>>>().map(CantorCode)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |acc, b| 2 * acc + *b as u64)
    }

    /// Number of trailing zeros; `nu(11000) = 3`.
    pub fn nu(&self) -> usize {
        self.0.iter().rev().take_while(|b| **b == 0).count()
    }

    /// Every string of length `len`.
    pub fn all(len: usize) -> Vec<CantorCode> {
        (0..1u64 << len).map(|n| CantorCode((0..len).rev().map(|i| ((n >> i) & 1) as u8).collect())).collect()
    }
}

impl std::fmt::Display for CantorCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `2 phi^-3`, the right end of the Cantor interval.
pub fn cantor_end() -> GoldenReal {
    GoldenReal::phi_pow(-3).scale(2)
}

/// `v(p)`: height of `p` above the line through the origin parallel to `dH`.
pub fn height(p: LatticePoint) -> GoldenReal {
    (map_t(p) - GoldenReal::new(2, -1, 0)).half()
}

/// `gamma0`, the similarity of the gene whose strand carries `(0,0)` to
/// `(0,0)`, and `gamma1 = tau . gamma0` with `tau(z) = z - V0`.
#[derive(Clone, Copy, Debug)]
pub struct CantorContractions {
    pub similarity: SpecialSimilarity,
    pub v0: GoldenPoint,
}

impl CantorContractions {
    pub fn new() -> Self {
        CantorContractions {
            similarity: SpecialSimilarity { m: 1, n: 0 },
            v0: reduce_torus(psi_linear(LatticePoint::new(5, -1))),
        }
    }

    pub fn gamma(&self, j: u8, z: GoldenPoint) -> GoldenPoint {
        let g = self.similarity.apply(z);
        if j == 0 {
            g
        } else {
            g - self.v0
        }
    }

    /// `K_beta = gamma_{bL}( ... gamma_{b1}(K))`.
    pub fn piece(&self, k: &GoldenPolygon, code: &CantorCode) -> GoldenPolygon {
        code.0.iter().fold(k.clone(), |acc, b| acc.map(|v| self.gamma(*b, v)))
    }

    /// `K0 = gamma0(K)` and `K1 = tau(K0)` lie in `K`, and `K1` has a corner at the origin.
    pub fn first_pieces_fit(&self, k: &GoldenPolygon) -> bool {
        let k0 = self.piece(k, &CantorCode(vec![0]));
        let k1 = self.piece(k, &CantorCode(vec![1]));
        let inside = |p: &GoldenPolygon| p.vertices.iter().all(|v| k.contains_closed(*v));
        inside(&k0) && inside(&k1) && k1.vertices.contains(&GoldenPoint::ORIGIN)
    }
}

impl Default for CantorContractions {
    fn default() -> Self {
        Self::new()
    }
}

/// Type-3 vertices of a trace with `T` in `(0, 2 phi^-3)`, with their
/// positions along the trace.
pub fn basepoints(trace: &Trace) -> Vec<(usize, LatticePoint)> {
    let end = cantor_end();
    trace
        .vertices
        .iter()
        .zip(&trace.types)
        .enumerate()
        .filter(|(_, (p, ty))| **ty == 3 && map_t(**p) < end)
        .map(|(i, (p, _))| (i, *p))
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct BasepointReport {
    pub count: usize,
    pub pieces_fit: bool,
    /// `n` with `Psi(X_{2n+j}) != gamma_j(Psi(X_n))`.
    pub coding_failures: Vec<(usize, u8)>,
    /// Codes whose basepoint misses its piece `K_beta`.
    pub piece_failures: Vec<CantorCode>,
    pub codes_checked: usize,
}

/// The basepoints, in order along the backward trace, against the tree of
/// contractions: the lift of `Psi(X_{2n+j})` into `K` must be exactly
/// `gamma_j` of the lift of `Psi(X_n)`, and every
/// `X_beta` with `|beta| <= depth` must lie in the closed piece `K_beta`.
pub fn check_basepoints(partition: &Partition, points: &[LatticePoint], depth: usize) -> BasepointReport {
    let c = CantorContractions::new();
    let k = partition.polygon(3);
    let lifts: Vec<Option<GoldenPoint>> = points.iter().map(|p| canonical_psi(k, *p)).collect();
    let mut rep = BasepointReport { count: points.len(), pieces_fit: c.first_pieces_fit(k), ..Default::default() };
    for n in 0..points.len() {
        for j in 0..2u8 {
            let Some(child) = lifts.get(2 * n + j as usize) else { continue };
            if lifts[n].map(|z| c.gamma(j, z)) != *child || child.is_none() {
                rep.coding_failures.push((n, j));
            }
        }
    }
    for len in 1..=depth {
        for code in CantorCode::all(len) {
            let Some(x) = lifts.get(code.value() as usize) else { continue };
            rep.codes_checked += 1;
            if !x.is_some_and(|x| c.piece(k, &code).contains_closed(x)) {
                rep.piece_failures.push(code);
            }
        }
    }
    rep
}

/// One excursion between consecutive basepoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Excursion {
    pub index: usize,
    pub basepoint: LatticePoint,
    pub nu: usize,
    pub height: f64,
    pub steps: usize,
    /// Steps from the basepoint towards the origin that copy the forward
    /// trace from `(0,0)`.
    pub prefix: usize,
}

/// Excursions of the backward trace between basepoints `n - 1` and `n`.
pub fn rising_profile(back: &Trace, forward: &Trace) -> Vec<Excursion> {
    let bp = basepoints(back);
    let fwd_steps: Vec<LatticePoint> = forward.vertices.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = Vec::new();
    for n in 1..bp.len() {
        let (a, b) = (bp[n - 1].0, bp[n].0);
        let height = back.vertices[a..=b].iter().map(|p| height(*p)).max().unwrap_or(GoldenReal::ZERO);
        // walking from X_n towards the origin is the forward direction
        let prefix = (0..b)
            .take_while(|i| fwd_steps.get(*i).is_some_and(|s| back.vertices[b - i - 1] - back.vertices[b - i] == *s))
            .count();
        out.push(Excursion {
            index: n,
            basepoint: bp[n].1,
            nu: n.trailing_zeros() as usize,
            height: height.to_f64(),
            steps: b - a,
            prefix,
        });
    }
    out
}

/// Largest excursion height seen for each `nu`, and whether it increases.
pub fn heights_by_nu(profile: &[Excursion]) -> (Vec<f64>, bool) {
    let top = profile.iter().map(|e| e.nu).max().map_or(0, |m| m + 1);
    let mut best = vec![f64::MIN; top];
    for e in profile {
        best[e.nu] = best[e.nu].max(e.height);
    }
    let rising = best.windows(2).all(|w| w[0] < w[1]);
    (best, rising)
}

#[derive(Clone, Debug, Default)]
pub struct GapReport {
    pub samples: usize,
    pub min_distance: f64,
    /// Samples closer than the threshold to `P3`.
    pub close: Vec<usize>,
    /// The minimum distance also exceeds the drift of `psi` between samples.
    pub covers_segment: bool,
    pub type3_checked: usize,
    /// Type-3 vertices with `v` in `[phi^-3, 7)`.
    pub type3_violations: Vec<LatticePoint>,
    pub diagonal_ok: bool,
}

fn q_int(n: i64) -> QGolden {
    QGolden::rational(n, 1)
}

/// Exact squared distance from `p` to a closed convex polygon.
pub fn dist_sq_to_polygon(p: &QPoint, poly: &[QPoint]) -> QGolden {
    let n = poly.len();
    let orient = crate::qfield::signed_area2(poly).signum();
    let inside = (0..n).all(|i| {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        b.sub(a).cross(&p.sub(a)).signum() * orient >= 0
    });
    if inside {
        return QGolden::zero();
    }
    (0..n).map(|i| segment_dist_sq(p, &poly[i], &poly[(i + 1) % n])).min().expect("nonempty polygon")
}

/// `psi(x) = (x / 2phi, x / 2)` for a rational `x`, reduced to `[-1/2, 1/2)^2`.
fn psi_rational(x: &BigRational) -> QPoint {
    let xq = QGolden { a: x.clone(), b: BigRational::from_integer(BigInt::from(0)) };
    let half = QGolden::rational(1, 2);
    // 1/phi = phi - 1
    let inv_phi = QGolden { a: BigRational::from_integer((-1).into()), b: BigRational::from_integer(1.into()) };
    QPoint::new((xq.clone() * inv_phi * half.clone()).reduce1(), (xq * half).reduce1())
}

/// `psi` of `samples` evenly spaced points of `[lo, hi]` against `P3`, then the
/// gap corollary on the type-3 vertices of the given traces.
pub fn gap_check(
    partition: &Partition,
    lo: i64,
    hi: i64,
    samples: usize,
    threshold: (i64, i64),
    traces: &[&Trace],
) -> GapReport {
    let p3: Vec<QPoint> = partition.polygon(3).vertices.iter().map(|v| QPoint::from_golden(*v)).collect();
    let translates: Vec<Vec<QPoint>> = (-1..=1)
        .flat_map(|i| (-1..=1).map(move |j| (i, j)))
        .map(|(i, j)| p3.iter().map(|v| v.add(&QPoint::new(q_int(i), q_int(j)))).collect())
        .collect();
    let (tn, td) = threshold;
    let limit = QGolden::rational(tn * tn, td * td);
    let mut rep = GapReport { samples, min_distance: f64::INFINITY, ..Default::default() };
    let mut min_sq: Option<QGolden> = None;
    let span = BigRational::from_integer((hi - lo).into());
    for i in 0..samples {
        let x = BigRational::from_integer(lo.into())
            + span.clone() * BigRational::new(BigInt::from(i), BigInt::from(samples.max(2) - 1));
        let p = psi_rational(&x);
        let d = translates.iter().map(|t| dist_sq_to_polygon(&p, t)).min().expect("translates");
        if d <= limit {
            rep.close.push(i);
        }
        if min_sq.as_ref().is_none_or(|m| d < *m) {
            min_sq = Some(d);
        }
    }
    rep.min_distance = min_sq.map_or(f64::INFINITY, |d| d.to_f64().sqrt());
    // psi moves at speed |(1/2phi, 1/2)| < 0.6; half a sample gap is the worst case
    let gap = (hi - lo) as f64 / (samples.max(2) - 1) as f64;
    rep.covers_segment = rep.min_distance > 0.6 * gap / 2.0;
    // the long diagonal: psi(0) and psi(2 phi^-3) are opposite corners of P3
    let k = partition.polygon(3);
    let ends = [
        GoldenPoint::ORIGIN,
        crate::graph::reduce_torus(GoldenPoint::new(cantor_end().mul_inv_phi().half(), cantor_end().half())),
    ];
    let corner = |q: GoldenPoint| {
        (-1..=1i128)
            .flat_map(|i| (-1..=1i128).map(move |j| (i, j)))
            .find_map(|(i, j)| k.vertices.iter().position(|v| *v == q + GoldenPoint::ints(i, j)))
    };
    rep.diagonal_ok = match (corner(ends[0]), corner(ends[1])) {
        (Some(a), Some(b)) => {
            let n = k.vertices.len();
            (a + n - b) % n != 1 && (b + n - a) % n != 1 && a != b
        }
        _ => false,
    };
    let low = GoldenReal::phi_pow(-3);
    let seven = GoldenReal::int(7);
    for t in traces {
        for (p, ty) in t.vertices.iter().zip(&t.types) {
            if *ty != 3 {
                continue;
            }
            rep.type3_checked += 1;
            let v = height(*p);
            if v >= low && v < seven {
                rep.type3_violations.push(*p);
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Default)]
pub struct DescentReport {
    pub candidates: usize,
    /// Points of `2Z[phi]` in the interval whose orbit never leaves it and
    /// never reaches an endpoint.
    pub members: Vec<GoldenReal>,
    pub endpoint_orbits: usize,
    pub longest_orbit: usize,
}

/// The expanding map of the Cantor interval: `x -> phi^3 x` on the left
/// piece, `x -> 2 - phi^3 x` on the right, `None` in the middle gap or outside.
pub fn cantor_step(x: GoldenReal) -> Option<GoldenReal> {
    let end = cantor_end();
    if x < GoldenReal::ZERO || x > end {
        return None;
    }
    let p3 = GoldenReal::phi_pow(3);
    let left = p3 * x;
    if left <= end {
        return Some(left);
    }
    let right = GoldenReal::int(2) - left;
    (right >= GoldenReal::ZERO).then_some(right)
}

/// Every `a + b phi` with `a, b` even and `|a|, |b| <= bound` in the Cantor
/// interval either leaves under the expanding map or lands on an endpoint.
pub fn descent_check(bound: i128) -> DescentReport {
    let mut rep = DescentReport::default();
    let end = cantor_end();
    for a in (-bound..=bound).filter(|a| a % 2 == 0) {
        for b in (-bound..=bound).filter(|b| b % 2 == 0) {
            let x = GoldenReal::new(a, b, 0);
            if x < GoldenReal::ZERO || x > end {
                continue;
            }
            rep.candidates += 1;
            let mut seen = std::collections::HashSet::new();
            let mut cur = x;
            let mut steps = 0;
            loop {
                if cur.is_zero() || cur == end {
                    rep.endpoint_orbits += 1;
                    break;
                }
                if !seen.insert(cur) {
                    rep.members.push(x);
                    break;
                }
                match cantor_step(cur) {
                    Some(n) => cur = n,
                    None => break,
                }
                steps += 1;
            }
            rep.longest_orbit = rep.longest_orbit.max(steps);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        let c = CantorCode::parse("11001").unwrap();
        assert_eq!(c.value(), 25);
        assert_eq!(CantorCode::parse("11000").unwrap().nu(), 3);
        assert_eq!(CantorCode::all(3).len(), 8);
        assert_eq!(CantorCode::all(3)[5].to_string(), "101");
    }

    #[test]
    fn translation_v0() {
        // (5 phi^-4 - phi^-1, 5 phi^-3) reduces to (phi^-4 - phi^-7, phi^-3 - phi^-6)
        let v = reduce_torus(CantorContractions::new().v0);
        let want = GoldenPoint::new(
            GoldenReal::phi_pow(-4) - GoldenReal::phi_pow(-7),
            GoldenReal::phi_pow(-3) - GoldenReal::phi_pow(-6),
        );
        assert_eq!(v, want);
    }

    #[test]
    fn descent_small_cases() {
        assert_eq!(cantor_step(GoldenReal::new(-2, 2, 0)), None);
        assert_eq!(cantor_step(cantor_end()), Some(GoldenReal::ZERO));
        let r = descent_check(20);
        assert!(r.members.is_empty());
        assert!(r.endpoint_orbits >= 2);
    }

    #[test]
    fn height_of_axis_points() {
        assert_eq!(height(LatticePoint::new(0, 5)), GoldenReal::int(5));
    }
}
