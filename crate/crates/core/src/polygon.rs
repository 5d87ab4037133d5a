//! Convex polygons with golden vertices and exact containment tests.

use crate::golden::{GoldenPoint, GoldenReal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenPolygon {
    pub vertices: Vec<GoldenPoint>,
}

/// Axis-aligned box in floating point, used only to skip hopeless exact tests.
#[derive(Clone, Copy, Debug)]
pub struct BBox {
    pub min: (f64, f64),
    pub max: (f64, f64),
}

impl BBox {
    fn contains(&self, p: (f64, f64), slack: f64) -> bool {
        p.0 >= self.min.0 - slack && p.0 <= self.max.0 + slack && p.1 >= self.min.1 - slack && p.1 <= self.max.1 + slack
    }
}

impl GoldenPolygon {
    pub fn new(vertices: Vec<GoldenPoint>) -> Self {
        GoldenPolygon { vertices }
    }

    pub fn from_rows(rows: &[[i64; 4]]) -> Self {
        GoldenPolygon::new(rows.iter().map(|r| GoldenPoint::from_row(*r)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (GoldenPoint, GoldenPoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Twice the signed area.
    pub fn area2(&self) -> GoldenReal {
        self.edges().fold(GoldenReal::ZERO, |acc, (a, b)| acc + a.cross(b))
    }

    pub fn orientation(&self) -> i32 {
        self.area2().signum()
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        let o = self.orientation();
        o != 0
            && (0..n).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let c = self.vertices[(i + 2) % n];
                (b - a).cross(c - b).signum() == o
            })
    }

    /// Sign of `p` against every edge: all strictly inside gives `Inside`.
    pub fn locate(&self, p: GoldenPoint) -> Location {
        let o = self.orientation();
        let mut on_edge = false;
        for (a, b) in self.edges() {
            let s = (b - a).cross(p - a).signum();
            if s == 0 {
                on_edge = true;
            } else if s != o {
                return Location::Outside;
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Inside
        }
    }

    pub fn contains_open(&self, p: GoldenPoint) -> bool {
        self.locate(p) == Location::Inside
    }

    pub fn contains_closed(&self, p: GoldenPoint) -> bool {
        self.locate(p) != Location::Outside
    }

    /// Some edge line of either polygon has the other on its closed outer side.
    pub fn interiors_disjoint(&self, other: &GoldenPolygon) -> bool {
        let splits = |p: &GoldenPolygon, q: &GoldenPolygon| {
            let o = p.orientation();
            p.edges().any(|(a, b)| q.vertices.iter().all(|v| (b - a).cross(*v - a).signum() * o <= 0))
        };
        splits(self, other) || splits(other, self)
    }

    pub fn translate(&self, t: GoldenPoint) -> GoldenPolygon {
        GoldenPolygon::new(self.vertices.iter().map(|v| *v + t).collect())
    }

    pub fn map(&self, f: impl Fn(GoldenPoint) -> GoldenPoint) -> GoldenPolygon {
        GoldenPolygon::new(self.vertices.iter().map(|v| f(*v)).collect())
    }

    pub fn bbox(&self) -> BBox {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            let (x, y) = v.to_f64();
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        BBox { min, max }
    }

    /// Integer translate `(i, j)` in `[-3, 3]^2` of this polygon that contains `p`.
    pub fn lattice_locate(&self, p: GoldenPoint, open: bool) -> Option<(i64, i64)> {
        let bb = self.bbox();
        let (px, py) = p.to_f64();
        for i in -3..=3i64 {
            for j in -3..=3i64 {
                let q = (px - i as f64, py - j as f64);
                if !bb.contains(q, 1e-6) {
                    continue;
                }
                let shifted = p - GoldenPoint::ints(i as i128, j as i128);
                let hit = if open { self.contains_open(shifted) } else { self.contains_closed(shifted) };
                if hit {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn lattice_contains_open(&self, p: GoldenPoint) -> bool {
        self.lattice_locate(p, true).is_some()
    }

    pub fn lattice_contains_closed(&self, p: GoldenPoint) -> bool {
        self.lattice_locate(p, false).is_some()
    }

    pub fn centroid_f64(&self) -> (f64, f64) {
        let n = self.vertices.len() as f64;
        let (sx, sy) = self.vertices.iter().fold((0.0, 0.0), |(sx, sy), v| {
            let (x, y) = v.to_f64();
            (sx + x, sy + y)
        });
        (sx / n, sy / n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> GoldenPolygon {
        GoldenPolygon::new(vec![
            GoldenPoint::ints(0, 0),
            GoldenPoint::ints(1, 0),
            GoldenPoint::ints(1, 1),
            GoldenPoint::ints(0, 1),
        ])
    }

    #[test]
    fn containment_respects_boundary() {
        let s = unit_square();
        let half = GoldenReal::new(1, 0, 1);
        assert!(s.contains_open(GoldenPoint::new(half, half)));
        assert!(!s.contains_open(GoldenPoint::new(half, GoldenReal::ZERO)));
        assert!(s.contains_closed(GoldenPoint::new(half, GoldenReal::ZERO)));
        assert!(!s.contains_closed(GoldenPoint::new(half, GoldenReal::int(2))));
    }

    #[test]
    fn orientation_does_not_matter() {
        let mut s = unit_square();
        s.vertices.reverse();
        let half = GoldenReal::new(1, 0, 1);
        assert!(s.contains_open(GoldenPoint::new(half, half)));
        assert!(s.is_convex());
    }

    #[test]
    fn lattice_translates() {
        let s = unit_square();
        let p = GoldenPoint::new(GoldenReal::new(5, 0, 1), GoldenReal::new(-3, 0, 1));
        assert_eq!(s.lattice_locate(p, true), Some((2, -2)));
    }
}
