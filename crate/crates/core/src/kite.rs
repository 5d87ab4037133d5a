//! Outer billiards on the Penrose kite, the first return map to the two
//! horizontal lines `y = 1` and `y = -1`, and its factorisation into strip maps.

use crate::error::DynamicsError;
use crate::golden::{GoldenPoint, GoldenReal};

/// `A = phi^{-3} = 2 phi - 3`.
pub fn kite_a() -> GoldenReal {
    GoldenReal::phi_pow(-3)
}

/// Convex kite with vertices `(0,1), (-1,0), (0,-1), (A,0)` in counterclockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct Kite {
    pub a: GoldenReal,
    pub vertices: [GoldenPoint; 4],
}

impl Default for Kite {
    fn default() -> Self {
        Kite::with_parameter(kite_a())
    }
}

impl Kite {
    pub fn penrose() -> Self {
        Kite::default()
    }

    /// Kite for another parameter in `(0, 1)`; only the Penrose value is verified.
    pub fn with_parameter(a: GoldenReal) -> Self {
        assert!(a > GoldenReal::ZERO && a < GoldenReal::ONE, "kite parameter must lie in (0,1)");
        let v = [
            GoldenPoint::ints(0, 1),
            GoldenPoint::ints(-1, 0),
            GoldenPoint::ints(0, -1),
            GoldenPoint::new(a, GoldenReal::ZERO),
        ];
        Kite { a, vertices: v }
    }

    /// One outer billiards step `p -> 2v - p`, where the kite lies to the right
    /// of the ray from `p` through `v`.
    pub fn outer_step(&self, p: GoldenPoint) -> Result<GoldenPoint, DynamicsError> {
        let n = self.vertices.len();
        let inside = (0..n).all(|i| {
            let v = self.vertices[i];
            (self.vertices[(i + 1) % n] - v).cross(p - v).signum() >= 0
        });
        if inside {
            return Err(DynamicsError::NotOutside(p));
        }
        for i in 0..n {
            let v = self.vertices[i];
            let dir = v - p;
            let s_prev = dir.cross(self.vertices[(i + n - 1) % n] - p).signum();
            let s_next = dir.cross(self.vertices[(i + 1) % n] - p).signum();
            if s_prev < 0 && s_next < 0 {
                return Ok(v.scale(GoldenReal::int(2)) - p);
            }
            if s_prev <= 0 && s_next <= 0 {
                return Err(DynamicsError::UndefinedPoint(p));
            }
        }
        Err(DynamicsError::UndefinedPoint(p))
    }

    /// The square of the outer billiards map.
    pub fn upsilon(&self, p: GoldenPoint) -> Result<GoldenPoint, DynamicsError> {
        self.outer_step(self.outer_step(p)?)
    }

    /// First return of `upsilon` to `(0, inf) x {-1, 1}`.
    pub fn return_map(&self, p: GoldenPoint) -> Result<ReturnInfo, DynamicsError> {
        self.return_map_capped(p, 1_000_000)
    }

    pub fn return_map_capped(&self, p: GoldenPoint, cap: usize) -> Result<ReturnInfo, DynamicsError> {
        if !in_return_domain(p) {
            return Err(DynamicsError::NotInDomain(p));
        }
        let mut q = p;
        let mut max_abs = p.x.abs().max(p.y.abs());
        for steps in 1..=cap {
            q = self.upsilon(q)?;
            max_abs = max_abs.max(q.x.abs()).max(q.y.abs());
            if in_return_domain(q) {
                return Ok(ReturnInfo { point: q, steps, max_abs });
            }
        }
        Err(DynamicsError::NoReturn(p, cap))
    }
}

fn in_return_domain(p: GoldenPoint) -> bool {
    p.x > GoldenReal::ZERO && (p.y == GoldenReal::ONE || p.y == -GoldenReal::ONE)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReturnInfo {
    pub point: GoldenPoint,
    pub steps: usize,
    /// Largest coordinate magnitude seen along the orbit.
    pub max_abs: GoldenReal,
}

/// `E(p) = p - floor(f(p)) V` with `f(x, y) = a1 x + a2 y + a3` and `f(V) - a3 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripMap {
    pub alpha: [GoldenReal; 3],
    pub v: GoldenPoint,
}

impl StripMap {
    pub fn functional(&self, p: GoldenPoint) -> GoldenReal {
        self.alpha[0] * p.x + self.alpha[1] * p.y + self.alpha[2]
    }

    pub fn apply(&self, p: GoldenPoint) -> Result<GoldenPoint, DynamicsError> {
        let f = self.functional(p);
        if f.is_integer() {
            return Err(DynamicsError::OnBoundary(p));
        }
        let n = GoldenReal::int(f.floor());
        Ok(p - self.v.scale(n))
    }

    pub fn negated(&self) -> StripMap {
        StripMap { alpha: self.alpha, v: -self.v }
    }
}

fn q(a: i128, b: i128) -> GoldenReal {
    GoldenReal::new(a, b, 2)
}

/// The four strip maps `E1..E4`; `E5..E8` reuse them.
pub fn strip_maps() -> [StripMap; 4] {
    let g = |x: i128, y: i128| GoldenPoint::ints(x, y);
    [
        StripMap { alpha: [q(-1, 0), q(1, 0), q(3, 0)], v: g(0, 4) },
        StripMap { alpha: [q(0, -1), q(2, -1), q(2, -1)], v: g(-2, 2) },
        StripMap {
            alpha: [q(0, -1), q(-2, 1), q(2, -1)],
            v: GoldenPoint::new(GoldenReal::new(4, -4, 0), GoldenReal::ZERO),
        },
        StripMap { alpha: [q(-1, 0), q(-1, 0), q(3, 0)], v: g(-2, -2) },
    ]
}

/// `zeta(x, y) = (x, +-1)` for `y = +-1 mod 4`.
pub fn zeta(p: GoldenPoint) -> GoldenPoint {
    let y = p.y.integer_value().expect("zeta expects an integer second coordinate");
    let r = y.rem_euclid(4);
    assert!(r == 1 || r == 3, "zeta expects an odd second coordinate");
    GoldenPoint::new(p.x, GoldenReal::int(if r == 1 { 1 } else { -1 }))
}

/// The eight intermediate points `x1..x8` of the pinwheel factorisation.
pub fn pinwheel_chain(p: GoldenPoint) -> Result<[GoldenPoint; 8], DynamicsError> {
    let maps = strip_maps();
    let mut out = [GoldenPoint::ORIGIN; 8];
    let mut x = p;
    for (j, slot) in out.iter_mut().enumerate() {
        x = maps[j % 4].apply(x)?;
        *slot = x;
    }
    Ok(out)
}

/// `zeta o (E4 o E3 o E2 o E1)^2`, which agrees with the return map.
pub fn pinwheel(p: GoldenPoint) -> Result<GoldenPoint, DynamicsError> {
    Ok(zeta(pinwheel_chain(p)?[7]))
}

/// Outcome of comparing the pinwheel factorisation with direct iteration.
#[derive(Clone, Debug, Default)]
pub struct PinwheelReport {
    pub checked: usize,
    /// Points where the two maps disagree or one of them is undefined.
    pub mismatches: Vec<(GoldenPoint, String)>,
    /// Points where reflecting the image in the x-axis does not return to the reflected start.
    pub asymmetric: Vec<GoldenPoint>,
    /// Distinct values of the horizontal displacement of the return map.
    pub displacements: usize,
    pub longest_orbit: usize,
}

impl PinwheelReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.asymmetric.is_empty()
    }
}

/// `pinwheel(p) = return_map(p)` on every sample, plus the reflection
/// symmetry of the return map.
pub fn check_pinwheel(kite: &Kite, points: &[GoldenPoint]) -> PinwheelReport {
    use rayon::prelude::*;
    let flip = |p: GoldenPoint| GoldenPoint::new(p.x, -p.y);
    let results: Vec<(GoldenPoint, Result<(GoldenPoint, usize, bool), String>)> = points
        .par_iter()
        .map(|p| {
            let run = || -> Result<(GoldenPoint, usize, bool), DynamicsError> {
                let r = kite.return_map(*p)?;
                let back = kite.return_map(flip(r.point))?;
                Ok((r.point, r.steps, back.point == flip(*p)))
            };
            let out = match (run(), pinwheel(*p)) {
                (Ok((q, steps, sym)), Ok(w)) if q == w => Ok((q, steps, sym)),
                (Ok((q, _, _)), Ok(w)) => Err(format!("return map {q:?}, pinwheel {w:?}")),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            };
            (*p, out)
        })
        .collect();
    let mut rep = PinwheelReport { checked: points.len(), ..Default::default() };
    let mut shifts = std::collections::HashSet::new();
    for (p, r) in results {
        match r {
            Ok((q, steps, sym)) => {
                shifts.insert(q.x - p.x);
                rep.longest_orbit = rep.longest_orbit.max(steps);
                if !sym {
                    rep.asymmetric.push(p);
                }
            }
            Err(e) => rep.mismatches.push((p, e)),
        }
    }
    rep.displacements = shifts.len();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_step_reflects_through_a_vertex() {
        let k = Kite::penrose();
        let p = GoldenPoint::ints(3, 1);
        let q = k.outer_step(p).unwrap();
        // the tangent vertex is the midpoint
        let m = GoldenPoint::new((p.x + q.x).half(), (p.y + q.y).half());
        assert!(k.vertices.contains(&m));
        // the kite lies to the right of the ray p -> m
        for v in k.vertices {
            assert!((m - p).cross(v - p) <= GoldenReal::ZERO);
        }
    }

    #[test]
    fn edge_lines_are_undefined() {
        let k = Kite::penrose();
        assert!(matches!(k.outer_step(GoldenPoint::ints(-2, -1)), Err(DynamicsError::UndefinedPoint(_))));
        assert!(matches!(k.outer_step(GoldenPoint::ORIGIN), Err(DynamicsError::NotOutside(_))));
    }

    #[test]
    fn strip_functionals_are_normalised() {
        for e in strip_maps() {
            let f = e.functional(e.v) - e.alpha[2];
            assert_eq!(f, GoldenReal::ONE);
        }
    }

    #[test]
    fn return_lands_on_the_lines() {
        let k = Kite::penrose();
        let p = GoldenPoint::new(GoldenReal::phi_pow(-2), GoldenReal::ONE);
        let r = k.return_map(p).unwrap();
        assert!(r.point.x > GoldenReal::ZERO);
        assert!(r.point.y.abs() == GoldenReal::ONE);
    }
}
