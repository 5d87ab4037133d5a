//! The compactification on `T^4_8 = (R/8Z)^4`: the embedding `psi~`, the
//! piecewise affine extensions of the strip maps, and the sweep over the
//! 832 lifted partition tiles.

use std::fmt::Write as _;

use crate::error::{ArithError, DataError, TorusError};
use crate::golden::{interpolate, GoldenPoint, GoldenReal};
use crate::graph::{reduce_torus, LatticePoint, Partition};
use crate::kite::StripMap;

/// A point of `T^4_8`, each coordinate in `[-4, 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Torus8Point(pub [GoldenReal; 4]);

pub type Vec4 = [GoldenReal; 4];

impl Torus8Point {
    pub fn reduce(v: Vec4) -> Torus8Point {
        Torus8Point(v.map(GoldenReal::reduce8))
    }

    pub fn try_reduce(v: Vec4) -> Result<Torus8Point, ArithError> {
        Ok(Torus8Point([v[0].dec8()?, v[1].dec8()?, v[2].dec8()?, v[3].dec8()?]))
    }

    /// Squared length of the shortest representative of `self - o`.
    pub fn dist_sq(&self, o: &Torus8Point) -> GoldenReal {
        (0..4).fold(GoldenReal::ZERO, |acc, i| {
            let d = (self.0[i] - o.0[i]).reduce8();
            acc + d * d
        })
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.0.map(|c| c.to_f64())
    }
}

/// `(x + y, x - y, (x + y)/phi, (x - y)/phi)` before reduction.
pub fn psi_tilde_lift(p: GoldenPoint) -> Vec4 {
    let (u, w) = (p.x + p.y, p.x - p.y);
    [u, w, u.mul_inv_phi(), w.mul_inv_phi()]
}

pub fn psi_tilde(p: GoldenPoint) -> Result<Torus8Point, ArithError> {
    Torus8Point::try_reduce(psi_tilde_lift(p))
}

/// `((x3 + x4)/4, (x1 + x2)/4)` reduced to `[-1/2, 1/2)^2`.
pub fn zeta_tilde(t: &Torus8Point) -> GoldenPoint {
    let [x1, x2, x3, x4] = t.0;
    reduce_torus(GoldenPoint::new((x3 + x4).shift(-2), (x1 + x2).shift(-2)))
}

/// `Ẽ(x) = L x + v(I)` where `I` is the interval of the dividing points
/// (multiples of 4) containing the scaled determiner `D(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMap {
    pub index: usize,
    pub linear: [Vec4; 4],
    /// Coefficients of `D = 4 d`, followed by its constant term.
    pub determiner: [GoldenReal; 5],
    pub breaks: Vec<i128>,
    pub offsets: Vec<Vec4>,
}

/// Branch of the determiner at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior(u8),
    /// On a dividing point; either adjacent interval may be chosen.
    Boundary,
}

fn zphi(g: GoldenReal) -> (i128, i128) {
    assert_eq!(g.k(), 0, "expected an element of Z[phi]");
    (g.a(), g.b())
}

impl ExtensionMap {
    /// The extension of a special strip map.
    pub fn derive(index: usize, s: &StripMap) -> ExtensionMap {
        let [a1, a2, a3] = s.alpha;
        // f = c u + e w + a3 with u = x + y, w = x - y
        let (cr, cq) = zphi((a1 + a2).shift(1));
        let (er, eq) = zphi((a1 - a2).shift(1));
        let k = [cr + cq, er + eq, cq, eq];
        let (s0, s1) = zphi((s.v.x + s.v.y).shift(-2));
        let (d0, d1) = zphi((s.v.x - s.v.y).shift(-2));
        let g = GoldenReal::int;
        let inv = |n: i128| g(n).mul_inv_phi();
        let phi = |n: i128| g(n).mul_phi();
        // Λ(U) = k1(U3 - U1/φ) + k3(U1 - φU3) + k2(U4 - U2/φ) + k4(U2 - φU4)
        let lambda = [g(k[2]) - inv(k[0]), g(k[3]) - inv(k[1]), g(k[0]) - phi(k[2]), g(k[1]) - phi(k[3])];
        let coef = [g(s1), g(d1), g(s0), g(d0)];
        let mut linear = [[GoldenReal::ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let id = if i == j { GoldenReal::ONE } else { GoldenReal::ZERO };
                linear[i][j] = id - coef[i] * lambda[j];
            }
        }
        let c4 = a3.shift(2);
        let determiner = [g(k[0]), g(k[1]), g(k[2]), g(k[3]), c4];
        let spread: i128 = k.iter().map(|x| x.abs()).sum::<i128>() * 4;
        let lo = (c4 - g(spread)).floor();
        let hi = (c4 + g(spread)).floor() + 1;
        let breaks: Vec<i128> =
            (lo..=hi).filter(|n| n.rem_euclid(4) == 0 && g(*n) > c4 - g(spread) && g(*n) < c4 + g(spread)).collect();
        let big_s = s.v.x + s.v.y;
        let big_d = s.v.x - s.v.y;
        let period = [big_s, big_d, big_s.mul_inv_phi(), big_d.mul_inv_phi()];
        let first = breaks[0].div_euclid(4) - 1;
        let offsets = (0..=breaks.len())
            .map(|i| {
                let n = first + i as i128;
                period.map(|c| (-c.scale(n)).reduce8())
            })
            .collect();
        ExtensionMap { index, linear, determiner, breaks, offsets }
    }

    /// Scaled determiner `D(x) = 4 d(x)`.
    pub fn determine(&self, t: &Torus8Point) -> GoldenReal {
        (0..4).fold(self.determiner[4], |acc, i| acc + self.determiner[i] * t.0[i])
    }

    /// Squared gradient of the unscaled determiner times 16, an integer.
    pub fn gradient_sq16(&self) -> i128 {
        self.determiner[..4].iter().map(|c| c.integer_value().expect("integer gradient")).map(|c| c * c).sum()
    }

    /// Distance between the two parallel 3-tori of the undefined set.
    pub fn component_distance(&self) -> f64 {
        4.0 / (self.gradient_sq16() as f64).sqrt()
    }

    /// Is `dist_sq < component_distance^2`, decided exactly.
    pub fn below_component_distance(&self, dist_sq: GoldenReal) -> bool {
        dist_sq.scale(self.gradient_sq16()) < GoldenReal::int(16)
    }

    fn first_floor(&self) -> i128 {
        self.breaks[0].div_euclid(4) - 1
    }

    fn interval_bit(&self, i: usize) -> u8 {
        (self.first_floor() + i as i128).rem_euclid(2) as u8
    }

    /// Interval index of `D`, and whether `D` is a dividing point.
    fn interval(&self, dv: GoldenReal) -> (usize, bool) {
        let mut i = 0;
        for b in &self.breaks {
            let bg = GoldenReal::int(*b);
            if dv == bg {
                return (i, true);
            }
            if dv > bg {
                i += 1;
            }
        }
        (i, false)
    }

    pub fn side(&self, t: &Torus8Point) -> Side {
        match self.interval(self.determine(t)) {
            (_, true) => Side::Boundary,
            (i, false) => Side::Interior(self.interval_bit(i)),
        }
    }

    /// Is `t` in the closure of component `eps`?
    pub fn in_closure(&self, t: &Torus8Point, eps: u8) -> bool {
        match self.side(t) {
            Side::Boundary => true,
            Side::Interior(b) => b == eps,
        }
    }

    /// Apply the map. On a dividing point the branch chooses the adjacent
    /// interval of matching parity; without a branch the point is undefined.
    pub fn apply(&self, t: &Torus8Point, branch: Option<u8>) -> Result<Torus8Point, TorusError> {
        let (i, on_break) = self.interval(self.determine(t));
        let idx = if on_break {
            let eps = branch.ok_or(TorusError::Undefined(self.index))?;
            if self.interval_bit(i + 1) == eps {
                i + 1
            } else {
                i
            }
        } else {
            i
        };
        if let Some(eps) = branch {
            if self.interval_bit(idx) != eps {
                return Err(TorusError::Undefined(self.index));
            }
        }
        let off = self.offsets[idx];
        let mut out = [GoldenReal::ZERO; 4];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = off[r];
            for c in 0..4 {
                let m = self.linear[r][c];
                if !m.is_zero() {
                    acc += m * t.0[c];
                }
            }
            *slot = acc;
        }
        Ok(Torus8Point::reduce(out))
    }

    /// Translation part on the interval `floor(D / 4) = n`, for any `n`.
    /// Consecutive offsets differ by a fixed period, so the table extends.
    pub fn branch_offset(&self, n: i128) -> Vec4 {
        let i = n - self.first_floor();
        if let Some(off) = usize::try_from(i).ok().and_then(|i| self.offsets.get(i)) {
            return *off;
        }
        let (a, b) = (self.offsets[0], self.offsets[1]);
        std::array::from_fn(|c| (a[c] + (b[c] - a[c]).scale(i)).reduce8())
    }

    /// The map on an arbitrary lift `v`, the interval read off from
    /// `floor(D(v) / 4)` instead of the table of dividing points.
    pub fn apply_lift(&self, v: &Vec4, branch: Option<u8>) -> Result<Torus8Point, TorusError> {
        let q = self.determine(&Torus8Point(*v)).shift(-2);
        let mut n = q.floor();
        if q.is_integer() {
            let eps = branch.ok_or(TorusError::Undefined(self.index))?;
            if (n - 1).rem_euclid(2) as u8 == eps {
                n -= 1;
            }
        }
        if branch.is_some_and(|eps| n.rem_euclid(2) as u8 != eps) {
            return Err(TorusError::Undefined(self.index));
        }
        let off = self.branch_offset(n);
        let out = std::array::from_fn(|r| (0..4).fold(off[r], |acc, c| acc + self.linear[r][c] * v[c]));
        Ok(Torus8Point::reduce(out))
    }
}

/// The four extensions, in the order of the strip maps.
pub fn extension_maps(strips: &[StripMap; 4]) -> [ExtensionMap; 4] {
    [0, 1, 2, 3].map(|j| ExtensionMap::derive(j + 1, &strips[j]))
}

fn write_pair(out: &mut String, g: GoldenReal) {
    let h = g.shift(1);
    let (a, b) = zphi(h);
    let _ = write!(out, " {a} {b}");
}

/// Text form: every value is an integer pair `a b` standing for `(a + b phi)/2`.
pub fn serialize_maps(maps: &[ExtensionMap]) -> String {
    let mut s = String::from("# Extensions of the strip maps to T^4_8.\n");
    s.push_str("# Each value is a pair a b meaning (a + b phi)/2.\n");
    s.push_str("# determiner: coefficients of D = 4d on x1..x4, then the constant.\n");
    s.push_str("# breaks: dividing points of D; one offset row per interval, left to right.\n");
    for m in maps {
        let _ = writeln!(s, "map {}", m.index);
        for row in &m.linear {
            s.push_str("linear");
            row.iter().for_each(|g| write_pair(&mut s, *g));
            s.push('\n');
        }
        s.push_str("determiner");
        m.determiner.iter().for_each(|g| write_pair(&mut s, *g));
        s.push('\n');
        s.push_str("breaks");
        m.breaks.iter().for_each(|b| {
            let _ = write!(s, " {b}");
        });
        s.push('\n');
        for o in &m.offsets {
            s.push_str("offset");
            o.iter().for_each(|g| write_pair(&mut s, *g));
            s.push('\n');
        }
    }
    s
}

fn pairs(line: &str, n: usize) -> Result<Vec<GoldenReal>, DataError> {
    let bad = || DataError::Malformed { file: crate::data::EXTMAPS_FILE.into(), msg: line.to_string() };
    let nums: Vec<i128> =
        line.split_whitespace().skip(1).map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if nums.len() != 2 * n {
        return Err(bad());
    }
    Ok(nums.chunks(2).map(|c| GoldenReal::half_pair(c[0], c[1])).collect())
}

pub fn parse_maps(text: &str) -> Result<Vec<ExtensionMap>, DataError> {
    let bad = |msg: &str| DataError::Malformed { file: crate::data::EXTMAPS_FILE.into(), msg: msg.to_string() };
    let mut maps: Vec<ExtensionMap> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let key = line.split_whitespace().next().unwrap_or_default();
        if key == "map" {
            let index = line[3..].trim().parse().map_err(|_| bad(line))?;
            maps.push(ExtensionMap {
                index,
                linear: [[GoldenReal::ZERO; 4]; 4],
                determiner: [GoldenReal::ZERO; 5],
                breaks: Vec::new(),
                offsets: Vec::new(),
            });
            continue;
        }
        let m = maps.last_mut().ok_or_else(|| bad(line))?;
        match key {
            "linear" => {
                let row = m.linear.iter().position(|r| r.iter().all(|g| g.is_zero())).unwrap_or(4);
                let v = pairs(line, 4)?;
                if row == 4 {
                    return Err(bad(line));
                }
                m.linear[row] = [v[0], v[1], v[2], v[3]];
            }
            "determiner" => {
                let v = pairs(line, 5)?;
                m.determiner = [v[0], v[1], v[2], v[3], v[4]];
            }
            "breaks" => {
                m.breaks = line
                    .split_whitespace()
                    .skip(1)
                    .map(|t| t.parse().map_err(|_| bad(line)))
                    .collect::<Result<_, _>>()?;
            }
            "offset" => {
                let v = pairs(line, 4)?;
                m.offsets.push([v[0], v[1], v[2], v[3]]);
            }
            _ => return Err(bad(line)),
        }
    }
    for m in &maps {
        if m.breaks.is_empty() || m.offsets.len() != m.breaks.len() + 1 {
            return Err(bad("offset count does not match the dividing points"));
        }
    }
    if maps.len() != 4 {
        return Err(DataError::Count { file: crate::data::EXTMAPS_FILE.into(), expected: 4, found: maps.len() });
    }
    Ok(maps)
}

pub type Itinerary = [u8; 8];

pub fn itinerary_string(it: &Itinerary) -> String {
    it.iter().map(|b| char::from(b'0' + b)).collect()
}

/// Itinerary of a point off the undefined sets, with the image after all
/// eight maps.
pub fn get_itinerary(maps: &[ExtensionMap; 4], t: &Torus8Point) -> Result<(Itinerary, Torus8Point), TorusError> {
    let mut it = [0u8; 8];
    let mut x = *t;
    for (k, slot) in it.iter_mut().enumerate() {
        let m = &maps[k % 4];
        match m.side(&x) {
            Side::Interior(b) => *slot = b,
            Side::Boundary => return Err(TorusError::Undefined(m.index)),
        }
        x = m.apply(&x, None)?;
    }
    Ok((it, x))
}

/// Does the extended orbit follow the closed components named by `eps`?
pub fn verify_itinerary(maps: &[ExtensionMap; 4], eps: &Itinerary, t: &Torus8Point) -> bool {
    let mut x = *t;
    for k in 0..8 {
        let m = &maps[k % 4];
        if !m.in_closure(&x, eps[k]) {
            return false;
        }
        match m.apply(&x, Some(eps[k])) {
            Ok(y) => x = y,
            Err(_) => return false,
        }
    }
    true
}

/// `mu+(X, Y) = (2Y + 1, 2Y - 1, 2X + 1/phi, 2X - 1/phi)`; `mu-` swaps the signs.
pub fn mu(sign: i8, p: GoldenPoint) -> Vec4 {
    let one = GoldenReal::int(sign as i128);
    let ip = one.mul_inv_phi();
    let (x2, y2) = (p.x.shift(1), p.y.shift(1));
    [y2 + one, y2 - one, x2 + ip, x2 - ip]
}

/// A partition polygon lifted to `T^2_4` and carried into `T^4_8`.
#[derive(Clone, Debug)]
pub struct LiftedTile {
    pub id: usize,
    pub base: usize,
    pub translate: (i64, i64),
    pub sign: i8,
    pub vertices: Vec<Vec4>,
}

pub fn lifted_tile(partition: &Partition, base: usize, translate: (i64, i64), sign: i8) -> LiftedTile {
    let shift = GoldenPoint::ints(translate.0 as i128, translate.1 as i128);
    let vertices = partition.polygon(base).vertices.iter().map(|v| mu(sign, *v + shift)).collect();
    let id = ((base - 1) * 16 + (translate.0 * 4 + translate.1) as usize) * 2 + usize::from(sign < 0);
    LiftedTile { id, base, translate, sign, vertices }
}

/// All `26 x 16 x 2` tiles.
pub fn lifted_tiles(partition: &Partition) -> Vec<LiftedTile> {
    let mut out = Vec::with_capacity(partition.polygons.len() * 32);
    for base in 1..=partition.polygons.len() {
        for i in 0..4 {
            for j in 0..4 {
                for sign in [1, -1] {
                    out.push(lifted_tile(partition, base, (i, j), sign));
                }
            }
        }
    }
    out
}

fn interp4(a: &Vec4, b: &Vec4) -> Vec4 {
    [0, 1, 2, 3].map(|i| interpolate(a[i], b[i]))
}

/// One round inserts `p_i phi^-2 + p_{i+1} phi^-1` after each vertex.
pub fn subdivide(poly: &[Vec4], rounds: u32) -> Vec<Vec4> {
    let mut cur = poly.to_vec();
    for _ in 0..rounds {
        let n = cur.len();
        let mut next = Vec::with_capacity(2 * n);
        for i in 0..n {
            next.push(cur[i]);
            next.push(interp4(&cur[(i + 1) % n], &cur[i]));
        }
        cur = next;
    }
    cur
}

/// Largest Euclidean distance between consecutive vertices in `R^4`.
pub fn stretch_sq(poly: &[Vec4]) -> GoldenReal {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&poly[i], &poly[(i + 1) % n]);
            (0..4).fold(GoldenReal::ZERO, |acc, c| {
                let d = a[c] - b[c];
                acc + d * d
            })
        })
        .max()
        .unwrap_or(GoldenReal::ZERO)
}

pub fn trace_point(poly: &[Vec4]) -> Vec4 {
    interp4(&poly[2], &interp4(&poly[0], &poly[1]))
}

/// Lattice displacement of the return map read off from two torus points:
/// the change of `psi` under `(dx, dy)` is `((5dx - dy) + (dy - 3dx) phi, -3dx + 2dx phi)`.
pub fn displacement(before: &Torus8Point, after: &Torus8Point) -> Option<LatticePoint> {
    let d = reduce_torus(zeta_tilde(after) - zeta_tilde(before));
    if d.x.k() != 0 || d.y.k() != 0 || d.y.b() % 2 != 0 {
        return None;
    }
    let dx = d.y.b() / 2;
    let dy = d.x.b() + 3 * dx;
    Some(LatticePoint::new(dx as i64, dy as i64))
}

#[derive(Clone, Debug)]
pub struct TileReport {
    pub id: usize,
    pub base: usize,
    pub translate: (i64, i64),
    pub sign: i8,
    pub itinerary: Option<Itinerary>,
    pub displacement: Option<LatticePoint>,
    pub vertices: usize,
    pub max_stretch: f64,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Trace-point itinerary, then every subdivided vertex must follow it, with
/// consecutive vertices closer than the undefined components at every step.
pub fn verify_tile(maps: &[ExtensionMap; 4], tile: &LiftedTile, rounds: u32) -> TileReport {
    let mut rep = TileReport {
        id: tile.id,
        base: tile.base,
        translate: tile.translate,
        sign: tile.sign,
        itinerary: None,
        displacement: None,
        vertices: 0,
        max_stretch: 0.0,
        passed: false,
        failure: None,
    };
    let tp = Torus8Point::reduce(trace_point(&tile.vertices));
    let (it, image) = match get_itinerary(maps, &tp) {
        Ok(r) => r,
        Err(e) => {
            rep.failure = Some(format!("trace point: {e}"));
            return rep;
        }
    };
    rep.itinerary = Some(it);
    rep.displacement = displacement(&tp, &image);
    let mut verts: Vec<Torus8Point> = subdivide(&tile.vertices, rounds).into_iter().map(Torus8Point::reduce).collect();
    rep.vertices = verts.len();
    for k in 0..8 {
        let m = &maps[k % 4];
        let n = verts.len();
        let worst = (0..n).map(|i| verts[i].dist_sq(&verts[(i + 1) % n])).max().unwrap_or(GoldenReal::ZERO);
        rep.max_stretch = rep.max_stretch.max(worst.to_f64().sqrt());
        if !m.below_component_distance(worst) {
            rep.failure = Some(format!("step {}: stretch {:.4} too large", k + 1, worst.to_f64().sqrt()));
            return rep;
        }
        let mut next = Vec::with_capacity(n);
        for v in &verts {
            if !m.in_closure(v, it[k]) {
                rep.failure = Some(format!("step {}: a vertex leaves component {}", k + 1, it[k]));
                return rep;
            }
            match m.apply(v, Some(it[k])) {
                Ok(y) => next.push(y),
                Err(e) => {
                    rep.failure = Some(format!("step {}: {e}", k + 1));
                    return rep;
                }
            }
        }
        verts = next;
    }
    rep.passed = true;
    rep
}

/// Two partition polygons share an edge segment of positive length on `T^2`.
pub fn adjacent(partition: &Partition, i: usize, j: usize) -> bool {
    let (p, q) = (partition.polygon(i), partition.polygon(j));
    for tx in -2..=2i128 {
        for ty in -2..=2i128 {
            let t = GoldenPoint::ints(tx, ty);
            for (a, b) in p.edges() {
                let e = b - a;
                let len = e.dot(e);
                for (c, d) in q.edges() {
                    let (c, d) = (c + t, d + t);
                    if !e.cross(c - a).is_zero() || !e.cross(d - a).is_zero() {
                        continue;
                    }
                    let (sc, sd) = (e.dot(c - a), e.dot(d - a));
                    let (lo, hi) = if sc < sd { (sc, sd) } else { (sd, sc) };
                    let lo = lo.max(GoldenReal::ZERO);
                    let hi = hi.min(len);
                    if lo < hi {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Outcome of the sweep over every lifted tile.
#[derive(Clone, Debug, Default)]
pub struct PartitionReport {
    pub tiles: Vec<TileReport>,
    /// Polygons whose tiles disagree with each other or with the type table.
    pub type_mismatches: Vec<String>,
    pub adjacent_pairs: usize,
    /// Adjacent polygons with the same unordered displacement pair.
    pub adjacent_collisions: Vec<(usize, usize)>,
    pub component_distances: [f64; 4],
}

impl PartitionReport {
    pub fn failed_tiles(&self) -> usize {
        self.tiles.iter().filter(|t| !t.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failed_tiles() == 0 && self.type_mismatches.is_empty() && self.adjacent_collisions.is_empty()
    }
}

/// The unordered displacement pair `{v+, v-}` of each polygon. The two
/// signs of one translate form the pair, and all 16 translates must agree.
pub fn polygon_pairs(tiles: &[TileReport], count: usize) -> (Vec<Option<Vec<LatticePoint>>>, Vec<String>) {
    let mut out = Vec::with_capacity(count);
    let mut problems = Vec::new();
    for base in 1..=count {
        let mut seen: Vec<Option<Vec<LatticePoint>>> = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let mut pair: Vec<Option<LatticePoint>> =
                    tiles.iter().filter(|t| t.base == base && t.translate == (i, j)).map(|t| t.displacement).collect();
                pair.sort();
                let pair = (pair.len() == 2 && pair.iter().all(Option::is_some))
                    .then(|| pair.into_iter().flatten().collect::<Vec<_>>());
                if !seen.contains(&pair) {
                    seen.push(pair);
                }
            }
        }
        if seen.len() != 1 || seen[0].is_none() {
            problems.push(format!("polygon {base}: displacement pair varies across its tiles"));
            out.push(None);
        } else {
            out.push(seen.pop().unwrap());
        }
    }
    (out, problems)
}

pub fn verify_partition(
    partition: &Partition,
    maps: &[ExtensionMap; 4],
    rounds: u32,
    tiles: &[LiftedTile],
) -> PartitionReport {
    use rayon::prelude::*;
    let mut rep = PartitionReport {
        component_distances: [0, 1, 2, 3].map(|i| maps[i].component_distance()),
        ..Default::default()
    };
    rep.tiles = tiles.par_iter().map(|t| verify_tile(maps, t, rounds)).collect();
    let count = partition.polygons.len();
    let (pairs, problems) = polygon_pairs(&rep.tiles, count);
    rep.type_mismatches = problems;
    for (k, pair) in pairs.iter().enumerate() {
        let Some(pair) = pair else { continue };
        let expected = match crate::graph::local_type(k + 1).edges {
            Some([a, b]) => {
                let mut v = vec![a, b];
                v.sort();
                v
            }
            None => vec![LatticePoint::default(); 2],
        };
        if *pair != expected {
            rep.type_mismatches.push(format!("polygon {}: displacements {pair:?}, type table {expected:?}", k + 1));
        }
    }
    for i in 1..=count {
        for j in (i + 1)..=count {
            if !adjacent(partition, i, j) {
                continue;
            }
            rep.adjacent_pairs += 1;
            if pairs[i - 1].is_some() && pairs[i - 1] == pairs[j - 1] {
                rep.adjacent_collisions.push((i, j));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kite::strip_maps;

    fn maps() -> [ExtensionMap; 4] {
        extension_maps(&strip_maps())
    }

    #[test]
    fn psi_tilde_of_unit_point() {
        let t = psi_tilde(GoldenPoint::ints(0, 1)).unwrap();
        let ip = GoldenReal::ONE.mul_inv_phi();
        assert_eq!(t.0, [GoldenReal::int(1), GoldenReal::int(-1), ip, -ip]);
    }

    #[test]
    fn mu_plus_of_p3_corner() {
        let v = mu(1, GoldenPoint::ORIGIN);
        let ip = GoldenReal::ONE.mul_inv_phi();
        assert_eq!(v, [GoldenReal::int(1), GoldenReal::int(-1), ip, -ip]);
    }

    #[test]
    fn zeta_tilde_forgets_the_line() {
        let x = GoldenReal::new(7, -3, 1);
        for m in [1, 3, -1, 5] {
            let z = zeta_tilde(&psi_tilde(GoldenPoint::new(x, GoldenReal::int(m))).unwrap());
            assert_eq!(z, reduce_torus(GoldenPoint::new(x.mul_inv_phi().half(), x.half())));
        }
    }

    #[test]
    fn first_map_has_three_intervals() {
        let m = &maps()[0];
        assert_eq!(m.breaks, vec![0, 4]);
        assert_eq!(m.offsets[1], [GoldenReal::ZERO; 4]);
        assert_eq!(m.gradient_sq16(), 1);
    }

    #[test]
    fn maps_are_well_defined_on_the_torus() {
        let ms = maps();
        let t = Torus8Point([
            GoldenReal::new(3, 1, 2),
            GoldenReal::new(-5, 2, 2),
            GoldenReal::new(1, -1, 1),
            GoldenReal::new(7, -4, 2),
        ]);
        for m in &ms {
            let base = m.apply(&t, None).unwrap();
            for i in 0..4 {
                let mut v = t.0;
                v[i] += GoldenReal::int(8);
                let shifted = Torus8Point(v);
                assert_eq!(m.apply_lift(&shifted.0, None).unwrap(), base, "map {} direction {}", m.index, i + 1);
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let ms = maps();
        let back = parse_maps(&serialize_maps(&ms)).unwrap();
        assert_eq!(back, ms.to_vec());
    }

    #[test]
    fn subdivision_doubles_and_shrinks() {
        let seg = vec![[GoldenReal::ZERO; 4], [GoldenReal::ONE; 4]];
        let once = subdivide(&seg, 1);
        assert_eq!(once.len(), 4);
        assert_eq!(once[1], [GoldenReal::ONE.mul_inv_phi(); 4]);
        assert_eq!(subdivide(&seg, 10).len(), 2048);
    }

    #[test]
    fn boundary_needs_a_branch() {
        let m = &maps()[0];
        // D = -x2 + 3, so x2 = 3 is the dividing point 0
        let t = Torus8Point([GoldenReal::ZERO, GoldenReal::int(3), GoldenReal::ZERO, GoldenReal::ZERO]);
        assert!(matches!(m.apply(&t, None), Err(TorusError::Undefined(1))));
        assert!(m.apply(&t, Some(0)).is_ok() && m.apply(&t, Some(1)).is_ok());
    }
}
