//! The field `Q(phi)` with big rational coefficients. Used where divisions
//! leave the dyadic ring: polygon clipping and exact distances.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::golden::{GoldenPoint, GoldenReal, PHI_F64};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QGolden {
    pub a: BigRational,
    pub b: BigRational,
}

impl QGolden {
    pub fn zero() -> Self {
        QGolden { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        QGolden { a: BigRational::one(), b: BigRational::zero() }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        QGolden { a: BigRational::new(num.into(), den.into()), b: BigRational::zero() }
    }

    pub fn from_golden(g: GoldenReal) -> Self {
        let d = BigInt::one() << g.k();
        QGolden { a: BigRational::new(g.a().into(), d.clone()), b: BigRational::new(g.b().into(), d) }
    }

    /// Back to the dyadic ring when the denominators are powers of two.
    pub fn to_golden(&self) -> Option<GoldenReal> {
        let den = num_integer_lcm(self.a.denom(), self.b.denom());
        let k = den.bits().saturating_sub(1);
        if den != (BigInt::one() << k) {
            return None;
        }
        let a = (self.a.clone() * BigRational::from_integer(den.clone())).to_integer().to_i128()?;
        let b = (self.b.clone() * BigRational::from_integer(den)).to_integer().to_i128()?;
        Some(GoldenReal::new(a, b, k as u32))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn signum(&self) -> i32 {
        let den = num_integer_lcm(self.a.denom(), self.b.denom());
        let p = (self.a.clone() * BigRational::from_integer(den.clone())).to_integer();
        let q = (self.b.clone() * BigRational::from_integer(den)).to_integer();
        big_sign(&p, &q)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * PHI_F64
    }

    pub fn inverse(&self) -> QGolden {
        // (a + b phi)(a + b - b phi) = a^2 + ab - b^2
        let n = &self.a * &self.a + &self.a * &self.b - &self.b * &self.b;
        assert!(!n.is_zero(), "division by zero in Q(phi)");
        QGolden { a: (&self.a + &self.b) / &n, b: -&self.b / &n }
    }

    pub fn floor(&self) -> BigInt {
        let guess = BigInt::from(self.to_f64().floor() as i64);
        let mut n = guess;
        while self.cmp(&QGolden::int(&n)) == Ordering::Less {
            n -= 1;
        }
        while self.cmp(&QGolden::int(&(&n + 1))) != Ordering::Less {
            n += 1;
        }
        n
    }

    pub fn int(n: &BigInt) -> QGolden {
        QGolden { a: BigRational::from_integer(n.clone()), b: BigRational::zero() }
    }

    /// `x mod 1` in `[-1/2, 1/2)`.
    pub fn reduce1(&self) -> QGolden {
        let h = QGolden::rational(1, 2);
        let n = (self.clone() + h).floor();
        self.clone() - QGolden::int(&n)
    }
}

fn num_integer_lcm(x: &BigInt, y: &BigInt) -> BigInt {
    use num_integer::Integer;
    x.lcm(y)
}

fn big_sign(a: &BigInt, b: &BigInt) -> i32 {
    let sa = if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    };
    let sb = if b.is_zero() {
        0
    } else if b.is_positive() {
        1
    } else {
        -1
    };
    match (sa, sb) {
        (0, s) | (s, 0) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => {
            // compare |a| with |b| phi: |a|/|b| > phi <=> 2|a| - |b| > 0 and (2|a| - |b|)^2 > 5 b^2
            let (p, q) = (a.abs(), b.abs());
            let t: BigInt = &p * 2 - &q;
            let a_wins = t.is_positive() && &t * &t > &q * &q * 5;
            if a_wins {
                sa
            } else {
                sb
            }
        }
    }
}

impl Ord for QGolden {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.clone() - o.clone()).signum().cmp(&0)
    }
}

impl PartialOrd for QGolden {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for QGolden {
    type Output = QGolden;
    fn add(self, o: QGolden) -> QGolden {
        QGolden { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QGolden {
    type Output = QGolden;
    fn sub(self, o: QGolden) -> QGolden {
        QGolden { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for QGolden {
    type Output = QGolden;
    fn neg(self) -> QGolden {
        QGolden { a: -self.a, b: -self.b }
    }
}

impl Mul for QGolden {
    type Output = QGolden;
    fn mul(self, o: QGolden) -> QGolden {
        let bd = &self.b * &o.b;
        QGolden { a: &self.a * &o.a + &bd, b: &self.a * &o.b + &self.b * &o.a + bd }
    }
}

impl Div for QGolden {
    type Output = QGolden;
    fn div(self, o: QGolden) -> QGolden {
        self * o.inverse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoint {
    pub x: QGolden,
    pub y: QGolden,
}

impl QPoint {
    pub fn new(x: QGolden, y: QGolden) -> Self {
        QPoint { x, y }
    }

    pub fn from_golden(p: GoldenPoint) -> Self {
        QPoint::new(QGolden::from_golden(p.x), QGolden::from_golden(p.y))
    }

    pub fn to_golden(&self) -> Option<GoldenPoint> {
        Some(GoldenPoint::new(self.x.to_golden()?, self.y.to_golden()?))
    }

    pub fn sub(&self, o: &QPoint) -> QPoint {
        QPoint::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &QPoint) -> QPoint {
        QPoint::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn scale(&self, s: &QGolden) -> QPoint {
        QPoint::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    pub fn cross(&self, o: &QPoint) -> QGolden {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn dot(&self, o: &QPoint) -> QGolden {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }
}

/// Squared distance from `p` to the segment `[a, b]`.
pub fn segment_dist_sq(p: &QPoint, a: &QPoint, b: &QPoint) -> QGolden {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len = ab.dot(&ab);
    let t = ap.dot(&ab);
    if t.signum() <= 0 {
        return ap.dot(&ap);
    }
    if t >= len {
        let bp = p.sub(b);
        return bp.dot(&bp);
    }
    // |ap|^2 - t^2 / |ab|^2
    ap.dot(&ap) - (t.clone() * t) / len
}

/// Convex polygon intersection by successive half-plane clipping.
pub fn clip_convex(subject: &[QPoint], clip: &[QPoint]) -> Vec<QPoint> {
    let orient = signed_area2(clip).signum();
    let mut out: Vec<QPoint> = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&clip[i], &clip[(i + 1) % n]);
        let e = b.sub(a);
        let side = |p: &QPoint| e.cross(&p.sub(a)).signum() * orient;
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let cur = &input[j];
            let nxt = &input[(j + 1) % m];
            let (sc, sn) = (side(cur), side(nxt));
            if sc >= 0 {
                out.push(cur.clone());
            }
            if (sc > 0 && sn < 0) || (sc < 0 && sn > 0) {
                // intersection of cur..nxt with the clip line
                let d = nxt.sub(cur);
                let t = e.cross(&a.sub(cur)) / e.cross(&d);
                out.push(cur.add(&d.scale(&t)));
            }
        }
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
    }
    if out.len() < 3 || signed_area2(&out).is_zero() {
        return Vec::new();
    }
    out
}

pub fn signed_area2(poly: &[QPoint]) -> QGolden {
    let n = poly.len();
    let mut s = QGolden::zero();
    for i in 0..n {
        s = s + poly[i].cross(&poly[(i + 1) % n]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> QPoint {
        QPoint::new(QGolden::rational(x, 1), QGolden::rational(y, 1))
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QGolden::from_golden(GoldenReal::new(3, -7, 2));
        assert_eq!(x.clone() * x.inverse(), QGolden::one());
    }

    #[test]
    fn sign_matches_dyadic_ring() {
        for (a, b) in [(13, -8), (-21, 13), (5, -3), (-1, 1), (0, 0)] {
            let g = GoldenReal::new(a, b, 3);
            assert_eq!(QGolden::from_golden(g).signum(), g.signum());
        }
    }

    #[test]
    fn clip_two_squares() {
        let s = vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)];
        let c = vec![pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)];
        let r = clip_convex(&s, &c);
        assert_eq!(signed_area2(&r), QGolden::rational(2, 1));
        assert!(clip_convex(&s, &[pt(5, 5), pt(6, 5), pt(6, 6)]).is_empty());
    }
}
