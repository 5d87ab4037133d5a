//! Exact arithmetic in the dyadic golden ring `Z[phi][1/2]`.
//!
//! A [`GoldenReal`] is stored as `(a + b*phi) / 2^k` with `a, b` in `i128`.
//! Every operation is overflow checked and panics instead of wrapping, so a
//! result is either exact or the program stops.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::ArithError;

pub const PHI_F64: f64 = 1.618_033_988_749_895;

const FIB50: i128 = 12_586_269_025;
const FIB51: i128 = 20_365_011_074;
const FIB52: i128 = 32_951_280_099;

#[inline]
fn ck_add(x: i128, y: i128) -> i128 {
    x.checked_add(y).expect("golden arithmetic overflow (add)")
}

#[inline]
fn ck_mul(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("golden arithmetic overflow (mul)")
}

#[inline]
fn ck_shl(x: i128, s: u32) -> i128 {
    if s == 0 {
        return x;
    }
    assert!(s < 127, "golden arithmetic overflow (shift)");
    let r = x << s;
    assert!(r >> s == x, "golden arithmetic overflow (shift)");
    r
}

/// An element `(a + b*phi) / 2^k` in canonical form (minimal `k`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenReal {
    a: i128,
    b: i128,
    k: u32,
}

impl GoldenReal {
    pub const ZERO: GoldenReal = GoldenReal { a: 0, b: 0, k: 0 };
    pub const ONE: GoldenReal = GoldenReal { a: 1, b: 0, k: 0 };
    pub const PHI: GoldenReal = GoldenReal { a: 0, b: 1, k: 0 };

    pub fn new(a: i128, b: i128, k: u32) -> Self {
        let mut r = GoldenReal { a, b, k };
        r.canonicalize();
        r
    }

    pub fn int(n: i128) -> Self {
        GoldenReal { a: n, b: 0, k: 0 }
    }

    /// `(a + b*phi)/2`, the coordinate convention of the data tables.
    pub fn half_pair(a: i128, b: i128) -> Self {
        Self::new(a, b, 1)
    }

    fn canonicalize(&mut self) {
        if self.a == 0 && self.b == 0 {
            self.k = 0;
            return;
        }
        let tz = (self.a | self.b).trailing_zeros().min(self.k);
        self.a >>= tz;
        self.b >>= tz;
        self.k -= tz;
    }

    pub fn a(&self) -> i128 {
        self.a
    }
    pub fn b(&self) -> i128 {
        self.b
    }
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `phi^n` for any integer `n`.
    pub fn phi_pow(n: i32) -> Self {
        let mut r = Self::ONE;
        if n >= 0 {
            for _ in 0..n {
                r = r.mul_phi();
            }
        } else {
            for _ in 0..(-n) {
                r = r.mul_inv_phi();
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_integer(&self) -> bool {
        self.b == 0 && self.k == 0
    }

    pub fn integer_value(&self) -> Option<i128> {
        self.is_integer().then_some(self.a)
    }

    /// Multiply by `phi`, using `phi^2 = phi + 1`.
    pub fn mul_phi(self) -> Self {
        GoldenReal::new(self.b, ck_add(self.a, self.b), self.k)
    }

    /// Multiply by `1/phi = phi - 1`.
    pub fn mul_inv_phi(self) -> Self {
        GoldenReal::new(ck_add(self.b, -self.a), self.a, self.k)
    }

    pub fn half(self) -> Self {
        GoldenReal::new(self.a, self.b, self.k + 1)
    }

    pub fn scale(self, n: i128) -> Self {
        GoldenReal::new(ck_mul(self.a, n), ck_mul(self.b, n), self.k)
    }

    pub fn shift(self, e: i32) -> Self {
        if e >= 0 {
            GoldenReal::new(ck_shl(self.a, e as u32), ck_shl(self.b, e as u32), self.k)
        } else {
            GoldenReal::new(self.a, self.b, self.k + (-e) as u32)
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * PHI_F64) / 2f64.powi(self.k as i32)
    }

    /// Exact sign of `a + b*phi` (the power of two does not matter).
    pub fn signum(&self) -> i32 {
        sign_of(self.a, self.b)
    }

    /// Fibonacci cross-check: `s1 = a*F50 + b*F51`, `s2 = a*F51 + b*F52`.
    /// Returns the sign when both agree, `None` when inconclusive.
    pub fn fib_sign(&self) -> Option<i32> {
        let s1 = self.a.checked_mul(FIB50)?.checked_add(self.b.checked_mul(FIB51)?)?;
        let s2 = self.a.checked_mul(FIB51)?.checked_add(self.b.checked_mul(FIB52)?)?;
        let (g1, g2) = (s1.signum() as i32, s2.signum() as i32);
        (g1 == g2).then_some(g1)
    }

    pub fn abs(self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self
        }
    }

    pub fn floor(&self) -> i128 {
        let guess = self.to_f64().floor();
        let mut n = if guess.is_finite() { guess as i128 } else { 0 };
        while *self < GoldenReal::int(n) {
            n -= 1;
        }
        while *self >= GoldenReal::int(n + 1) {
            n += 1;
        }
        n
    }

    /// Representative of `x mod 1` in `[-1/2, 1/2)`. Exact half-integers are
    /// ties and rejected.
    pub fn dec(self) -> Result<GoldenReal, ArithError> {
        let h = GoldenReal::new(1, 0, 1);
        let shifted = self + h;
        if shifted.is_integer() {
            return Err(ArithError::BoundaryTie(self));
        }
        Ok(self - GoldenReal::int(shifted.floor()))
    }

    /// Representative of `x mod 8` in `[-4, 4)`.
    pub fn dec8(self) -> Result<GoldenReal, ArithError> {
        match self.shift(-3).dec() {
            Ok(v) => Ok(v.shift(3)),
            Err(_) => Err(ArithError::BoundaryTie(self)),
        }
    }

    /// `x mod 8` in `[-4, 4)`, sending the tie `4` to `-4`.
    pub fn reduce8(self) -> GoldenReal {
        let q = (self + GoldenReal::int(4)).shift(-3).floor();
        self - GoldenReal::int(8 * q)
    }

    /// `x mod 1` in `[-1/2, 1/2)`, sending the tie `1/2` to `-1/2`.
    pub fn reduce1(self) -> GoldenReal {
        let q = (self + GoldenReal::new(1, 0, 1)).floor();
        self - GoldenReal::int(q)
    }

    /// Galois conjugate `a + b*phi -> a + b*(1 - phi)`.
    pub fn conjugate(self) -> Self {
        GoldenReal::new(ck_add(self.a, self.b), -self.b, self.k)
    }
}

/// `a*phi^{-1} + b*phi^{-2}`: the golden interpolation between `a` and `b`.
pub fn interpolate(a: GoldenReal, b: GoldenReal) -> GoldenReal {
    a.mul_inv_phi() + b.mul_inv_phi().mul_inv_phi()
}

fn sign_of(a: i128, b: i128) -> i32 {
    match (a.signum(), b.signum()) {
        (0, s) | (s, 0) => s as i32,
        (1, 1) => 1,
        (-1, -1) => -1,
        (1, -1) => {
            // a + b phi > 0  <=>  a / |b| > phi
            if exceeds_phi(a, -b) {
                1
            } else {
                -1
            }
        }
        _ => {
            // a < 0 < b:  b phi > |a|  <=>  not (|a| / b > phi)
            if exceeds_phi(-a, b) {
                -1
            } else {
                1
            }
        }
    }
}

/// `p / q > phi` for positive `p, q`, decided with integer arithmetic:
/// `p/q < phi  <=>  2p - q < 0  or  (2p - q)^2 < 5 q^2` (equality is impossible).
fn exceeds_phi(p: i128, q: i128) -> bool {
    let t = match p.checked_mul(2).and_then(|x| x.checked_sub(q)) {
        Some(t) => t,
        None => return exceeds_phi_big(p, q),
    };
    if t < 0 {
        return false;
    }
    match (t.checked_mul(t), q.checked_mul(q).and_then(|x| x.checked_mul(5))) {
        (Some(l), Some(r)) => l > r,
        _ => exceeds_phi_big(p, q),
    }
}

fn exceeds_phi_big(p: i128, q: i128) -> bool {
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let t = &p * 2 - &q;
    if t < BigInt::from(0) {
        return false;
    }
    &t * &t > &q * &q * 5
}

impl Ord for GoldenReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl PartialOrd for GoldenReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for GoldenReal {
    type Output = GoldenReal;
    fn add(self, o: GoldenReal) -> GoldenReal {
        let k = self.k.max(o.k);
        let (sa, sb) = (ck_shl(self.a, k - self.k), ck_shl(self.b, k - self.k));
        let (oa, ob) = (ck_shl(o.a, k - o.k), ck_shl(o.b, k - o.k));
        GoldenReal::new(ck_add(sa, oa), ck_add(sb, ob), k)
    }
}

impl Sub for GoldenReal {
    type Output = GoldenReal;
    fn sub(self, o: GoldenReal) -> GoldenReal {
        self + (-o)
    }
}

impl Neg for GoldenReal {
    type Output = GoldenReal;
    fn neg(self) -> GoldenReal {
        GoldenReal { a: -self.a, b: -self.b, k: self.k }
    }
}

impl Mul for GoldenReal {
    type Output = GoldenReal;
    fn mul(self, o: GoldenReal) -> GoldenReal {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        let bd = ck_mul(self.b, o.b);
        let a = ck_add(ck_mul(self.a, o.a), bd);
        let b = ck_add(ck_add(ck_mul(self.a, o.b), ck_mul(self.b, o.a)), bd);
        GoldenReal::new(a, b, self.k + o.k)
    }
}

impl AddAssign for GoldenReal {
    fn add_assign(&mut self, o: GoldenReal) {
        *self = *self + o;
    }
}

impl SubAssign for GoldenReal {
    fn sub_assign(&mut self, o: GoldenReal) {
        *self = *self - o;
    }
}

impl From<i128> for GoldenReal {
    fn from(n: i128) -> Self {
        GoldenReal::int(n)
    }
}

impl From<i64> for GoldenReal {
    fn from(n: i64) -> Self {
        GoldenReal::int(n as i128)
    }
}

impl From<i32> for GoldenReal {
    fn from(n: i32) -> Self {
        GoldenReal::int(n as i128)
    }
}

impl fmt::Debug for GoldenReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}φ)/2^{}", self.a, self.b, self.k)
    }
}

/// Text form `"a b k"`.
impl fmt::Display for GoldenReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.k)
    }
}

impl FromStr for GoldenReal {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || ArithError::Parse(s.to_string());
        if parts.len() != 3 {
            return Err(bad());
        }
        let a = parts[0].parse::<i128>().map_err(|_| bad())?;
        let b = parts[1].parse::<i128>().map_err(|_| bad())?;
        let k = parts[2].parse::<u32>().map_err(|_| bad())?;
        Ok(GoldenReal::new(a, b, k))
    }
}

/// A point of the plane with golden coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenPoint {
    pub x: GoldenReal,
    pub y: GoldenReal,
}

impl GoldenPoint {
    pub const ORIGIN: GoldenPoint = GoldenPoint { x: GoldenReal::ZERO, y: GoldenReal::ZERO };

    pub fn new(x: GoldenReal, y: GoldenReal) -> Self {
        GoldenPoint { x, y }
    }

    pub fn ints(x: i128, y: i128) -> Self {
        GoldenPoint::new(GoldenReal::int(x), GoldenReal::int(y))
    }

    /// Vertex in table form `((a0 + a1 phi)/2, (a2 + a3 phi)/2)`.
    pub fn from_row(r: [i64; 4]) -> Self {
        GoldenPoint::new(
            GoldenReal::half_pair(r[0] as i128, r[1] as i128),
            GoldenReal::half_pair(r[2] as i128, r[3] as i128),
        )
    }

    pub fn scale(self, s: GoldenReal) -> Self {
        GoldenPoint::new(self.x * s, self.y * s)
    }

    pub fn cross(self, o: GoldenPoint) -> GoldenReal {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: GoldenPoint) -> GoldenReal {
        self.x * o.x + self.y * o.y
    }

    pub fn norm_sq(self) -> GoldenReal {
        self.dot(self)
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for GoldenPoint {
    type Output = GoldenPoint;
    fn add(self, o: GoldenPoint) -> GoldenPoint {
        GoldenPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for GoldenPoint {
    type Output = GoldenPoint;
    fn sub(self, o: GoldenPoint) -> GoldenPoint {
        GoldenPoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for GoldenPoint {
    type Output = GoldenPoint;
    fn neg(self) -> GoldenPoint {
        GoldenPoint::new(-self.x, -self.y)
    }
}

impl fmt::Debug for GoldenPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i128, b: i128, k: u32) -> GoldenReal {
        GoldenReal::new(a, b, k)
    }

    #[test]
    fn phi_powers() {
        assert_eq!(GoldenReal::phi_pow(2), g(1, 1, 0));
        assert_eq!(GoldenReal::phi_pow(-1), g(-1, 1, 0));
        assert_eq!(GoldenReal::phi_pow(-2), g(2, -1, 0));
        assert_eq!(GoldenReal::phi_pow(-3), g(-3, 2, 0));
        assert_eq!(GoldenReal::phi_pow(-4), g(5, -3, 0));
        assert_eq!(GoldenReal::phi_pow(-6), g(13, -8, 0));
        assert_eq!(GoldenReal::phi_pow(3) * GoldenReal::phi_pow(-3), GoldenReal::ONE);
    }

    #[test]
    fn canonical_form_reduces_denominator() {
        let x = g(4, 2, 3);
        assert_eq!((x.a(), x.b(), x.k()), (2, 1, 2));
        assert_eq!(g(0, 0, 9).k(), 0);
        assert_eq!(g(3, 1, 0).mul_inv_phi() * GoldenReal::PHI, g(3, 1, 0));
    }

    #[test]
    fn signs_near_phi() {
        assert_eq!(g(13, -8, 0).signum(), 1);
        assert_eq!(g(-13, 8, 0).signum(), -1);
        assert_eq!(g(-21, 13, 0).signum(), 1);
        assert_eq!(g(0, 0, 0).signum(), 0);
        let big = g(i128::MAX / 3, -(i128::MAX / 5), 0);
        assert_eq!(big.signum(), if (i128::MAX / 3) as f64 > (i128::MAX / 5) as f64 * PHI_F64 { 1 } else { -1 });
    }

    #[test]
    fn dec_range_and_ties() {
        let x = g(7, 0, 1);
        assert!(x.dec().is_err());
        let y = g(11, -8, 0).dec().unwrap();
        assert!(y.to_f64() >= -0.5 && y.to_f64() < 0.5);
        assert!((y - g(11, -8, 0)).is_integer());
        assert_eq!(GoldenReal::int(4).reduce8(), GoldenReal::int(-4));
    }

    #[test]
    fn text_roundtrip() {
        let x = g(-5, 3, 2);
        assert_eq!(x.to_string(), "-5 3 2");
        assert_eq!("-5 3 2".parse::<GoldenReal>().unwrap(), x);
        assert_eq!("10 -6 1".parse::<GoldenReal>().unwrap(), g(5, -3, 0));
        assert!("1 2".parse::<GoldenReal>().is_err());
    }

    #[test]
    fn interpolation_splits_golden_ratio() {
        let p = interpolate(GoldenReal::ZERO, GoldenReal::ONE);
        assert_eq!(p, GoldenReal::phi_pow(-2));
        assert_eq!(interpolate(GoldenReal::ONE, GoldenReal::ONE), GoldenReal::ONE);
    }
}
