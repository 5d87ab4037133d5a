use penrose_kite::data::DataSet;
use penrose_kite::golden::{interpolate, GoldenPoint, GoldenReal};
use penrose_kite::graph::{
    dynamic_edges, edge_set, in_half_plane, local_type, map_t, psi, psi_lift, psi_linear, reduce_torus, segments_cross,
    LatticePoint, Partition,
};
use penrose_kite::kite::{strip_maps, Kite};
use penrose_kite::orbit::CantorCode;
use penrose_kite::torus4::{psi_tilde, Torus8Point};
use proptest::prelude::*;
use std::sync::OnceLock;

fn golden() -> impl Strategy<Value = GoldenReal> {
    (-(1i128 << 24)..(1 << 24), -(1i128 << 24)..(1 << 24), 0u32..4).prop_map(|(a, b, k)| GoldenReal::new(a, b, k))
}

fn small_golden() -> impl Strategy<Value = GoldenReal> {
    (-400i128..400, -400i128..400, 0u32..3).prop_map(|(a, b, k)| GoldenReal::new(a, b, k))
}

fn plane() -> impl Strategy<Value = GoldenPoint> {
    (small_golden(), small_golden()).prop_map(|(x, y)| GoldenPoint::new(x, y))
}

fn partition() -> &'static Partition {
    static P: OnceLock<Partition> = OnceLock::new();
    P.get_or_init(|| Partition::new(DataSet::embedded().partition))
}

fn data() -> &'static DataSet {
    static D: OnceLock<DataSet> = OnceLock::new();
    D.get_or_init(DataSet::embedded)
}

/// Sign of `a + b phi` from `((2a + b) + b sqrt5) / 2`.
fn sign_oracle(a: i128, b: i128) -> i32 {
    let s = 2 * a + b;
    match (s.signum(), b.signum()) {
        (0, 0) => 0,
        (x, y) if x >= 0 && y >= 0 => 1,
        (x, y) if x <= 0 && y <= 0 => -1,
        (1, _) => (s * s - 5 * b * b).signum() as i32,
        _ => (5 * b * b - s * s).signum() as i32,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ring_axioms(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!((x + y) + z, x + (y + z));
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x - x, GoldenReal::ZERO);
        prop_assert_eq!(-(-x), x);
        prop_assert_eq!(x.mul_inv_phi() * GoldenReal::phi_pow(1), x);
    }

    #[test]
    fn sign_matches_the_squaring_test(b in -(1i128 << 40)..(1i128 << 40), d in -3i128..=3) {
        let a = -((b as f64) * 1.618_033_988_749_895).round() as i128 + d;
        let g = GoldenReal::new(a, b, 0);
        prop_assert_eq!(g.signum(), sign_oracle(a, b));
        if let Some(s) = g.fib_sign() {
            prop_assert_eq!(s, sign_oracle(a, b));
        }
    }

    #[test]
    fn order_is_compatible_with_addition(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(x < y, x + z < y + z);
    }

    #[test]
    fn dec_lands_in_half_open_unit(x in golden()) {
        let half = GoldenReal::new(1, 0, 1);
        match x.dec() {
            Ok(r) => {
                prop_assert!(r >= -half && r < half);
                prop_assert!((x - r).is_integer());
            }
            Err(_) => prop_assert!((x + half).is_integer()),
        }
        let r8 = x.reduce8();
        prop_assert!(r8 >= GoldenReal::int(-4) && r8 < GoldenReal::int(4));
        prop_assert!((x - r8).shift(-3).is_integer());
    }

    #[test]
    fn text_roundtrip(x in golden()) {
        prop_assert_eq!(x.to_string().parse::<GoldenReal>().unwrap(), x);
    }

    #[test]
    fn interpolation_stays_between(a in golden(), b in golden()) {
        let m = interpolate(a, b);
        prop_assert!(m >= a.min(b) && m <= a.max(b));
        prop_assert_eq!(interpolate(a, a), a);
    }

    #[test]
    fn strip_maps_land_in_their_strips(p in plane(), j in 0usize..4) {
        let s = strip_maps()[j];
        if let Ok(q) = s.apply(p) {
            let f = s.functional(q);
            prop_assert!(f > GoldenReal::ZERO && f < GoldenReal::ONE);
            prop_assert_eq!(s.apply(p + s.v).unwrap(), q);
        }
    }

    #[test]
    fn extensions_semiconjugate_strip_maps(p in plane(), j in 0usize..4) {
        let s = strip_maps()[j];
        if let (Ok(img), Ok(t)) = (s.apply(p), psi_tilde(p)) {
            if let (Ok(lhs), Ok(rhs)) = (psi_tilde(img), data().extmaps[j].apply(&t, None)) {
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extensions_are_periodic(c in prop::array::uniform4(small_golden()), i in 0usize..4, j in 0usize..4) {
        let t = Torus8Point::reduce(c);
        let m = &data().extmaps[j];
        if let Ok(base) = m.apply(&t, None) {
            let mut v = t.0;
            v[i] += GoldenReal::int(8);
            prop_assert_eq!(m.apply_lift(&t.0, None).unwrap(), base);
            prop_assert_eq!(m.apply_lift(&v, None).unwrap(), base);
        }
    }

    #[test]
    fn psi_formulas_agree(x in -10_000i64..10_000, y in -10_000i64..10_000) {
        let p = LatticePoint::new(x, y);
        let inv = GoldenReal::phi_pow;
        let direct = GoldenPoint::new(
            inv(-4) * GoldenReal::from(x) + inv(-1) * GoldenReal::from(y) + inv(-3).half(),
            inv(-3) * GoldenReal::from(x) + inv(-2).half(),
        );
        prop_assert_eq!(reduce_torus(direct), psi(p));
        prop_assert_eq!(reduce_torus(psi_lift(p) + psi_linear(LatticePoint::new(1, 0))), psi(p + LatticePoint::new(1, 0)));
    }

    #[test]
    fn half_plane_is_positive_t(x in -10_000i64..10_000, y in -10_000i64..10_000) {
        let p = LatticePoint::new(x, y);
        prop_assert_eq!(in_half_plane(p), map_t(p) > GoldenReal::ZERO);
        prop_assert!(!map_t(p).is_zero());
    }

    #[test]
    fn code_value_and_nu(bits in prop::collection::vec(0u8..2, 1..20)) {
        let c = CantorCode(bits.clone());
        let s = c.to_string();
        prop_assert_eq!(CantorCode::parse(&s).unwrap(), c.clone());
        prop_assert_eq!(c.value(), u64::from_str_radix(&s, 2).unwrap());
        let nu = if c.value() == 0 { bits.len() } else { c.value().trailing_zeros() as usize };
        prop_assert_eq!(c.nu(), nu);
    }

    #[test]
    fn crossing_is_symmetric(a in (-3i64..3, -3i64..3), b in (-3i64..3, -3i64..3), c in (-3i64..3, -3i64..3), d in (-3i64..3, -3i64..3)) {
        let l = |q: (i64, i64)| LatticePoint::new(q.0, q.1);
        let (s, t) = ((l(a), l(b)), (l(c), l(d)));
        prop_assert_eq!(segments_cross(s, t), segments_cross(t, s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_matches_dynamics(x in -300i64..300, y in -300i64..300) {
        let p = LatticePoint::new(x, y);
        prop_assume!(in_half_plane(p));
        let k = partition().classify(p).unwrap();
        let table = edge_set(&local_type(k).edges.unwrap_or_default());
        let dynamics = edge_set(&dynamic_edges(&Kite::penrose(), p).unwrap());
        prop_assert_eq!(table, dynamics);
    }

    #[test]
    fn return_map_reverses_under_reflection(x in small_golden(), up in any::<bool>()) {
        let x = x.abs() + GoldenReal::new(1, 0, 3);
        let kite = Kite::penrose();
        let eps = if up { GoldenReal::ONE } else { -GoldenReal::ONE };
        let flip = |p: GoldenPoint| GoldenPoint::new(p.x, -p.y);
        if let Ok(r) = kite.return_map(GoldenPoint::new(x, eps)) {
            let back = kite.return_map(flip(r.point)).unwrap();
            prop_assert_eq!(back.point, GoldenPoint::new(x, -eps));
        }
    }
}
