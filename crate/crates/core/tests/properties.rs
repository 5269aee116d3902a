//! Algebraic invariants as property tests.

mod common;

use cm_torsion::bounds::{evaluate_bound, rational_power, BoundParams};
use cm_torsion::enumeration::{enumerate_subgroups, EnumerationBudget};
use cm_torsion::io::{format_matrix, parse_matrix, parse_torsion_point};
use cm_torsion::subgroups::{SubgroupMatrix, TorsionPoint};
use cm_torsion::{Discriminant, OrderElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;

fn disc_value() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-3i64, -4, -7, -8, -11])
}

fn small() -> impl Strategy<Value = (i128, i128)> {
    (-40i128..=40, -40i128..=40)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<(i128, i128)>>> {
    prop::collection::vec(prop::collection::vec((-4i128..=4, -4i128..=4), cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_operations_match_the_oracle(d in disc_value(), x in small(), y in small()) {
        let disc = Discriminant::new(d).unwrap();
        let (ex, ey) = (elem(disc, x), elem(disc, y));
        prop_assert_eq!(pair(&(ex * ey)), mul(d, x, y));
        prop_assert_eq!(pair(&ex.conj()), conj(d, x));
        prop_assert_eq!(ex.norm(), norm(d, x));
        prop_assert_eq!((ex * ey).norm(), ex.norm() * ey.norm());
        prop_assert_eq!(ex.conj().conj(), ex);
    }

    #[test]
    fn euclidean_division(d in disc_value(), x in small(), y in small()) {
        prop_assume!(y != (0, 0));
        let disc = Discriminant::new(d).unwrap();
        let (ex, ey) = (elem(disc, x), elem(disc, y));
        let (q, r) = ex.euclid_div(&ey).unwrap();
        prop_assert_eq!(q * ey + r, ex);
        prop_assert!(r.norm() < ey.norm());
    }

    #[test]
    fn element_text_round_trip(d in disc_value(), x in small()) {
        let disc = Discriminant::new(d).unwrap();
        let e = elem(disc, x);
        prop_assert_eq!(OrderElement::parse(&e.to_string(), disc).unwrap(), e);
    }

    #[test]
    fn canonical_associate_is_a_unit_multiple(d in disc_value(), x in small()) {
        prop_assume!(x != (0, 0));
        let disc = Discriminant::new(d).unwrap();
        let e = elem(disc, x);
        let c = e.canonical_associate();
        prop_assert!(disc.units().iter().any(|&u| u * e == c));
        prop_assert_eq!(c.canonical_associate(), c);
        prop_assert!(c.a > 0 || (c.a == 0 && c.b > 0));
    }

    #[test]
    fn hnf_ignores_row_operations(d in disc_value(), m in matrix(2, 3), u in 0usize..6, k in (-3i128..=3, -3i128..=3)) {
        let disc = Discriminant::new(d).unwrap();
        prop_assume!(rank(d, &m) == 2);
        let b = SubgroupMatrix::new(to_omatrix(disc, 3, &m)).unwrap();
        let units = disc.units();
        let unit = units[u % units.len()];
        // row0 ← unit·row0 + k·row1, then swap
        let changed: Vec<Vec<(i128, i128)>> = vec![
            m[1].clone(),
            m[0].iter().zip(&m[1]).map(|(&a, &b)| {
                let s = mul(d, pair(&unit), a);
                let t = mul(d, k, b);
                (s.0 + t.0, s.1 + t.1)
            }).collect(),
        ];
        let b2 = SubgroupMatrix::new(to_omatrix(disc, 3, &changed)).unwrap();
        prop_assert_eq!(b.hnf(), b2.hnf());
        prop_assert_eq!(b.saturate().hnf(), b2.saturate().hnf());
    }

    #[test]
    fn saturation_contains_the_subgroup(d in disc_value(), m in matrix(1, 2)) {
        let disc = Discriminant::new(d).unwrap();
        prop_assume!(rank(d, &m) == 1);
        let b = SubgroupMatrix::new(to_omatrix(disc, 2, &m)).unwrap();
        let s = b.saturate();
        prop_assert!(s.is_connected());
        prop_assert_eq!(s.dim(), b.dim());
        // the connected component has index dividing the torsion part
        prop_assert!(b.kernel_count_at_level(6) % s.kernel_count_at_level(6) == 0);
    }

    #[test]
    fn matrix_text_round_trip(d in disc_value(), m in matrix(2, 3)) {
        let disc = Discriminant::new(d).unwrap();
        let om = to_omatrix(disc, 3, &m);
        prop_assert_eq!(parse_matrix(&format_matrix(&om)).unwrap(), om);
    }

    #[test]
    fn torsion_group_laws(d in disc_value(), level in 2i128..9, v in prop::collection::vec(0i128..100, 4), w in prop::collection::vec(0i128..100, 4)) {
        let disc = Discriminant::new(d).unwrap();
        let p = TorsionPoint::from_integer(disc, level, &v);
        let q = TorsionPoint::from_integer(disc, level, &w);
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert!(p.add(&p.neg()).unwrap().is_zero());
        prop_assert_eq!(level % p.order(), 0);
        prop_assert_eq!(parse_torsion_point(&p.to_string(), disc).unwrap(), p);
    }

    #[test]
    fn power_enclosures_bracket(n in 1i64..200, dd in 1i64..50, p in 1i64..9, q in 1u32..7) {
        let base = BigRational::new(BigInt::from(n), BigInt::from(dd));
        let e = rational_power(&base, &BigRational::new(BigInt::from(p), BigInt::from(q)));
        let exact = base.pow(p as i32);
        prop_assert!(e.lower.pow(q as i32) <= exact);
        prop_assert!(e.upper.pow(q as i32) >= exact);
        prop_assert!(e.lower <= e.upper);
    }

    #[test]
    fn upper_bounds_grow_with_height(n in 3u32..7, h in 1i128..50) {
        let p = BoundParams::new(n, 1).with_eta(rat(1, 100));
        let mut q = p.clone();
        q.h_v = rat(h, 1);
        let mut q2 = p.clone();
        q2.h_v = rat(h + 1, 1);
        let lo = evaluate_bound("main_hY", &q).unwrap();
        let hi = evaluate_bound("main_hY", &q2).unwrap();
        prop_assert!(lo.value.lower <= hi.value.upper);
        prop_assert!(lo.log10 <= hi.log10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn enumeration_is_monotone(d in disc_value(), x in 1i128..4) {
        let disc = Discriminant::new(d).unwrap();
        let small = enumerate_subgroups(&EnumerationBudget::new(disc, 2, 1, x)).unwrap();
        let large = enumerate_subgroups(&EnumerationBudget::new(disc, 2, 1, x + 1)).unwrap();
        prop_assert!(small.count() <= large.count());
        for s in &small.subgroups {
            prop_assert!(large.subgroups.iter().any(|t| t.subgroup == s.subgroup));
            prop_assert!(s.subgroup.is_connected());
        }
    }
}
