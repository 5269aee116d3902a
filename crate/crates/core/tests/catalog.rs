//! Every catalog entry against its own range and threshold.

use cm_torsion::bounds::{bound_exponents, evaluate_bound, Direction, CATALOG};
use cm_torsion::field::rat;
use cm_torsion::Error;
use num_traits::{Signed, Zero};

#[test]
fn sample_parameters_evaluate() {
    for info in CATALOG.iter() {
        let p = info.sample_params();
        let res = evaluate_bound(info.id, &p).unwrap_or_else(|e| panic!("{}: {e}", info.id));
        assert_eq!(res.theorem_id, info.id);
        assert!(res.value.lower <= res.value.upper, "{}", info.id);
        assert!(!res.value.lower.is_negative(), "{}", info.id);
        if info.direction == Direction::Interval {
            assert!(res.interval_lower.is_some(), "{}", info.id);
        }
    }
}

#[test]
fn eta_at_the_threshold_is_rejected() {
    for info in CATALOG.iter() {
        let p = info.sample_params();
        let Some(th) = (info.eta_threshold)(&p) else { continue };
        assert!(th.is_positive(), "{}", info.id);
        match evaluate_bound(info.id, &p.clone().with_eta(th.clone())) {
            Err(Error::Range { violated, .. }) => assert!(violated.starts_with("eta <"), "{}: {violated}", info.id),
            other => panic!("{}: expected a range error, got {other:?}", info.id),
        }
        assert!(evaluate_bound(info.id, &p.with_eta(th / rat(2, 1))).is_ok(), "{}", info.id);
    }
}

#[test]
fn exponents_do_not_depend_on_eta() {
    for info in CATALOG.iter() {
        let p = info.sample_params();
        let Some(th) = (info.eta_threshold)(&p) else { continue };
        let a = bound_exponents(info.id, &p.clone().with_eta(&th / rat(3, 1))).unwrap();
        let b = bound_exponents(info.id, &p.with_eta(&th / rat(7, 1))).unwrap();
        let strip = |v: &[cm_torsion::bounds::Factor]| v.iter().map(|f| (f.name.clone(), f.exponent.clone(), f.eta_coef.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b), "{}", info.id);
    }
}

#[test]
fn out_of_range_reports_the_inequality() {
    for info in CATALOG.iter() {
        let mut p = info.sample_params();
        p.n = 1;
        p.d = 5;
        p.r = 9;
        if let Err(e) = evaluate_bound(info.id, &p) {
            assert!(matches!(e, Error::Range { .. } | Error::Domain(_)), "{}: {e}", info.id);
        }
    }
    let p = cm_torsion::bounds::BoundParams::new(3, 2);
    match evaluate_bound("tadimzero_hY0", &p) {
        Err(Error::Range { theorem, violated }) => {
            assert_eq!(theorem, "tadimzero_hY0");
            assert!(!violated.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn constants_scale_the_value() {
    let p = cm_torsion::bounds::BoundParams::new(4, 1).with_eta(rat(1, 20));
    let base = evaluate_bound("main_hY", &p).unwrap();
    let scaled = evaluate_bound("main_hY", &p.with_constant("main_hY", rat(3, 1))).unwrap();
    assert_eq!(scaled.value.lower, &base.value.lower * rat(3, 1));
    assert!(!base.value.lower.is_zero());
}
