//! Evaluating explicit bounds exactly.

use cm_torsion::bounds::{a1, a2, evaluate_bound, exponent_identities, kappa, BoundParams, CATALOG};
use cm_torsion::field::rat;

fn main() -> cm_torsion::Result<()> {
    let p = BoundParams::new(3, 1).with_eta(rat(1, 10));
    let res = evaluate_bound("tadimzero_hY0", &p)?;
    for f in &res.factors {
        println!("{}^({})", f.name, f.exponent_text());
    }
    println!("A1(3,1) = {}, A2(3,1) = {}", a1(3, 1), a2(3, 1));

    let mut p = BoundParams::new(4, 1)
        .with_eta(rat(1, 100))
        .with_constant("main_hY", rat(5, 2));
    p.h_v = rat(2, 1);
    let res = evaluate_bound("main_hY", &p)?;
    println!("main_hY at N=4: {} .. {} (log10 ≈ {:.3})", res.value.lower, res.value.upper, res.log10);

    match evaluate_bound("mlr", &BoundParams::new(3, 1).with_t(2)) {
        Err(e) => println!("out of range: {e}"),
        Ok(_) => unreachable!(),
    }

    println!("kappa(1) = {}, kappa(2) = {}", kappa(1), kappa(2));
    println!("{} catalog entries", CATALOG.len());
    let report = exponent_identities();
    println!("{} identities checked, all hold: {}", report.checks.len(), report.all_hold);
    Ok(())
}
