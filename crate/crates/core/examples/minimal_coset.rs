//! Minimal torsion cosets and the anomaly classifier.

use cm_torsion::enumeration::{brute_force_minimal_coset, EnumerationBudget};
use cm_torsion::field::rat;
use cm_torsion::io::format_matrix;
use cm_torsion::mordell_weil::{ModuleSpec, PointInEN};
use cm_torsion::reductions::{classify_point, VarietyParams};
use cm_torsion::Discriminant;

fn main() -> cm_torsion::Result<()> {
    let disc = Discriminant::new(-3)?;
    let spec = ModuleSpec::standard(disc, 2, 6)?;
    let pt = |free: &[(i128, i128)], t: (i128, i128)| spec.point_from_pairs(free, t);

    let points = [
        ("torsion", PointInEN::new(vec![pt(&[(0, 0), (0, 0)], (1, 0))?, pt(&[(0, 0), (0, 0)], (2, 1))?, pt(&[(0, 0), (0, 0)], (0, 0))?])),
        ("on a line", PointInEN::new(vec![pt(&[(1, 0), (0, 0)], (0, 0))?, pt(&[(2, 1), (0, 0)], (3, 0))?, pt(&[(-1, 0), (0, 0)], (0, 0))?])),
        ("generic", PointInEN::new(vec![pt(&[(1, 0), (0, 0)], (0, 0))?, pt(&[(0, 0), (1, 0)], (0, 0))?, pt(&[(1, 0), (1, 0)], (1, 0))?])),
    ];
    let v = VarietyParams {
        n: 3,
        dim_v: 1,
        h_v: rat(1, 1),
        deg_v: rat(3, 1),
        deg_ktor_v: rat(1, 1),
        deg_k_v: rat(1, 1),
    };
    let budget = EnumerationBudget::new(disc, 3, 0, 16);
    for (name, x) in &points {
        let coset = spec.minimal_coset(x)?;
        let oracle = brute_force_minimal_coset(&spec, x, &budget)?.expect("no time cap");
        let report = classify_point(&v, &spec, x)?;
        println!("{name}: h = {}, dim B = {}", spec.nt_height(x)?, coset.dim());
        print!("{}", format_matrix(coset.subgroup.matrix()));
        println!("  zeta = {}", coset.zeta);
        println!("  brute force agrees: {}", oracle.subgroup.hnf() == coset.subgroup.hnf());
        println!("  verdict {:?}, theorem {:?}", report.verdict, report.theorem_id);
    }
    Ok(())
}
