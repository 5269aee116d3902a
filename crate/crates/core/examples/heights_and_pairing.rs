//! The hermitian Néron–Tate pairing on a finite-rank module.

use cm_torsion::field::{rat, QElem};
use cm_torsion::mordell_weil::{isogeny_action, ModuleSpec, PointInEN};
use cm_torsion::subgroups::SubgroupMatrix;
use cm_torsion::{Discriminant, OrderElement};

fn main() -> cm_torsion::Result<()> {
    let disc = Discriminant::new(-7)?;
    let q = |n, d| QElem::from_rational(rat(n, d), disc);
    let gram = vec![vec![q(3, 1), QElem::new(rat(1, 2), rat(1, 4), disc)], vec![QElem::new(rat(1, 2), rat(1, 4), disc).conj(), q(2, 1)]];
    let spec = ModuleSpec::new(disc, gram, 7)?;

    let p = spec.point_from_pairs(&[(1, 0), (0, 1)], (2, 0))?;
    let r = spec.point_from_pairs(&[(0, 1), (-1, 0)], (0, 0))?;
    let x = PointInEN::new(vec![p.clone(), r.clone()]);
    let y = PointInEN::new(vec![r, p.clone()]);

    println!("h(x) = {}", spec.nt_height(&x)?);
    println!("h(y) = {}", spec.nt_height(&y)?);
    println!("<x, y> = {}", spec.nt_pairing(&x, &y)?);

    let tau = OrderElement::new(1, 1, disc);
    let tx = isogeny_action(tau, &x)?;
    println!("h(({tau}) x) = {} = N({tau}) h(x) = {} * {}", spec.nt_height(&tx)?, tau.norm(), spec.nt_height(&x)?);

    let lhs = spec.nt_height(&x.add(&y))? + spec.nt_height(&x.sub(&y))?;
    let rhs = (spec.nt_height(&x)? + spec.nt_height(&y)?) * rat(2, 1);
    println!("parallelogram: {lhs} = {rhs}");

    let torsion = PointInEN::new(vec![spec.point_from_pairs(&[(0, 0), (0, 0)], (3, 0))?]);
    println!("torsion point has height {}", spec.nt_height(&torsion)?);

    // (p, -p) is orthogonal to the diagonal, so it realizes the minimum on the translate
    let diagonal = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (-1, 0)]])?;
    let y0 = PointInEN::new(vec![p.clone(), p.scale(-OrderElement::new(1, 0, disc))]);
    println!("essential minimum of diagonal + y0: {}", spec.essential_minimum_translate(&diagonal, &y0)?);
    Ok(())
}
