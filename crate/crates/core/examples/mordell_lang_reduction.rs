//! From points of Γ_A to torsion varieties and back.

use cm_torsion::io::format_matrix;
use cm_torsion::matrix::OMatrix;
use cm_torsion::mordell_weil::ModuleSpec;
use cm_torsion::reductions::{gamma_to_torsion_variety, transverse_lift, GammaPoint, Reduction};
use cm_torsion::{Discriminant, OrderElement};

fn main() -> cm_torsion::Result<()> {
    let disc = Discriminant::new(-4)?;
    let spec = ModuleSpec::standard(disc, 2, 4)?;
    let e = |a, b| OrderElement::new(a, b, disc);

    // x_i = a_i · (b_i1 g_1 + b_i2 g_2) + zeta_i, with one relation among the b_i
    let b = OMatrix::from_pairs(disc, &[vec![(1, 0), (2, 0)], vec![(1, 1), (2, 2)], vec![(0, 1), (1, 0)]])?;
    let x = GammaPoint::new(&spec, vec![e(1, 0), e(2, 0), e(1, -1)], b, vec![e(0, 0), e(1, 0), e(0, 0)])?;
    println!("N = {}, rank of coefficients = {}", x.ambient(), x.coefficient_rank());

    match gamma_to_torsion_variety(&spec, &x)? {
        Reduction::TorsionPoint => println!("torsion point"),
        Reduction::Variety(v) => {
            println!("torsion variety of codim {}:", v.codim());
            print!("{}", format_matrix(&v.equations));
            println!("rhs {}", v.rhs);
            println!("contains the point: {}", v.contains(&spec, &x)?);
        }
    }

    let lift = transverse_lift(&spec, &x)?;
    println!("lift to E^{}: codim {}, degenerate {}", lift.point.ambient(), lift.variety.codim(), lift.degenerate);
    Ok(())
}
