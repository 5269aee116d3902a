//! Algebraic subgroups of E^N as matrices over the order.

use cm_torsion::io::format_matrix;
use cm_torsion::subgroups::{
    intersection_cardinality, orthogonal_complement, sum_and_intersection, tangent_orthogonal, SubgroupMatrix,
};
use cm_torsion::Discriminant;

fn main() -> cm_torsion::Result<()> {
    let disc = Discriminant::new(-4)?;
    // x1 = (1+i) x2 + 2 x3 together with 3 x3 = 0 has a torsion part
    let b = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (-1, -1), (-2, 0)], vec![(0, 0), (0, 0), (3, 0)]])?;
    println!("B:\n{}", format_matrix(b.matrix()));
    println!("dim B = {}, connected: {}", b.dim(), b.is_connected());
    println!("hnf:\n{}", format_matrix(b.hnf().matrix()));
    let b0 = b.saturate();
    println!("B0 = connected component:\n{}", format_matrix(b0.matrix()));
    println!("[B : B0] at level 3: {} / {}", b.kernel_count_at_level(3), b0.kernel_count_at_level(3));

    let deg = b0.degree_surrogate();
    println!("degree surrogates: minor sum {}, row product {}", deg.minor_sum, deg.row_product);

    let h = SubgroupMatrix::from_pairs(disc, &[vec![(0, 0), (1, 0), (0, 1)]])?;
    let si = sum_and_intersection(&b0, &h)?;
    println!("dim(B0 + H) = {}, dim(B0 ∩ H) = {}", si.dim_sum, si.dim_int);

    let line = SubgroupMatrix::from_pairs(disc, &[vec![(2, 0), (1, 1)]])?;
    let c = orthogonal_complement(&line)?;
    println!("complement of {}:\n{}", line.matrix().row(0).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "), format_matrix(c.complement.matrix()));
    println!(
        "#(B ∩ B^perp) = {} (exhaustive: {}), ratio to deg^2 = {}/{}",
        c.intersection,
        intersection_cardinality(&line, &c.complement)?,
        c.ratio.0,
        c.ratio.1
    );
    println!(
        "tangent spaces orthogonal: {}",
        tangent_orthogonal(&line.parametrization(), &c.complement.parametrization())?
    );
    Ok(())
}
