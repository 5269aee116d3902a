//! Small solutions of linear systems over the order.

use cm_torsion::io::{format_matrix, parse_matrix};
use cm_torsion::siegel::{complete_to_square, small_solution, SiegelConfig};
use cm_torsion::subgroups::SubgroupMatrix;

fn main() -> cm_torsion::Result<()> {
    let s = parse_matrix("-11 5 2\n3+1*w -2 7 1+1*w 0\n1 4-1*w 2*w -5 3\n")?;
    let config = SiegelConfig::default();
    let sol = small_solution(&s, 3, &config)?;
    for v in &sol.vectors {
        let image = s.mul_vec(v)?;
        println!("{:?} -> {:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>(), image.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let c = &sol.certificate;
    println!(
        "max norm {} with constant {} ({:?}); bound holds: {}, achieved ratio {:.4}",
        c.max_norm, c.constant, c.method, c.holds, c.achieved
    );

    let b = SubgroupMatrix::new(parse_matrix("-11 4 2\n1 2 0 1+1*w\n0 1 3 -1\n")?)?;
    let done = complete_to_square(&b, &config)?;
    println!("completion with det {}:\n{}", done.det, format_matrix(&done.matrix));
    Ok(())
}
