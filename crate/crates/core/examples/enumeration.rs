//! Connected subgroups of bounded degree and torsion counts.

use cm_torsion::enumeration::{default_growth, enumerate_subgroups, enumerate_torsion, kernels_distinct, EnumerationBudget};
use cm_torsion::subgroups::SubgroupMatrix;
use cm_torsion::Discriminant;

fn main() -> cm_torsion::Result<()> {
    let disc = Discriminant::new(-4)?;
    for x in 1..=4 {
        let budget = EnumerationBudget::new(disc, 2, 1, x);
        let listing = enumerate_subgroups(&budget)?;
        let (c, eta) = default_growth(2);
        println!(
            "lines in E^2 with row product <= {x}: {} (envelope {})",
            listing.count(),
            listing.growth_envelope(&budget, &c, &eta)
        );
        if x == 2 {
            for s in &listing.subgroups {
                println!("  {:?}", s.subgroup.matrix().row(0).iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            let subs: Vec<SubgroupMatrix> = listing.subgroups.iter().map(|s| s.subgroup.clone()).collect();
            println!("  torsion kernels distinct at level 12: {}", kernels_distinct(&subs, 12));
        }
    }

    let budget = EnumerationBudget::new(disc, 3, 1, 2);
    println!("curves in E^3 with row product <= 2: {}", enumerate_subgroups(&budget)?.count());

    let t = enumerate_torsion(disc, 2, 6, 0)?;
    for ((n, div), (_, exact)) in t.dividing.iter().zip(&t.exact) {
        println!("  n = {n}: {div} points killed by n, {exact} of exact order n");
    }
    println!("points of E^2 with order at most 6: {}", t.total);
    Ok(())
}
