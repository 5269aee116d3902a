//! Arithmetic in the five Euclidean CM orders.

use cm_torsion::orders::{gcd, xgcd};
use cm_torsion::{Discriminant, OrderElement};

fn main() -> cm_torsion::Result<()> {
    for disc in Discriminant::all() {
        let w = disc.omega();
        println!(
            "D = {:>3}: w^2 = {}*w - {}, {} units",
            disc.value(),
            disc.omega_trace(),
            disc.omega_norm(),
            disc.unit_count()
        );
        let x = OrderElement::new(7, 3, disc);
        let y = OrderElement::new(2, -1, disc);
        let (q, r) = x.euclid_div(&y)?;
        println!("  {x} = ({q})({y}) + {r}, N(r) = {} < N(y) = {}", r.norm(), y.norm());
        println!("  conj({x}) = {}, trace {}, norm {}", x.conj(), x.trace(), x.norm());
        println!("  w*w = {}", w * w);
    }

    let disc = Discriminant::new(-4)?;
    let a = OrderElement::parse("3+5*w", disc)?;
    let b = OrderElement::parse("-4+2*w", disc)?;
    let g = gcd(&a, &b)?;
    let (d, s, t) = xgcd(&a, &b)?;
    println!("gcd({a}, {b}) = {g}");
    println!("{s}*({a}) + {t}*({b}) = {}", s * a + t * b);
    assert_eq!(d, g);
    println!("canonical associate of -2-1*w: {}", OrderElement::parse("-2-1*w", disc)?.canonical_associate());
    Ok(())
}
