//! Invariant rings of torus and finite diagonalizable actions.
//!
//! `cargo run --example invariants`

use lunaquot::abelian::GradingGroup;
use lunaquot::gradedalg::{invariant_subring, GradedRing};
use lunaquot::poly::BaseField;

fn show(title: &str, ring: &GradedRing) -> lunaquot::Result<()> {
    let inv = invariant_subring(ring)?;
    println!("{title}");
    for (name, g) in inv.names.iter().zip(&inv.generators) {
        println!("  {name} = {}", ring.show(g));
    }
    for r in inv.relation_basis() {
        println!("  relation {}", inv.show(&r));
    }
    Ok(())
}

fn main() -> lunaquot::Result<()> {
    let q = BaseField::Rational;

    // mu_2 acting on the plane by -1
    let plane = GradedRing::from_strings(q, GradingGroup::cyclic(2)?, &[("x", &[1]), ("y", &[1])], &[])?;
    show("Z/2 on k[x,y]:", &plane)?;

    // the same weights over Z, with a variable of weight -2
    let cone = GradedRing::from_strings(q, GradingGroup::free(1), &[("x", &[1]), ("y", &[1]), ("z", &[-2])], &[])?;
    show("G_m on k[x,y,z] with weights 1, 1, -2:", &cone)?;

    // a rank 2 torus on four variables
    let t2 = GradedRing::from_strings(
        q,
        GradingGroup::free(2),
        &[("a", &[1, 0]), ("b", &[0, 1]), ("c", &[-1, -1]), ("d", &[1, -1])],
        &[],
    )?;
    show("G_m^2 on k[a,b,c,d]:", &t2)?;
    Ok(())
}
