//! Hilbert bases of degree-zero exponent monoids and minimal elements of
//! graded fibers.
//!
//! `cargo run --example hilbert_basis`

use lunaquot::abelian::GradingGroup;
use lunaquot::lattice::{fiber_minimal_elements, kernel_hilbert_basis, monoid_is_group, DegreeSystem};

fn main() -> lunaquot::Result<()> {
    let g = GradingGroup::new(1, vec![3.into()])?;
    let degrees = vec![
        g.element(&[2, 1])?,
        g.element(&[-1, 0])?,
        g.element(&[-3, 1])?,
        g.element(&[1, 2])?,
    ];
    let sys = DegreeSystem::new(g.clone(), degrees.clone())?;

    println!("kernel Hilbert basis over {g}:");
    for h in kernel_hilbert_basis(&sys)? {
        println!("  {h:?}");
    }
    let target = g.element(&[1, 0])?;
    println!("minimal exponents of degree {target}:");
    for h in fiber_minimal_elements(&sys, &target)? {
        println!("  {h:?}");
    }
    println!("the degrees generate a group: {}", monoid_is_group(&g, &degrees)?);
    Ok(())
}
