//! Finitely generated abelian groups: normal forms, subgroups, quotients.
//!
//! `cargo run --example grading_groups`

use lunaquot::abelian::{quotient_group, GradingGroup, Subgroup};

fn main() -> lunaquot::Result<()> {
    // Z^2 modulo (4, 6) is Z ⊕ Z/2
    let (g, to_g) = GradingGroup::from_orders(2, &[])?;
    let rel = Subgroup::from_generators(&g, vec![g.element(&[4, 6])?])?;
    let q = quotient_group(&g, &rel)?;
    println!("Z^2 / {rel} = {}", q.target());
    println!("(1, 1) maps to {}", q.project(&to_g.project(&g.element(&[1, 1])?)?)?);

    let h = GradingGroup::new(1, vec![4.into()])?;
    let a = Subgroup::from_generators(&h, vec![h.element(&[2, 2])?])?;
    let b = Subgroup::from_generators(&h, vec![h.element(&[2, 0])?, h.element(&[0, 2])?])?;
    println!("in {h}: {a} inside {b}: {}", a.is_subgroup_of(&b)?);
    println!("(4, 0) in {a}: {}", a.contains(&h.element(&[4, 0])?)?);
    println!("{h} / {b} = {}", quotient_group(&h, &b)?.target());
    Ok(())
}
