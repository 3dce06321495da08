//! Minimal homogeneous generators and principality at a fixed point.
//!
//! `cargo run --example minimal_generators`

use lunaquot::abelian::GradingGroup;
use lunaquot::gradedalg::{
    cartier_at_fixed_point, minimal_homogeneous_generators, CartierVerdict, GradedRing, RationalPoint,
};
use lunaquot::poly::BaseField;

fn main() -> lunaquot::Result<()> {
    let a = GradedRing::from_strings(
        BaseField::Rational,
        GradingGroup::free(1),
        &[("x", &[1]), ("y", &[1]), ("w", &[0])],
        &[],
    )?;
    let o = RationalPoint::origin(&a)?;
    for gens in [
        &["x", "y", "x^2 + x*y*w"][..],
        &["x^2", "x^3 + x^2*y", "x*w"],
        &["x*y", "x*y*w + x^2"],
    ] {
        let ps = gens.iter().map(|s| a.parse(s)).collect::<lunaquot::Result<Vec<_>>>()?;
        let keep = minimal_homogeneous_generators(&a, &ps, &o)?;
        let kept: Vec<&str> = keep.iter().map(|&i| gens[i]).collect();
        let verdict = match cartier_at_fixed_point(&a, &ps, &o)? {
            CartierVerdict::Principal(f) => format!("principal, generated by {}", a.show(&f)),
            CartierVerdict::NotPrincipal { rank } => format!("needs {rank} generators"),
        };
        println!("({}): keep {}; {verdict}", gens.join(", "), kept.join(", "));
    }
    Ok(())
}
