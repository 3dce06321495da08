//! The inertia stratification: which stabilizers occur, and where.
//!
//! `cargo run --example strata`

use lunaquot::abelian::GradingGroup;
use lunaquot::action::{inertia_stratum_of, strata};
use lunaquot::gradedalg::{GradedRing, RationalPoint};
use lunaquot::poly::BaseField;

fn main() -> lunaquot::Result<()> {
    let a = GradedRing::from_strings(
        BaseField::Rational,
        GradingGroup::free(1),
        &[("x", &[2]), ("y", &[3]), ("z", &[-6])],
        &[],
    )?;
    for s in strata(&a)? {
        let support: Vec<&str> = s.support.iter().map(|&i| a.names()[i].as_str()).collect();
        println!(
            "label {:<8} realized with support {{{}}}",
            s.label.to_string(),
            support.join(", ")
        );
    }
    let p = RationalPoint::from_i64(&a, &[1, 0, 1])?;
    println!("{} lies in the stratum {}", p.show(&a), inertia_stratum_of(&a, &p)?);
    Ok(())
}
