//! Coinvariants, fixed loci of subgroups, and stabilizers of points.
//!
//! `cargo run --example fixed_points`

use lunaquot::abelian::{GradingGroup, Subgroup};
use lunaquot::action::{fixed_locus, is_special, stabilizer};
use lunaquot::gradedalg::{coinvariants, GradedRing, RationalPoint};
use lunaquot::poly::BaseField;

fn main() -> lunaquot::Result<()> {
    let g = GradingGroup::new(1, vec![2.into()])?;
    let a = GradedRing::from_strings(
        BaseField::Rational,
        g.clone(),
        &[("x", &[1, 0]), ("y", &[-1, 1]), ("z", &[0, 1]), ("w", &[0, 0])],
        &["x*y - z*w"],
    )?;

    let fixed = coinvariants(&a)?;
    println!("X^G has variables {:?}", fixed.names());

    // the subgroup generated by (0,1) cuts out the fixed locus of the G_m factor
    let sub = Subgroup::from_generators(&g, vec![g.element(&[0, 1])?])?;
    let xs = fixed_locus(&a, &sub)?;
    println!("fixed locus of D_(L/{sub}) has variables {:?}", xs.names());

    for coords in [[0, 0, 0, 1], [1, 0, 0, 0], [1, 1, 1, 1], [0, 0, 1, 0]] {
        let p = RationalPoint::from_i64(&a, &coords)?;
        let st = stabilizer(&a, &p)?;
        println!(
            "{}: L_x = {}, stabilizer characters {}, special {}",
            p.show(&a),
            st.support,
            st.characters.target(),
            is_special(&a, &p)?
        );
    }
    Ok(())
}
