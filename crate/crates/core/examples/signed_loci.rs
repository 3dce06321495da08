//! `X_+`, `X_-` and GIT charts for a G_m action.
//!
//! `cargo run --example signed_loci`

use lunaquot::abelian::GradingGroup;
use lunaquot::action::{git_charts, x_plus_minus, Chart, Sign};
use lunaquot::gradedalg::GradedRing;
use lunaquot::poly::BaseField;

fn print_chart(ring: &GradedRing, c: &Chart) {
    let gens: Vec<String> = c.invariants.generators.iter().map(|g| c.ring.show(g)).collect();
    println!("    chart {}: invariants {}", ring.show(&c.element), gens.join(", "));
}

fn main() -> lunaquot::Result<()> {
    let z = GradingGroup::free(1);
    let a = GradedRing::from_strings(
        BaseField::Rational,
        z.clone(),
        &[("x", &[1]), ("y", &[-1]), ("z", &[-1])],
        &[],
    )?;

    for sign in [Sign::Plus, Sign::Minus] {
        let locus = x_plus_minus(&a, sign)?;
        let cut: Vec<String> = locus.cut_generators.iter().map(|g| a.show(g)).collect();
        println!("{sign:?}: removed V({})", cut.join(", "));
        for c in &locus.charts {
            print_chart(&a, c);
        }
    }

    for m in [-1, 1] {
        println!("semi-invariants of weight {m}:");
        for c in git_charts(&a, &z.element(&[m])?, 2)? {
            print_chart(&a, &c);
        }
    }
    Ok(())
}
