//! Cotangent fibers and the pointwise/fiberwise tests at probe points.
//!
//! `cargo run --example luna_criterion`

use std::sync::Arc;

use lunaquot::abelian::GradingGroup;
use lunaquot::gradedalg::GradedRing;
use lunaquot::luna::{cotangent_fiber, default_probes, is_strongly_equivariant, luna_verdict, GradedRingMap};
use lunaquot::poly::BaseField;

fn main() -> lunaquot::Result<()> {
    let z = GradingGroup::free(1);
    let line = Arc::new(GradedRing::from_strings(
        BaseField::Rational,
        z.clone(),
        &[("x", &[1])],
        &[],
    )?);
    let fat = Arc::new(GradedRing::from_strings(
        BaseField::Rational,
        z,
        &[("x", &[1])],
        &["x^2"],
    )?);
    let f = GradedRingMap::from_strings(line, fat.clone(), &["x"])?;

    let probes = default_probes(&fat)?;
    let verdict = luna_verdict(&f, &probes)?;
    for p in &verdict.probes {
        let c = cotangent_fiber(&f, &p.point)?;
        let h1: Vec<String> = c.h1.iter().map(|(d, n)| format!("{d}: {n}")).collect();
        println!(
            "{}: pointwise {}, fiberwise {}, H1 {}",
            p.point.show(&fat),
            p.pointwise,
            p.fiberwise,
            if h1.is_empty() { "0".into() } else { h1.join(", ") }
        );
    }
    println!("criterion at probes: {}", verdict.criterion_holds);
    println!("strongly equivariant: {}", is_strongly_equivariant(&f)?.holds);
    Ok(())
}
