//! Deciding strong equivariance by comparing `A ⊗_{A_0} B_0` with `B`.
//!
//! `cargo run --example strong_equivariance`

use std::sync::Arc;

use lunaquot::abelian::GradingGroup;
use lunaquot::gradedalg::GradedRing;
use lunaquot::luna::{is_strongly_equivariant, quotient_morphism, GradedRingMap, StrongWitness};
use lunaquot::poly::BaseField;

fn ring(g: &GradingGroup, vars: &[(&str, &[i64])], rels: &[&str]) -> lunaquot::Result<Arc<GradedRing>> {
    Ok(Arc::new(GradedRing::from_strings(
        BaseField::Rational,
        g.clone(),
        vars,
        rels,
    )?))
}

fn report(name: &str, f: &GradedRingMap) -> lunaquot::Result<()> {
    let v = is_strongly_equivariant(f)?;
    let why = match &v.witness {
        Some(StrongWitness::Unreached(var)) => format!(" ({var} is not in the image)"),
        Some(StrongWitness::Kernel(p)) => format!(" (kernel contains {p})"),
        None => String::new(),
    };
    let q = quotient_morphism(f)?;
    println!(
        "{name}: strongly equivariant {}{why}; quotient map surjective {}",
        v.holds,
        q.is_surjective()?
    );
    Ok(())
}

fn main() -> lunaquot::Result<()> {
    let z = GradingGroup::free(1);
    let a = ring(&z, &[("x", &[1]), ("y", &[-1])], &[])?;

    let trivial_factor = ring(&z, &[("x", &[1]), ("y", &[-1]), ("w", &[0])], &[])?;
    report(
        "A -> A[w], deg w = 0",
        &GradedRingMap::from_strings(a.clone(), trivial_factor, &["x", "y"])?,
    )?;

    let weighted = ring(&z, &[("x", &[1]), ("y", &[-1]), ("w", &[1])], &[])?;
    report(
        "A -> A[w], deg w = 1",
        &GradedRingMap::from_strings(a.clone(), weighted, &["x", "y"])?,
    )?;

    let orbit = ring(&z, &[("x", &[1]), ("y", &[-1])], &["x*y - 1"])?;
    report(
        "closed orbit xy = 1",
        &GradedRingMap::from_strings(a.clone(), orbit, &["x", "y"])?,
    )?;

    let z2 = GradingGroup::cyclic(2)?;
    let plane = ring(&z2, &[("x", &[1]), ("y", &[1])], &[])?;
    let cover = ring(&z2, &[("x", &[1]), ("y", &[1]), ("u", &[1])], &["u^2 - 1"])?;
    report("mu_2 cover", &GradedRingMap::from_strings(plane, cover, &["x", "y"])?)?;
    Ok(())
}
