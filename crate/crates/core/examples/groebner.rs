//! Reduced Gröbner bases, elimination, kernels and syzygies.
//!
//! `cargo run --example groebner`

use lunaquot::groebner::{ringmap_kernel, syzygies, Ideal};
use lunaquot::poly::{parse_polynomial, BaseField, MonomialOrder, Polynomial};

fn main() -> lunaquot::Result<()> {
    let q = BaseField::Rational;
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let p = |s: &str| parse_polynomial(s, &names, q);
    let show = |ps: &[Polynomial]| {
        ps.iter()
            .map(|g| g.display(&names).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };

    let i = Ideal::new(q, 3, vec![p("x^2 - y")?, p("x*y - z")?])?;
    println!("grevlex basis: {}", show(&i.groebner_basis(MonomialOrder::Grevlex)));
    println!("lex basis:     {}", show(&i.groebner_basis(MonomialOrder::Lex)));
    println!("eliminating x: {}", show(i.eliminate(&[1, 2]).generators()));
    println!("contains x^3 - z: {}", i.contains(&p("x^3 - z")?)?);

    // the twisted cubic as the kernel of k[x,y,z] -> k[t], x, y, z -> t, t^2, t^3
    let t = vec!["t".to_string()];
    let images: Vec<Polynomial> = ["t", "t^2", "t^3"]
        .iter()
        .map(|s| parse_polynomial(s, &t, q))
        .collect::<Result<_, _>>()?;
    let k = ringmap_kernel(&images, &Ideal::zero(q, 1))?;
    println!("kernel: {}", show(&k.groebner_basis(MonomialOrder::Grevlex)));

    let s = syzygies(&[p("x")?, p("y")?, p("z")?], &Ideal::zero(q, 3))?;
    println!("syzygies of (x, y, z):");
    for col in &s.columns {
        println!("  ({})", show(col));
    }
    Ok(())
}
