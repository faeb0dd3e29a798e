//! Sparse polynomials in the vector and covector variables: the canonical
//! text format, Frobenius twists, the involution, and rational expressions.
//!
//!     cargo run --example polynomials

use invfield::gf::field_of_order;
use invfield::mpoly::{frobenius_endo, involution_endo, poly_det, rat_eq, FrobeniusKind, MPoly, RatExpr, Ring, Space};

fn main() -> invfield::Result<()> {
    let ring = Ring::new(field_of_order(3)?, Space::new(2, 1, 1)?);
    let p = |s: &str| MPoly::parse(&ring, s);

    let f = p("(x[1,1] + x[1,2])^2")?;
    println!("(x11 + x12)^2 = {f}");

    let u0 = p("x[1,1]*y[1,1] + x[1,2]*y[1,2]")?;
    let fr = frobenius_endo(&ring, FrobeniusKind::F, 1);
    let fs = frobenius_endo(&ring, FrobeniusKind::Fstar, 1);
    println!("u0       = {u0}");
    println!("F(u0)    = {}", fr.apply(&u0)?);
    println!("F*(u0)   = {}", fs.apply(&u0)?);
    let star = involution_endo(&ring, 1, 1)?;
    println!("*(F*(u0)) = {}", star.apply(&fs.apply(&u0)?)?);

    let moore = poly_det(&[
        vec![p("x[1,1]")?, p("x[1,2]")?],
        vec![p("x[1,1]^3")?, p("x[1,2]^3")?],
    ])?;
    println!("\nMoore determinant: {moore}");

    let g = p("x[1,1] + y[1,2]")?;
    let a = RatExpr::new(&f * &g, g.clone())?;
    println!("f*g / g = {a}");
    println!("equal to f: {}", rat_eq(&a, &RatExpr::from_poly(f))?);
    Ok(())
}
