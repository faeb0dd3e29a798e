//! Arithmetic in GF(4) and GF(9): element codes, the textual format,
//! Frobenius, and a primitive element.
//!
//!     cargo run --example finite_fields

use invfield::gf::{enumerate_field, field_of_order, make_field};

fn main() -> invfield::Result<()> {
    let f4 = make_field(2, 2, Some(&[1, 1, 1]))?;
    let x = f4.parse("[0,1]")?;
    println!("GF(4), modulus {:?}", f4.modulus());
    println!("X * X = {}", f4.format(f4.mul(x, x)));
    println!("X^-1  = {}", f4.format(f4.inv(x)?));
    let all: Vec<String> = enumerate_field(&f4).iter().map(|a| f4.format(a.code())).collect();
    println!("elements in canonical order: {}", all.join(" "));

    let f9 = field_of_order(9)?;
    let g = f9.primitive_element();
    println!("\nGF(9), primitive element {}", f9.format(g));
    let powers: Vec<String> = (0..8).map(|k| f9.format(f9.pow(g, k))).collect();
    println!("powers of g: {}", powers.join(" "));
    for a in f9.elements() {
        // (a + 1)^3 = a^3 + 1
        let lhs = f9.pow(f9.add(a, f9.one()), 3);
        let rhs = f9.add(f9.frobenius(a), f9.one());
        assert_eq!(lhs, rhs);
    }
    println!("Frobenius is additive on every element");
    Ok(())
}
