//! Recovers the unstated coefficients of the R relations at n = 3 by exact
//! linear algebra and prints them in terms of the Mui invariants.
//!
//!     cargo run --example coefficient_recovery [q]

use invfield::gf::field_of_order;
use invfield::invariants::InvariantCtx;
use invfield::mpoly::{Ring, Space};
use invfield::relations::{solve_relation_coeffs, PairCtx, RName, RVariant, RelationTemplate};

fn main() -> invfield::Result<()> {
    let q: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let ring = Ring::new(field_of_order(q)?, Space::new(3, 2, 2)?);
    let ctx = InvariantCtx::resolved(ring)?;
    let pairs = [PairCtx::direct(1, 1), PairCtx::direct(2, 1), PairCtx::mirrored(1, 2)];
    for pair in pairs {
        for name in [RName::R1Plus, RName::R(2), RName::RMinus(3)] {
            let t = RelationTemplate::new(name, 3, RVariant::PatternConsistent)?;
            let s = solve_relation_coeffs(&ctx, &t, pair)?;
            println!(
                "{}: residual {}, solution space dim {}, all non-zero {}",
                s.name(),
                if s.residual_is_zero() { "0" } else { "NON-ZERO" },
                s.nullspace_dim,
                s.all_nonzero
            );
            for slot in &s.slots {
                let gens: Vec<String> = s.gen_labels.iter().map(|l| l.text(3)).collect();
                let coeff: Vec<String> = slot
                    .monomials
                    .iter()
                    .map(|(e, c)| {
                        let mut parts = vec![ctx.ring().field.format(*c)];
                        for (g, &k) in e.iter().enumerate() {
                            match k {
                                0 => {}
                                1 => parts.push(gens[g].clone()),
                                _ => parts.push(format!("{}^{k}", gens[g])),
                            }
                        }
                        parts.join("*")
                    })
                    .collect();
                let term = slot.term_label.map(|l| l.text(3)).unwrap_or_else(|| format!("u_{}", slot.term.a));
                println!("    ({}) * {term}^(q^{})", coeff.join(" + "), slot.term.twist);
            }
        }
    }
    Ok(())
}
