//! The conventions fixed by the bootstrap, and the T-relations, the
//! determinant identity and the n = 2 hypersurface checked by expansion.
//!
//!     cargo run --example relations

use invfield::gf::field_of_order;
use invfield::invariants::InvariantCtx;
use invfield::mpoly::{Ring, Space};
use invfield::relations::{check_det_identity, check_hypersurface_n2, check_t, check_t_star, describe, resolved_conventions, t_star_lhs};

fn main() -> invfield::Result<()> {
    let conv = resolved_conventions()?;
    for (k, v) in describe(&conv) {
        println!("{k:>12}: {v}");
    }

    let ring = Ring::new(field_of_order(3)?, Space::new(3, 2, 2)?);
    let ctx = InvariantCtx::new(ring, conv.invariants);
    println!();
    for r in 1..3 {
        println!("T*_{r} for x[2]: {}", check_t_star(&ctx, 2, r, conv.twist)?);
        println!("T_{r}  for y[2]: {}", check_t(&ctx, 2, r, conv.twist)?);
    }
    let wrong = invfield::relations::Twist::Uniform;
    println!("T*_2 with every term twisted by q^2 leaves {} terms", t_star_lhs(&ctx, 2, 2, wrong)?.len());
    println!("determinant identity for x[2]: {:?}", check_det_identity(&ctx, 2)?);

    for q in [2, 3, 4] {
        let ring = Ring::new(field_of_order(q)?, Space::new(2, 1, 1)?);
        let ctx = InvariantCtx::new(ring, conv.invariants);
        println!("hypersurface over GF({q}): {}", check_hypersurface_n2(&ctx)?);
    }
    Ok(())
}
