//! GL(2,3) acting on two vectors and one covector. The generators are
//! certified by closure, and the natural pairing is fixed by all 48
//! elements while a single coordinate is not.
//!
//!     cargo run --example group_action

use invfield::groups::{action_endo, certify_generators, fixes, group_enumerate, group_generators, group_order, Family, GroupSpec};
use invfield::invariants::pairing;
use invfield::mpoly::{MPoly, Ring, Space, VarId};

fn main() -> invfield::Result<()> {
    let spec = GroupSpec::new(Family::GL, 2, 3)?;
    let f = spec.field.clone();
    println!("|GL(2,3)| = {}", group_order(&spec));
    for g in group_generators(&spec) {
        println!("generator {}", g.format(&f));
    }
    println!("generators certified: {}", certify_generators(&spec, 10_000)?);

    let ring = Ring::new(f.clone(), Space::new(2, 2, 1)?);
    let u = pairing(&ring, 2, 1, 0)?;
    let x = MPoly::var(&ring, VarId::x(1, 1));
    let els = group_enumerate(&spec, 10_000)?;
    let mut fixed_u = 0;
    let mut fixed_x = 0;
    for g in &els {
        fixed_u += fixes(g, &u)? as usize;
        fixed_x += fixes(g, &x)? as usize;
    }
    println!("pairing x[2]·y[1] fixed by {fixed_u} of {} elements", els.len());
    println!("x[1,1] fixed by {fixed_x} of {} elements", els.len());

    let g = &group_generators(&spec)[0];
    println!("\n{} sends x[1,2] to {}", g.format(&f), action_endo(g, &ring)?.apply(&MPoly::var(&ring, VarId::x(1, 2)))?);
    Ok(())
}
