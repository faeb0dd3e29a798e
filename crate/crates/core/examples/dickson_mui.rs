//! Dickson, Mui and pairing invariants, the named generating sets, and the
//! structural identities between them.
//!
//!     cargo run --example dickson_mui

use invfield::gf::field_of_order;
use invfield::invariants::{InvariantCtx, Label, SetName};
use invfield::mpoly::{Ring, Space};

fn main() -> invfield::Result<()> {
    let ring = Ring::new(field_of_order(2)?, Space::new(2, 2, 2)?);
    let ctx = InvariantCtx::resolved(ring)?;
    let get = |s: &str| ctx.get(&Label::parse(s, 2)?);

    for l in ["c[1,0]", "c[1,1]", "d[1,2]", "f[1,2]", "fstar[1,2]", "u[2,-1]", "v[2,1]"] {
        println!("{l:<11} = {}", get(l)?);
    }
    println!("\nc[1,0] = d[1,2]^(q-1): {}", get("c[1,0]")? == get("d[1,2]")?);
    println!("u[1,0] = v[1,0]:        {}", get("u[1,0]")? == get("v[1,0]")?);

    for name in [SetName::ThmGL, SetName::ThmSL, SetName::ThmUU] {
        let set = ctx.generating_set(name)?;
        let labels: Vec<String> = set.labels().iter().map(|l| l.text(2)).collect();
        println!("\n{name} ({} members): {}", set.len(), labels.join(", "));
    }
    Ok(())
}
