//! Builds the derivation chains for GL, SL and UU, verifies them, shows
//! that a corrupted step is caught, and round-trips one through JSON.
//!
//!     cargo run --example certificates

use invfield::certificate::{build_certificate, corrupt, verify_certificate, Certificate, StepKind, Theorem};
use invfield::groups::GroupSpec;

fn main() -> invfield::Result<()> {
    let cases = [(Theorem::GL, 2, 3, 2, 2), (Theorem::SL, 3, 2, 2, 2), (Theorem::UU, 3, 2, 2, 1)];
    for (t, n, q, m, d) in cases {
        let cert = build_certificate(t, &GroupSpec::new(t.family(), n, q)?, m, d)?;
        let report = verify_certificate(&cert)?;
        println!("{t} n={n} q={q} m={m} d={d}: {} steps, verified {}", cert.steps.len(), report.passed);
        for s in &cert.steps {
            match &s.kind {
                StepKind::Derived { expr, .. } => {
                    let e = expr.to_string();
                    let e = if e.len() > 90 { format!("{}...", &e[..90]) } else { e };
                    println!("  {:<11} = {e}   [{}]", s.target, s.justification);
                }
                StepKind::Axiom { statement, .. } => println!("  {:<11} in the field of {statement}   [{}]", s.target, s.justification),
            }
        }
        let mut bad = cert.clone();
        let idx = cert.steps.iter().rposition(|s| matches!(s.kind, StepKind::Derived { .. })).unwrap();
        corrupt(&mut bad, idx)?;
        println!("  corrupting step {idx}: failing steps {:?}\n", verify_certificate(&bad)?.failed_steps());
    }
    let cert = build_certificate(Theorem::UU, &GroupSpec::new(Theorem::UU.family(), 2, 3)?, 1, 1)?;
    let json = cert.to_json()?;
    let back = Certificate::from_json(&json)?;
    println!("JSON round trip ({} bytes) equal: {}", json.len(), back == cert);
    Ok(())
}
