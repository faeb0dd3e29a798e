//! Runs the verification suites over a small grid and prints the text
//! report. Pass a grid such as "n=2,q=3,m=1,d=1" to change it.
//!
//!     cargo run --release --example verify_suite

use invfield::suite::{parse_grid, run_suite, SuiteConfig};

fn main() -> invfield::Result<()> {
    let grid = std::env::args().nth(1).unwrap_or_else(|| "n=2,q=2,m=2,d=2;n=3,q=2,m=2,d=1".into());
    let cfg = SuiteConfig { grid: parse_grid(&grid)?, seed: 42, ..SuiteConfig::default() };
    let report = run_suite(&cfg)?;
    print!("{}", report.to_text());
    if !report.all_passed() {
        std::process::exit(1);
    }
    Ok(())
}
