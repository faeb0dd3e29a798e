use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use invfield::certificate::{build_certificate, verify_certificate, Certificate, Theorem};
use invfield::gf::field_of_order;
use invfield::groups::{GroupSpec, DEFAULT_ENUM_CAP};
use invfield::invariants::{InvariantCtx, Label, SetName};
use invfield::mpoly::{Ring, Space};
use invfield::suite::{default_grid, parse_families, parse_grid, parse_suites, run_suite, SuiteConfig};
use invfield::Result;

#[derive(Parser)]
#[command(name = "invfield", version, about = "Invariant polynomials of GL, SL and U over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites over a parameter grid.
    Verify {
        #[arg(long, default_value = "GL,SL,U")]
        family: String,
        /// `n=2,q=2,m=2,d=2;...`; defaults to n<=3, q in {2,3}, m,d <= 2.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Largest group order checked element by element.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u128,
        /// Add wall-clock times to the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Print an invariant or a named generating set.
    Dump {
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        label: Option<String>,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Build a derivation certificate.
    Cert {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    CertVerify { path: PathBuf },
}

fn write_out(out: &Option<PathBuf>, s: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, s)?),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify { family, grid, suite, seed, out, format, cap, timing } => {
            let (suites, explicit) = parse_suites(&suite)?;
            let cfg = SuiteConfig {
                families: parse_families(&family)?,
                grid: grid.as_deref().map(parse_grid).transpose()?.unwrap_or_else(default_grid),
                suites,
                explicit,
                seed,
                enum_cap: cap,
                timing,
            };
            let report = run_suite(&cfg)?;
            let s = match format {
                Format::Json => report.to_json()?,
                Format::Text => report.to_text(),
            };
            write_out(&out, &s)?;
            let sm = &report.summary;
            eprintln!("{} checks: {} pass, {} fail, {} inconclusive", sm.total, sm.pass, sm.fail, sm.inconclusive);
            Ok(report.all_passed())
        }
        Cmd::Dump { label, set, n, q, m, d } => {
            let ring = Ring::new(field_of_order(q)?, Space::new(n, m, d)?);
            let ctx = InvariantCtx::resolved(ring)?;
            if let Some(l) = label {
                println!("{}", ctx.get(&Label::parse(&l, n)?)?);
            } else if let Some(s) = set {
                let gs = ctx.generating_set(s.parse::<SetName>()?)?;
                for (l, p) in &gs.members {
                    println!("{} = {p}", l.text(n));
                }
            }
            Ok(true)
        }
        Cmd::Cert { theorem, n, q, m, d, out } => {
            let theorem: Theorem = theorem.parse()?;
            let spec = GroupSpec::new(theorem.family(), n, q)?;
            let cert = build_certificate(theorem, &spec, m, d)?;
            let mut s = cert.to_json()?;
            s.push('\n');
            write_out(&out, &s)?;
            eprintln!("{} steps", cert.steps.len());
            Ok(true)
        }
        Cmd::CertVerify { path } => {
            let s = fs::read_to_string(&path)?;
            let cert = Certificate::from_json(&s)?;
            let r = verify_certificate(&cert)?;
            for st in &r.steps {
                println!("{} {} [{}] {}", if st.passed { "ok  " } else { "FAIL" }, st.target, st.justification, st.detail);
            }
            if !r.complete {
                println!("FAIL chain does not reach every element of the large generating set");
            }
            if !r.conventions_match {
                println!("FAIL certificate conventions differ from this build");
            }
            println!("{}", if r.passed { "certificate verified" } else { "certificate REJECTED" });
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
