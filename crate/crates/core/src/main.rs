//! Command-line front end: per-prime reports, range audits, single
//! permutation signs and class numbers.
//!
//! Exit codes: 0 success (including audits whose only findings are
//! closed-form disagreements), 1 usage or validation error, 2 any
//! invariant or oracle failure in an audit.

use clap::{Parser, Subcommand};
use cubeperm::binform::class_number;
use cubeperm::permsign::build_cube_permutation;
use cubeperm::render::{render_range, render_report, OutputFormat};
use cubeperm::verify::{audit_prime, audit_range, AuditOptions, Scope};

#[derive(Parser)]
#[command(
    name = "cubeperm",
    version,
    about = "Audits the permutations induced by cube powers in prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Print the audit report for one prime p = 1 (mod 3)
    Report {
        /// Prime to audit
        p: u64,
        /// Primitive root to use as the reference generator
        /// (default: the smallest)
        #[arg(long)]
        g: Option<u64>,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Audit a whole prime range against the identity suites
    Verify {
        /// Which checks to run: lemmas, theorem or all
        #[arg(long, default_value = "all", value_parser = parse_scope)]
        scope: Scope,
        /// Largest prime to audit (suites also honor their own
        /// ceilings)
        #[arg(long = "max-p", default_value_t = 1000)]
        max_p: u64,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: OutputFormat,
        /// Worker threads for per-prime parallelism
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the rendering to a file instead of standard output
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Print the sign (+1 or -1) of the cube-power permutation for
    /// (p, g)
    Sign { p: u64, g: u64 },
    /// Print the class number for discriminant -p, p = 3 (mod 4)
    Classnum { p: u64 },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };
    match cli.command {
        Command::Report { p, g, format } => {
            let report = match audit_prime(p, g) {
                Ok(report) => report,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            match render_report(&report, format) {
                Ok(rendered) => {
                    print!("{rendered}");
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Command::Verify {
            scope,
            max_p,
            format,
            jobs,
            out,
        } => {
            if jobs == 0 {
                eprintln!("error: --jobs must be at least 1");
                return 1;
            }
            let range = match audit_range(5, max_p, &AuditOptions { scope, jobs }) {
                Ok(range) => range,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            let rendered = match render_range(&range, format) {
                Ok(rendered) => rendered,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                print!("{rendered}");
            }
            if range.has_failures() {
                2
            } else {
                0
            }
        }
        Command::Sign { p, g } => match build_cube_permutation(p, g) {
            Ok(record) => {
                println!("{}", if record.sign > 0 { "+1" } else { "-1" });
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Command::Classnum { p } => match class_number(p) {
            Ok(h) => {
                println!("{h}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
    }
}
