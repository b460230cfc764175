use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minperm::catalog::parse_group_spec;
use minperm::numbers::{rational_string, to_decimal};
use minperm::report::{compute, ComputeOptions, Mode, DECIMAL_DIGITS, SCHEMA_VERSION};
use minperm::tables::{conjecture_p4, limit_sweep, sum_delta};
use minperm::verify::{default_battery, run_battery, Suite, SuiteReport};
use minperm::{Caps, Error};
use serde::Serialize;

const EXIT_CAP: u8 = 2;
const EXIT_PROPERTY: u8 = 3;
const EXIT_USER: u8 = 4;

#[derive(Parser)]
#[command(name = "minperm", version, about = "Minimal faithful permutation degrees of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order accepted.
    #[arg(long, global = true, value_name = "N")]
    order_cap: Option<usize>,
    /// Largest number of subgroups enumerated.
    #[arg(long, global = true, value_name = "N")]
    lattice_cap: Option<usize>,
    /// Shuffles the oracle's candidate order; results do not depend on it.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal degree and Δ(G) of one group.
    Compute {
        /// Group, e.g. "C2 x C2", heis:3, saunders, file:table.txt
        spec: String,
        #[arg(long, conflicts_with_all = ["oracle", "both"])]
        greedy: bool,
        #[arg(long, conflicts_with = "both")]
        oracle: bool,
        #[arg(long)]
        both: bool,
        /// Enumerate all perfect collections up to conjugacy.
        #[arg(long)]
        all_perfect: bool,
        /// Write the subgroup lattice as JSON to this path.
        #[arg(long, value_name = "PATH")]
        dump_lattice: Option<PathBuf>,
        /// Run the greedy construction even when the group is not socle friendly.
        #[arg(long)]
        force: bool,
    },
    /// Σ Δ(G) over all groups of order p^k, k ≤ 3, against its closed form.
    SumDelta { k: u32, p: u64 },
    /// Σ Δ(G) over the fifteen groups of order p⁴ against the conjectured value.
    ConjectureP4 {
        p: u64,
        /// Directory with one Cayley table file per group of order p⁴.
        #[arg(long, value_name = "DIR")]
        tables: Option<PathBuf>,
    },
    /// Δ(C_n × C_p) against 1/n + Δ(C_n)/p.
    LimitSweep {
        n: u64,
        /// Comma separated primes.
        #[arg(value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Runs property suites on one group or on the built-in battery.
    Verify {
        /// One of main-theorem, matroid, replacement, bounds, socle-friendly; all when omitted.
        #[arg(long)]
        suite: Option<String>,
        spec: Option<String>,
    },
}

enum Failure {
    Error(Error),
    /// A computed result contradicts the expected property.
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_cap() => EXIT_CAP,
        Error::InternalInvariantViolation(_) | Error::DimensionInconsistency(_) => EXIT_PROPERTY,
        _ => EXIT_USER,
    }
}

fn caps(global: &Global) -> Result<Caps, Error> {
    let mut caps = Caps::from_env()?;
    if let Some(n) = global.order_cap {
        caps.order = n;
    }
    if let Some(n) = global.lattice_cap {
        caps.lattice = n;
    }
    Ok(caps)
}

fn print_json<T: Serialize>(command: &str, value: &T) {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "result": value,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn decimal(r: &minperm::Rational) -> String {
    to_decimal(r, DECIMAL_DIGITS)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let caps = caps(&cli.global)?;
    let json = cli.global.json;
    match cli.command {
        Command::Compute {
            spec,
            greedy,
            oracle,
            both,
            all_perfect,
            dump_lattice,
            force,
        } => {
            let group = parse_group_spec(&spec)?.build(&caps)?;
            let mode = match (greedy, oracle, both) {
                (true, _, _) => Some(Mode::Greedy),
                (_, true, _) => Some(Mode::Oracle),
                (_, _, true) => Some(Mode::Both),
                _ => None,
            };
            let options = ComputeOptions {
                mode,
                all_perfect,
                force,
                seed: cli.global.seed,
            };
            let (report, analysis) = compute(group, &options, &caps).map_err(|e| match e {
                Error::NotSocleFriendly => Error::UnsupportedParameter(
                    "group is not socle friendly; use --oracle, or --force for an advisory greedy run".into(),
                ),
                e => e,
            })?;
            if let Some(path) = dump_lattice {
                let dump = analysis.lattice.dump(&analysis.group);
                let text = serde_json::to_string_pretty(&dump).expect("lattice dump serializes");
                std::fs::write(path, text + "\n").map_err(Error::from)?;
            }
            if json {
                print_json("compute", &report);
            } else {
                print!("{}", report.to_text());
            }
            if report.mismatch {
                return Err(Failure::Property("greedy result is not a minimum".into()));
            }
        }
        Command::SumDelta { k, p } => {
            let r = sum_delta(k, p, &caps)?;
            if json {
                print_json("sum-delta", &r);
            } else {
                println!("groups of order {p}^{k}");
                for g in &r.groups {
                    println!("  {:<24} Δ = {:<12} {}", g.group, rational_string(&g.delta), decimal(&g.delta));
                }
                println!("Σ Δ          {} = {}", rational_string(&r.sum), decimal(&r.sum));
                println!("closed form  {} = {}", rational_string(&r.closed_form), decimal(&r.closed_form));
                println!("{}", verdict(r.matches));
            }
            if !r.matches {
                return Err(Failure::Property("sum differs from the closed form".into()));
            }
        }
        Command::ConjectureP4 { p, tables } => {
            let r = conjecture_p4(p, tables.as_deref(), &caps)?;
            if json {
                print_json("conjecture-p4", &r);
            } else {
                println!("abelian groups of order {p}^4");
                for g in &r.abelian {
                    println!("  {:<24} Δ = {:<12} {}", g.group, rational_string(&g.delta), decimal(&g.delta));
                }
                println!("abelian Σ Δ  {} = {}", rational_string(&r.abelian_sum), decimal(&r.abelian_sum));
                if let Some(full) = &r.full {
                    for g in &full.groups {
                        println!("  {:<24} Δ = {:<12} {}", g.group, rational_string(&g.delta), decimal(&g.delta));
                    }
                    println!("Σ Δ          {} = {}", rational_string(&full.sum), decimal(&full.sum));
                    println!(
                        "conjectured  {} = {}",
                        rational_string(&full.closed_form),
                        decimal(&full.closed_form)
                    );
                    println!(
                        "{}{}",
                        verdict(full.matches),
                        if r.advisory { " (advisory: the conjecture is stated for p > 3)" } else { "" }
                    );
                }
            }
            let full = r.require_full()?;
            if !full.matches && !r.advisory {
                return Err(Failure::Property("sum differs from the conjectured value".into()));
            }
        }
        Command::LimitSweep { n, primes } => {
            let r = limit_sweep(n, &primes, &caps)?;
            if json {
                print_json("limit-sweep", &r);
            } else {
                println!("Δ(C_{n}) = {}, limit 1/{n}", rational_string(&r.delta_cn));
                println!("{:>6}  {:<14} {:<16} {:<16} verdict", "p", "Δ(C_n × C_p)", "decimal", "excess over 1/n");
                for row in &r.rows {
                    println!(
                        "{:>6}  {:<14} {:<16} {:<16} {}",
                        row.p,
                        rational_string(&row.delta),
                        decimal(&row.delta),
                        decimal(&row.excess),
                        verdict(row.matches)
                    );
                }
            }
            if r.rows.iter().any(|row| !row.matches) {
                return Err(Failure::Property("Δ differs from 1/n + Δ(C_n)/p".into()));
            }
        }
        Command::Verify { suite, spec } => {
            let suites = match suite {
                Some(s) => vec![s.parse::<Suite>()?],
                None => Suite::ALL.to_vec(),
            };
            let specs = match spec {
                Some(s) => vec![parse_group_spec(&s)?],
                None => default_battery(),
            };
            let mut reports: Vec<SuiteReport> = Vec::new();
            let mut first_error = None;
            for suite in suites {
                for (spec, r) in specs.iter().zip(run_battery(suite, &specs, &caps)) {
                    match r {
                        Ok(r) => reports.push(r),
                        Err(e) => {
                            eprintln!("{suite} on {spec}: {e}");
                            first_error.get_or_insert(e);
                        }
                    }
                }
            }
            if json {
                print_json("verify", &reports);
            } else {
                for r in &reports {
                    for c in &r.checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        println!("{status} {} {}: {} ({})", r.suite, r.group, c.name, c.detail);
                    }
                }
            }
            if let Some(e) = first_error {
                return Err(e.into());
            }
            if reports.iter().any(|r| !r.passed()) {
                return Err(Failure::Property("a property check failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USER) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Property(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(EXIT_PROPERTY)
        }
    }
}
