use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kam_atlas::logring::{expand_operator, haus_constant, leading_constant};
use kam_atlas::report::{run_plan, Plan, Status, StudyConfig, StudyReport};
use kam_atlas::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "kam-atlas", version, about = "Numerical studies of singular KAM structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Study config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the genericity conditions of the potential.
    CheckPotential(Common),
    /// Zone fractions, zone parameters and the measure scaling study.
    Cover(Common),
    /// Phase portraits of the reference potentials.
    Portrait(Common),
    /// Action profiles and separatrix fits.
    Actions(Common),
    /// Twist certificates, twist fields and Birkhoff data.
    Twist(Common),
    /// Expand `L^{3(n-1)} (D L^{3(n-1)})^{n-1}` with `L = z D`, and a leading constant.
    Logring {
        #[arg(long, default_value_t = 2)]
        order: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Run every section and write the report bundle.
    Study(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, plan, name) = match cli.command {
        Command::Logring { order, m, k } => return logring(order, m, k),
        Command::CheckPotential(c) => (c, Plan { genericity: true, ..Plan::none() }, "check-potential"),
        Command::Cover(c) => (c, Plan { covering: true, scaling: true, ..Plan::none() }, "cover"),
        Command::Portrait(c) => (c, Plan { portraits: true, ..Plan::none() }, "portrait"),
        Command::Actions(c) => (c, Plan { portraits: true, actions: true, ..Plan::none() }, "actions"),
        Command::Twist(c) => (c, Plan { actions: true, twist: true, ..Plan::none() }, "twist"),
        Command::Study(c) => (c, Plan::all(), "study"),
    };
    match run(&common, plan, name) {
        Ok(report) => {
            print_report(&report);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Json(_) => ExitCode::from(EXIT_CONFIG),
                _ => ExitCode::from(EXIT_FAILED),
            }
        }
    }
}

fn run(c: &Common, plan: Plan, name: &str) -> kam_atlas::Result<StudyReport> {
    let mut cfg = StudyConfig::load(&c.config)?;
    if let Some(seed) = c.seed {
        cfg.seed = seed;
    }
    let out = c
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| Path::new("out").join(name));
    run_plan(&cfg, &out, plan)
}

fn print_report(r: &StudyReport) {
    for (name, sec) in &r.summary.sections {
        let status = match sec.status {
            Status::Green => "green",
            Status::Red => "RED",
            Status::Skipped => "skipped",
        };
        println!("{name:<12} {status}");
        if sec.status != Status::Green {
            for m in &sec.messages {
                println!("    {m}");
            }
        }
    }
    println!("summary: {}", r.out.join("summary.json").display());
}

fn logring(order: u32, m: u32, k_lead: u32) -> ExitCode {
    let op = match expand_operator(order) {
        Ok(op) => op,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let k = 3 * order.saturating_sub(1);
    println!("L^{k} (D L^{k})^{} = {op}", order.saturating_sub(1));
    match leading_constant(m, k_lead) {
        Ok(lc) => {
            println!("leading constant (m = {m}, k = {k_lead}): {}", lc.constant);
            println!("(m!)^(k+1) k! = {}", haus_constant(m, k_lead));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
