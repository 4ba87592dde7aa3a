//! `hgc`: tables of hairy graph homology, verifiers, and decorated graph complexes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgc_core::linalg::RankEngine;
use hgc_core::operators::{verify_filtration, verify_loop01, verify_r2, verify_splitting, Report};
use hgc_core::report::{
    compute_table, format_entries, gc_summary, render, verify_table, Cache, Format, Outputs, TableConfig,
};
use hgc_core::{Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hgc", version, about = "Hairy graph complexes over exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Dimension parameter m; only its parity changes the complex, it shifts degrees.
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    m: i32,
    /// Dimension parameter n.
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    n: i32,
    /// Largest loop order (default depends on the command).
    #[arg(long, global = true)]
    max_loops: Option<usize>,
    /// Largest hair count (default depends on the command).
    #[arg(long, global = true)]
    max_hairs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Pretty)]
    format: OutputFormat,
    /// Seed of the prime stream used for modular ranks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for cached cell results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute all ranks over the rationals.
    #[arg(long, global = true)]
    exact: bool,
    /// Primes to try first, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Write assembled complexes as JSON (a directory for `table`, a file for `gc`).
    #[arg(long, global = true)]
    dump_complex: Option<PathBuf>,
    /// Skip table cells with more graph classes than this.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_generators: usize,
    /// Worker threads for table cells (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Homology dimensions per loop order and hair count.
    Table,
    /// Run a verifier suite; exits with 0 exactly when every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Homology of the decorated graph complex GC^r_F.
    Gc {
        /// Coefficient system, e.g. "Det*Sym2(H1)".
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Even codimension: the I/II splitting and the line graph bracket.
    #[value(name = "1", alias = "splitting")]
    Splitting,
    /// Odd codimension: the defect filtration and the tripod bracket.
    #[value(name = "2", alias = "filtration")]
    Filtration,
    /// Loop orders 0 and 1 against the closed forms.
    Loop01,
    /// Loop order 2 closed forms.
    R2,
    /// Computed tables against the shipped reference tables.
    Tables,
}

impl RunArgs {
    fn engine(&self) -> RankEngine {
        RankEngine::new(self.seed, self.primes.clone(), self.exact)
    }

    fn table_config(&self) -> TableConfig {
        TableConfig {
            m: self.m,
            n: self.n,
            max_loops: self.max_loops.unwrap_or(3),
            max_hairs: self.max_hairs.unwrap_or(3),
            seed: self.seed,
            exact: self.exact,
            primes: self.primes.clone(),
            max_generators: self.max_generators,
            threads: Some(self.threads),
        }
    }

    fn outputs(&self) -> Result<Outputs> {
        Ok(Outputs {
            cache: self.cache_dir.as_ref().map(Cache::new).transpose()?,
            dump_complex: self.dump_complex.clone(),
        })
    }

    fn format(&self) -> Format {
        match self.format {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
            OutputFormat::Pretty => Format::Pretty,
        }
    }
}

fn print_report(report: &Report, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")),
        OutputFormat::Csv => {
            println!("claim,parameters,pass");
            for c in &report.checks {
                println!("\"{}\",\"{}\",{}", c.claim.replace('"', "\"\""), c.parameters.to_string().replace('"', "\"\""), c.pass);
            }
        }
        OutputFormat::Pretty => {
            for c in &report.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                println!("{mark} {} {}", c.claim, c.parameters);
                if !c.pass {
                    println!("     lhs: {}\n     rhs: {}", c.lhs, c.rhs);
                }
            }
            println!("{} checks, {} failed", report.checks.len(), report.failures().len());
        }
    }
}

fn per_cell(
    run: &RunArgs,
    f: fn(i32, i32, usize, usize, &RankEngine) -> Result<Report>,
) -> Result<Report> {
    let engine = run.engine();
    let mut report = Report::default();
    for r in 2..=run.max_loops.unwrap_or(2) {
        for h in 1..=run.max_hairs.unwrap_or(3) {
            report.extend(f(run.m, run.n, r, h, &engine)?);
        }
    }
    Ok(report)
}

fn verify(run: &RunArgs, suite: Suite) -> Result<Report> {
    match suite {
        Suite::Splitting => per_cell(run, verify_splitting),
        Suite::Filtration => per_cell(run, verify_filtration),
        Suite::Loop01 => verify_loop01(run.m, run.n, run.max_hairs.unwrap_or(5), &run.engine()),
        Suite::R2 => verify_r2(3, run.max_hairs.unwrap_or(6), &run.engine()),
        Suite::Tables => verify_table(&compute_table(&run.table_config(), &run.outputs()?)?),
    }
}

fn gc(run: &RunArgs, coeff: &str, r: usize) -> Result<bool> {
    let engine = run.engine();
    let s = gc_summary(coeff, r, &engine)?;
    if let Some(path) = &run.dump_complex {
        let dc = hgc_core::decorated::build_decorated(&hgc_core::decorated::parse_system(coeff)?, r)?;
        let text = serde_json::to_string_pretty(&dc.gc.to_json()).expect("complexes serialize");
        std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    match run.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&s).expect("summaries serialize")),
        OutputFormat::Csv => {
            println!("coeff,r,homology,total,closed_form");
            let cf = s.closed_form.map(|k| k.to_string()).unwrap_or_default();
            println!("\"{}\",{},{},{},{cf}", s.coeff, s.r, format_entries(&s.homology), s.total);
        }
        OutputFormat::Pretty => {
            let h = if s.homology.is_empty() { "0".to_string() } else { format_entries(&s.homology) };
            println!("H(GC^{}_{{{}}}): {h}  (total {})", s.r, s.coeff, s.total);
            if let Some(k) = s.closed_form {
                let verdict = if s.pass() { "agrees" } else { "DISAGREES" };
                println!("theta invariants: {k} ({verdict})");
            }
        }
    }
    Ok(s.pass())
}

fn run(cli: &Cli) -> Result<bool> {
    let run = &cli.run;
    match &cli.command {
        Command::Table => {
            let t = compute_table(&run.table_config(), &run.outputs()?)?;
            print!("{}", render(&t, run.format()));
            Ok(t.discrepancies().is_empty())
        }
        Command::Verify { suite } => {
            let report = verify(run, *suite)?;
            print_report(&report, run.format);
            Ok(report.pass())
        }
        Command::Gc { coeff, r } => gc(run, coeff, *r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hgc: {e}");
            ExitCode::from(2)
        }
    }
}
