use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use holes_core::harness::{
    load_instance, run_count, run_sweep, verify_pipeline, CountSource, Engine, HarnessError, SweepConfig, VerifyConfig,
};
use holes_core::io::format_points;
use holes_core::pointset::Validation;
use holes_core::{lemma1_construct, theorem_construct, Instance, Pattern, MAX_COORD};

#[derive(Parser)]
#[command(name = "holes", version, about = "Empty bichromatic triangles and tetrahedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance in general position as CSV.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count empty simplices in one instance and check bounds.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "oracle")]
        engine: Engine,
        /// Planar pattern (rrb, bbr, rrr, bbb); repeatable. Default: all.
        #[arg(long)]
        pattern: Vec<Pattern>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the constructive pipeline and list witnesses as index tuples.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count over a range of sizes and fit a power law.
    Sweep {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "oracle")]
        engine: Engine,
        #[arg(long, default_value_t = MAX_COORD as i64)]
        bound: i64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite; exits 1 on any failure.
    Verify {
        /// Restrict to one dimension; default runs both.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
        /// Planar sizes (points per color).
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 22])]
        sizes: Vec<usize>,
        /// Spatial sizes (points per color).
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 6, 8])]
        sizes3: Vec<usize>,
        #[arg(long, default_value_t = MAX_COORD as i64)]
        bound: i64,
        /// Extra instance files; repeatable.
        #[arg(long = "in")]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 10)]
    red: usize,
    #[arg(long, default_value_t = 10)]
    blue: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = MAX_COORD as i64)]
    bound: i64,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file; otherwise one is generated.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Check general position exhaustively regardless of size.
    #[arg(long)]
    full_validation: bool,
    #[command(flatten)]
    gen: GenArgs,
}

impl InputArgs {
    fn source(&self) -> CountSource {
        match &self.input {
            Some(path) => CountSource::File {
                path: path.clone(),
                validation: if self.full_validation { Validation::Full } else { Validation::Auto },
            },
            None => CountSource::Generate {
                dim: self.gen.dim,
                n_red: self.gen.red,
                n_blue: self.gen.blue,
                seed: self.gen.seed,
                coord_bound: self.gen.bound,
            },
        }
    }
}

enum Failure {
    Input(anyhow::Error),
    Check(anyhow::Error),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.into())
        } else {
            Failure::Check(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn witness_csv(instance: &Instance) -> Result<String, HarnessError> {
    let mut text = String::new();
    match instance {
        Instance::Planar(set) => {
            let w = lemma1_construct(set)?;
            text.push_str("# i,j,k\n");
            for t in &w.triangles {
                let [i, j, k] = t.indices;
                text.push_str(&format!("{i},{j},{k}\n"));
            }
            if w.rejected > 0 {
                eprintln!("warning: {} constructed triangles failed re-verification", w.rejected);
            }
        }
        Instance::Spatial(set) => {
            let out = theorem_construct(set)?;
            text.push_str("# i,j,k,l\n");
            for t in &out.tetrahedra {
                let [i, j, k, l] = t.indices;
                text.push_str(&format!("{i},{j},{k},{l}\n"));
            }
        }
    }
    Ok(text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { gen, out } => {
            let source = CountSource::Generate {
                dim: gen.dim,
                n_red: gen.red,
                n_blue: gen.blue,
                seed: gen.seed,
                coord_bound: gen.bound,
            };
            let (instance, _) = load_instance(&source)?;
            emit(&format_points(&instance), out.as_deref())?;
        }
        Command::Count { input, engine, pattern, out } => {
            let report = run_count(&input.source(), engine, &pattern)?;
            emit(&(report.to_json() + "\n"), out.as_deref())?;
            let failed: Vec<&str> = report.failed_gates().iter().map(|c| c.name.as_str()).collect();
            if !failed.is_empty() {
                return Err(Failure::Check(anyhow::anyhow!("bound checks failed: {}", failed.join(", "))));
            }
        }
        Command::Construct { input, out } => {
            let (instance, _) = load_instance(&input.source())?;
            let text = witness_csv(&instance)?;
            emit(&text, out.as_deref())?;
        }
        Command::Sweep { dim, sizes, trials, seed, engine, bound, jobs, out } => {
            let cfg = SweepConfig { dim, sizes, trials, seed, engine, coord_bound: bound, jobs };
            let report = run_sweep(&cfg)?;
            let json = serde_json::to_string_pretty(&report).context("serializing sweep report")?;
            emit(&(json + "\n"), out.as_deref())?;
        }
        Command::Verify { dim, seeds, sizes, sizes3, bound, files, out } => {
            let (sizes2, sizes3) = match dim {
                None => (sizes, sizes3),
                Some(2) => (sizes, Vec::new()),
                Some(3) => (Vec::new(), sizes3),
                Some(d) => return Err(Failure::Input(anyhow::anyhow!("dimension must be 2 or 3, got {d}"))),
            };
            let cfg = VerifyConfig { seeds, sizes2, sizes3, coord_bound: bound, files, ..VerifyConfig::default() };
            let report = verify_pipeline(&cfg);
            let json = serde_json::to_string_pretty(&report).context("serializing verify report")?;
            emit(&(json + "\n"), out.as_deref())?;
            for e in report.failures() {
                eprintln!("FAIL {} [{}]: {}", e.invariant, e.instance, e.detail);
            }
            eprintln!("{} passed, {} failed", report.passed, report.failed);
            if !report.all_passed() {
                return Err(Failure::Check(anyhow::anyhow!("{} invariant checks failed", report.failed)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
