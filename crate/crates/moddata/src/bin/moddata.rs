//! Command-line driver for the modular-data classification engine.

use clap::{Parser, Subcommand};
use moddata::cli::{
    cmd_enumerate, cmd_resume, cmd_run, cmd_verify, exit_code, render_case_file, render_report,
    write_outputs, BudgetSpec,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "moddata",
    about = "Exact-arithmetic classification engine for modular tensor category modular data"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write case-file skeletons for every candidate group and sign choice.
    Enumerate {
        #[arg(long, default_value_t = 6)]
        rank: usize,
        /// Number of non-self-dual label pairs (0, 1, or 2).
        #[arg(long, default_value_t = 0)]
        nsd_pairs: u8,
        /// Output directory; defaults to $MODDATA_OUT or ./out.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run case files and write traces and reports.
    Run {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long)]
        max_millis: Option<u64>,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Re-run cases whose stored traces are unresolved.
    Resume {
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_pairs: Option<usize>,
        #[arg(long)]
        max_millis: Option<u64>,
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Render the report tables from stored traces.
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file against the admissibility criteria.
    Verify { solution: PathBuf },
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("MODDATA_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(args: Args) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match args.command {
        Command::Enumerate {
            rank,
            nsd_pairs,
            out,
        } => {
            let dir = out_dir(out);
            std::fs::create_dir_all(&dir)?;
            let skeletons = cmd_enumerate(rank, nsd_pairs)?;
            let mut total = 0usize;
            for group in &skeletons {
                let gdir = dir.join(&group.group_label);
                std::fs::create_dir_all(&gdir)?;
                for (file, notes) in &group.cases {
                    total += 1;
                    std::fs::write(gdir.join(format!("{}.toml", file.name)), render_case_file(file))?;
                    if !notes.is_empty() {
                        std::fs::write(
                            gdir.join(format!("{}.notes.txt", file.name)),
                            notes.join("\n"),
                        )?;
                    }
                }
                if let Some(reason) = &group.eliminated {
                    std::fs::write(gdir.join("eliminated.txt"), reason)?;
                }
            }
            println!(
                "{} candidate groups, {} case skeletons written to {}",
                skeletons.len(),
                total,
                dir.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            files,
            parallel,
            out,
            max_pairs,
            max_millis,
            degree_cap,
        } => {
            let dir = out_dir(out);
            let results = cmd_run(&override_budgets(files, max_pairs, max_millis, degree_cap)?, parallel)?;
            write_outputs(&results, &dir)?;
            for r in &results {
                println!("{}", render_report(&r.report));
            }
            Ok(ExitCode::from(exit_code(&results) as u8))
        }
        Command::Resume {
            files,
            out,
            max_pairs,
            max_millis,
            degree_cap,
        } => {
            let dir = out_dir(out);
            let budget = if max_pairs.is_some() || max_millis.is_some() || degree_cap.is_some() {
                let mut b = BudgetSpec::default();
                if let Some(v) = max_pairs {
                    b.max_pairs = v;
                }
                if let Some(v) = max_millis {
                    b.max_millis = v;
                }
                b.degree_cap = degree_cap;
                Some(b)
            } else {
                None
            };
            let results = cmd_resume(&files, &dir, budget)?;
            for r in &results {
                println!("{}", render_report(&r.report));
            }
            Ok(ExitCode::from(exit_code(&results) as u8))
        }
        Command::Report { out } => {
            let dir = out_dir(out);
            for entry in std::fs::read_dir(&dir)? {
                let path = entry?.path();
                if path
                    .file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.ends_with(".report.txt"))
                {
                    println!("{}", std::fs::read_to_string(&path)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { solution } => {
            let report = cmd_verify(&solution)?;
            print!("{}", report.render());
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Applies command-line budget overrides by rewriting temporary case copies.
fn override_budgets(
    files: Vec<PathBuf>,
    max_pairs: Option<usize>,
    max_millis: Option<u64>,
    degree_cap: Option<u32>,
) -> Result<Vec<PathBuf>, Box<dyn std::error::Error>> {
    if max_pairs.is_none() && max_millis.is_none() && degree_cap.is_none() {
        return Ok(files);
    }
    let tmp = std::env::temp_dir().join("moddata-overrides");
    std::fs::create_dir_all(&tmp)?;
    let mut out = Vec::new();
    for path in files {
        let mut file = moddata::cli::load_case_file(&path)?;
        if let Some(v) = max_pairs {
            file.budget.max_pairs = v;
        }
        if let Some(v) = max_millis {
            file.budget.max_millis = v;
        }
        if degree_cap.is_some() {
            file.budget.degree_cap = degree_cap;
        }
        let dest = tmp.join(path.file_name().unwrap());
        std::fs::write(&dest, render_case_file(&file))?;
        out.push(dest);
    }
    Ok(out)
}
