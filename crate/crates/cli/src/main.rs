use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use lghodge::exec::{check_range, Exec};
use lghodge::filtration::{verify_filtration_axioms, weight_filtration};
use lghodge::les::{solve, ChaseStatus, ExactSequenceSpec};
use lghodge::nilpotent::{jordan_profile, require_nilpotent};
use lghodge::{build_surface_model, RationalMatrix};

mod render;

use render::{Palette, ReportFormat};

#[derive(Parser, Debug)]
#[command(name = "lghodge", version, about = "Landau-Ginzburg Hodge numbers of rational elliptic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hodge tables and every check for one or all d.
    #[command(group(ArgGroup::new("which").required(true).args(["d", "all"])))]
    Report {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=9))]
        d: Option<u8>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Cohomology tables, chases and monodromy matrices of the surface model.
    Surface {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=9))]
        d: u8,
        #[arg(long)]
        json: bool,
    },
    /// Wheel Gram matrix and the section-augmented determinant.
    Lattice {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=9))]
        d: u8,
    },
    /// Long exact sequence tools.
    Les {
        #[command(subcommand)]
        action: LesAction,
    },
    /// Weight filtration of a nilpotent matrix read from a JSON file.
    WeightFiltration {
        file: PathBuf,
        /// Defaults to the nilpotency index minus one.
        #[arg(long)]
        center: Option<usize>,
    },
    /// Jordan data of a nilpotent matrix read from a JSON file.
    Jordan {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LesAction {
    /// Chase the dimensions of a sequence spec.
    Solve {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Plain,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_matrix(path: &Path) -> anyhow::Result<RationalMatrix> {
    Ok(RationalMatrix::from_json_str(&read(path)?)?)
}

/// Pretty JSON with keys sorted, since `serde_json::Value` maps are ordered.
fn to_sorted_json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    let value = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&value)?)
}

fn run(cli: Cli, palette: Palette) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Report { d, all, format } => {
            let ds: Vec<usize> = if all { (0..=9).collect() } else { vec![d.unwrap() as usize] };
            let reports = check_range(&ds, Exec::default())
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.all_applicable_pass());
            let models = ds
                .iter()
                .map(|&d| build_surface_model(d))
                .collect::<Result<Vec<_>, _>>()?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Markdown => ReportFormat::Markdown,
                Format::Plain => ReportFormat::Plain,
            };
            print!("{}", render::report(&reports, &models, format, all, palette)?);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Surface { d, json } => {
            let model = build_surface_model(d as usize)?;
            if json {
                println!("{}", to_sorted_json(&render::surface_json(&model)?)?);
            } else {
                print!("{}", render::surface_plain(&model)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { d } => {
            print!("{}", render::lattice_plain(d as usize)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Les {
            action: LesAction::Solve { file, json },
        } => {
            let spec = ExactSequenceSpec::from_json_str(&read(&file)?)?;
            let sol = solve(&spec)?;
            if json {
                println!("{}", to_sorted_json(&sol)?);
            } else {
                println!("{sol}");
            }
            Ok(match sol.status {
                ChaseStatus::Inconsistent(_) => ExitCode::FAILURE,
                _ => ExitCode::SUCCESS,
            })
        }
        Command::WeightFiltration { file, center } => {
            let n = read_matrix(&file)?;
            let index = require_nilpotent(&n)?;
            let center = center.unwrap_or(index.saturating_sub(1));
            let w = weight_filtration(&n, center)?;
            let report = verify_filtration_axioms(&n, &w)?;
            let out = serde_json::json!({ "filtration": w.to_json(), "axioms": report });
            println!("{}", to_sorted_json(&out)?);
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Jordan { file, json } => {
            let n = read_matrix(&file)?;
            let profile = jordan_profile(&n)?;
            if json {
                println!("{}", to_sorted_json(&render::jordan_json(&profile))?);
            } else {
                print!("{}", render::jordan_plain(&profile));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn palette() -> Palette {
    match std::env::var("LGHODGE_COLOR").as_deref() {
        Ok("always") => Palette::Ansi,
        Ok("never") => Palette::Plain,
        _ if std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none() => Palette::Ansi,
        _ => Palette::Plain,
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    match run(cli, palette()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

