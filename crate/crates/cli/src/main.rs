use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cohomo_cli::commands::{cmd_check_cocycle, cmd_compute, cmd_verify_paper, InputError};
use cohomo_cli::report::{Format, Report};

/// Exact cohomology of finite groups, with a built-in verification pipeline
/// for the Brauer group of the generic affine diagonal quadric.
#[derive(Parser)]
#[command(name = "cohomo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H^n(G, M) from group and module files.
    Compute {
        /// File with a [group] section.
        #[arg(long)]
        group: PathBuf,
        /// File with a [module] section (actions over the group's generators).
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Also print generator cocycles of the computed group.
        #[arg(long)]
        show_generators: bool,
        /// `text` or `machine` (tab-separated id/status/payload lines).
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Check whether a cochain file holds a cocycle, and whether it bounds.
    CheckCocycle {
        /// File with a [cochain] section (module inline or via module_file).
        #[arg(long)]
        cochain: PathBuf,
        /// Also print a coboundary witness when one exists.
        #[arg(long)]
        show_generators: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Replay the built-in verification of Br(U)/Br(F) = 0.
    VerifyPaper {
        /// picard, 1, 2, 3, 4 or all.
        #[arg(long, default_value = "all")]
        step: String,
        #[arg(long, default_value = "text")]
        format: String,
        /// Force a table entry, e.g. `Phi(t,t,s)=1`; may be repeated.
        #[arg(long = "debug-mutate")]
        debug_mutate: Vec<String>,
    },
}

fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn parse_format(s: &str) -> Result<Format, InputError> {
    Format::parse(s).ok_or_else(|| InputError(format!("unknown format `{s}`")))
}

fn run() -> Result<(Report, Format), InputError> {
    if let Ok(value) = std::env::var("COHOMO_MAX_TABLE") {
        let limit: usize = value
            .parse()
            .map_err(|_| InputError(format!("bad COHOMO_MAX_TABLE value `{value}`")))?;
        cohomo_core::set_table_limit(limit);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            group,
            module,
            degree,
            show_generators,
            format,
        } => {
            let format = parse_format(&format)?;
            let group_text = read_file(&group)?;
            let module_text = read_file(&module)?;
            let report = cmd_compute(&group_text, &module_text, degree, show_generators)?;
            Ok((report, format))
        }
        Command::CheckCocycle {
            cochain,
            show_generators,
            format,
        } => {
            let format = parse_format(&format)?;
            let text = read_file(&cochain)?;
            let base = cochain
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            let mut load = |rel: &str| -> Result<String, String> {
                std::fs::read_to_string(base.join(rel))
                    .map_err(|e| format!("cannot read {rel}: {e}"))
            };
            let report = cmd_check_cocycle(&text, &mut load, show_generators)?;
            Ok((report, format))
        }
        Command::VerifyPaper {
            step,
            format,
            debug_mutate,
        } => {
            let format = parse_format(&format)?;
            let report = cmd_verify_paper(&step, &debug_mutate)?;
            Ok((report, format))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
