mod args;
mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use prac::report::Verdict;

use args::{Cli, Command, Format};
use output::Run;

fn dispatch(command: &Command) -> Result<Run> {
    match command {
        Command::Construct { poly, params } => commands::construct(poly, params),
        Command::Verify { file, params } => commands::verify(file, params),
        Command::Vee { f1, f2 } => commands::vee_product(f1, f2),
        Command::CheckFold { input, params, criterion, exhaustive_setpoly } => {
            commands::check_fold(input.poly.as_ref(), input.factors.as_deref(), params, *criterion, *exhaustive_setpoly)
        }
        Command::Enumerate { params, criterion } => commands::enumerate(params, *criterion),
        Command::Classify { poly: Some(p), .. } => commands::classify_poly(p),
        Command::Classify { f1: Some(f1), f2: Some(f2), .. } => commands::classify_pair(f1, f2),
        Command::Classify { .. } => anyhow::bail!("give --poly, or both --f1 and --f2"),
        Command::Conjecture { params, kmax, census_limit } => commands::conjecture(params, *kmax, *census_limit),
    }
}

fn emit(cli: &Cli, run: &Run) -> Result<()> {
    let report = match cli.format {
        Format::Text => run.render_text(),
        Format::Structured => run.render_structured(),
    };
    match (&run.artifact, &cli.out) {
        (Some(artifact), Some(path)) => {
            fs::write(path, artifact).with_context(|| format!("writing {}", path.display()))?;
            print!("{report}");
        }
        (Some(artifact), None) => {
            print!("{artifact}");
            eprint!("{report}");
        }
        (None, Some(path)) => fs::write(path, report).with_context(|| format!("writing {}", path.display()))?,
        (None, None) => print!("{report}"),
    }
    std::io::stdout().flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = dispatch(&cli.command).and_then(|mut run| {
        run.doc.wall_time = start.elapsed().as_secs_f64();
        emit(&cli, &run)?;
        Ok(run.verdict)
    });
    match outcome {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Ok(Verdict::Inconclusive) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
