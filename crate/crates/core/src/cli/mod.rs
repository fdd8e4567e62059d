//! Command-line front end.

pub mod commands;
pub mod config;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use config::{Command, ConfigError, OutputFormat, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PHYSICS: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const USAGE: &str = "\
usage: chiral-vacuum COMMAND [--config FILE] [--KEY VALUE]...

commands:
  pasteur      chiral shift above a Pasteur half-space vs height
  cavity       per-mode London and Debye shifts in a chiral cavity
  debye        collective Debye shift vs number of molecules
  selectivity  chirality-selective rate vs energy shift and temperature
  tst          as selectivity, with zero-point-corrected activation energies
  verify       run the built-in acceptance checks

KEY is a dotted configuration key such as material.kappa or sweep.z_min.
Config files hold `key = value` lines; `#` starts a comment.
Set CHIRAL_VACUUM_THREADS to cap the worker pool.";

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var("CHIRAL_VACUUM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError::Usage(format!("CHIRAL_VACUUM_THREADS must be a positive integer, got `{raw}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Run the CLI with `args` (without the program name); returns the exit code.
pub fn run<S: AsRef<str>>(args: &[S], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if args.is_empty() || args.iter().any(|a| matches!(a.as_ref(), "-h" | "--help")) {
        let _ = writeln!(stdout, "{USAGE}");
        return if args.is_empty() { EXIT_CONFIG } else { EXIT_OK };
    }
    if args.iter().any(|a| a.as_ref() == "--version") {
        let _ = writeln!(stdout, "{} {}", output::TOOL, output::VERSION);
        return EXIT_OK;
    }
    let config = match configure_threads().and_then(|_| RunConfig::from_args(args)) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, ConfigError::Usage(_)) {
                let _ = writeln!(stderr, "run with --help for usage");
            }
            return EXIT_CONFIG;
        }
    };
    if config.command == Command::Verify {
        let reports = crate::verify::run_all();
        let mut failed = 0;
        for r in &reports {
            let _ = writeln!(stdout, "{r}");
            failed += (!r.passed) as usize;
        }
        return if failed == 0 { EXIT_OK } else { EXIT_PHYSICS };
    }
    let resolved = match config.resolve() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let table = match config.command {
        Command::Pasteur => commands::pasteur(&resolved),
        Command::Cavity => commands::cavity(&resolved),
        Command::Debye => commands::debye(&resolved),
        Command::Selectivity => commands::selectivity(&resolved, false),
        Command::Tst => commands::selectivity(&resolved, true),
        Command::Verify => unreachable!(),
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_PHYSICS;
        }
    };
    let written = if resolved.output_path == "-" {
        emit(stdout, &table, &config, resolved.format)
    } else {
        File::create(&resolved.output_path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit(&mut w, &table, &config, resolved.format)?;
            w.flush()
        })
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write {}: {e}", resolved.output_path);
        return EXIT_PHYSICS;
    }
    for (row, msg) in &table.failures {
        let _ = writeln!(stderr, "warning: row {row}: {msg}");
    }
    if table.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_PHYSICS
    }
}

fn emit(w: &mut dyn Write, table: &output::Table, config: &RunConfig, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Csv => output::write_csv(w, table, config),
        OutputFormat::Json => output::write_json(w, table, config),
    }
}
