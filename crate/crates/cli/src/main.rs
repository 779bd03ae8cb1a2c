use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barannikov_core::formal::DEFAULT_MAX_STATES;
use barannikov_core::path::parse_path_lines;
use barannikov_core::*;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_SOFTWARE: u8 = 70;
const EX_IOERR: u8 = 74;

/// Morse-Barannikov complexes: reduction, diagrams, paths and the formal problem.
#[derive(Debug, Parser)]
#[command(
    name = "barannikov",
    version,
    after_help = "Exit codes: 0 success or REACHABLE, 1 UNREACHABLE parity, 2 UNREACHABLE exhausted, \
                  3 UNDECIDED, 64 usage, 65 bad input, 70 internal error, 74 cannot write output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the type and partner of every generator.
    Reduce { complex: PathBuf },
    /// Draw the Barannikov diagram, ASCII on stdout unless --svg is given.
    Diagram {
        complex: PathBuf,
        /// File of `frame NAME up|down` lines.
        #[arg(long)]
        frames: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "rank", value_parser = y_mode)]
        y_mode: YMode,
    },
    /// Run a path of births, deaths and swaps, one report line per event.
    Path {
        complex: PathBuf,
        events: PathBuf,
        /// Write the Cerf diagram of the path here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "rank", value_parser = y_mode)]
        y_mode: YMode,
    },
    /// Decide whether a framed diagram reaches the standard one.
    Formal {
        diagram: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn y_mode(s: &str) -> Result<YMode, String> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(file: &Path, err: impl std::fmt::Display) -> Self {
        Failure {
            code: EX_DATAERR,
            message: format!("{}: {err}", file.display()),
        }
    }

    fn internal(err: impl std::fmt::Display) -> Self {
        Failure {
            code: EX_SOFTWARE,
            message: format!("internal error: {err}"),
        }
    }
}

fn read(file: &Path) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::data(file, e))
}

fn write(file: &Path, text: &str) -> Result<(), Failure> {
    fs::write(file, text).map_err(|e| Failure {
        code: EX_IOERR,
        message: format!("{}: {e}", file.display()),
    })
}

fn load_complex(file: &Path) -> Result<FilteredComplex, Failure> {
    parse_complex(&read(file)?).map_err(|e| Failure::data(file, e))
}

// Parsing already validated the complex, so a reduction failure is ours.
fn reduce_loaded(c: &FilteredComplex) -> Result<BarannikovResult, Failure> {
    reduce(c).map_err(Failure::internal)
}

fn render_opts(y_mode: YMode) -> RenderSpec {
    RenderSpec {
        y_mode,
        ..RenderSpec::default()
    }
}

fn path_failure(file: &Path, lines: &[(usize, PathEvent)], e: PathError) -> Failure {
    // A parsed complex always reduces, so a missing trace is a breach too.
    if matches!(e.reason, EventError::Internal(_)) || e.trace.is_none() {
        return Failure::internal(e);
    }
    let line = lines.get(e.index).map_or(0, |l| l.0);
    Failure::data(
        file,
        format!("line {line}: event {} ({}): {}", e.index + 1, e.event, e.reason),
    )
}

/// Runs one command, returning what goes to stdout and the exit code.
fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Reduce { complex } => {
            let c = load_complex(&complex)?;
            Ok((reduce_loaded(&c)?.render_table(), 0))
        }
        Command::Diagram {
            complex,
            frames,
            svg,
            y_mode,
        } => {
            let c = load_complex(&complex)?;
            let r = reduce_loaded(&c)?;
            let frames = match &frames {
                Some(f) => Some((f, parse_frames(&read(f)?).map_err(|e| Failure::data(f, e))?)),
                None => None,
            };
            let d = build_diagram(&r, frames.as_ref().map(|(_, m)| m))
                .map_err(|e| Failure::data(frames.as_ref().map_or(&complex, |(f, _)| f), e))?;
            match svg {
                Some(out) => {
                    write(&out, &render_svg(&d, &render_opts(y_mode)))?;
                    Ok((String::new(), 0))
                }
                None => Ok((render_ascii(&d), 0)),
            }
        }
        Command::Path {
            complex,
            events,
            svg,
            y_mode,
        } => {
            let c = load_complex(&complex)?;
            let lines = parse_path_lines(&read(&events)?).map_err(|e| Failure::data(&events, e))?;
            let list: Vec<PathEvent> = lines.iter().map(|(_, e)| e.clone()).collect();
            let trace = run_path(&c, &list).map_err(|e| path_failure(&events, &lines, e))?;
            if let Some(out) = svg {
                write(&out, &render_cerf(&trace, &render_opts(y_mode)))?;
            }
            Ok((trace.render_reports(), 0))
        }
        Command::Formal {
            diagram,
            max_states,
            svg,
        } => {
            let d = parse_diagram(&read(&diagram)?).map_err(|e| Failure::data(&diagram, e))?;
            if let Some(out) = svg {
                write(&out, &render_svg(&Diagram::from_framed(&d), &RenderSpec::default()))?;
            }
            let outcome = solve(&d, max_states).map_err(|e| Failure::data(&diagram, e))?;
            let code = match outcome {
                SolveOutcome::Reachable(_) => 0,
                SolveOutcome::Unreachable(Certificate::Parity) => 1,
                SolveOutcome::Unreachable(Certificate::Exhausted(_)) => 2,
                SolveOutcome::Undecided(_) => 3,
            };
            Ok((outcome.to_string(), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EX_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EX_IOERR);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("barannikov: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
