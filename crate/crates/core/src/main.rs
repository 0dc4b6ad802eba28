use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tduality::dsl::{execute, parse_spec, Command, RouteChoice, SpecFile};
use tduality::{Error, ErrorClass};

/// Exact integral cohomology and T-duality for circle bundles and semi-free circle actions.
#[derive(Parser, Debug)]
#[command(name = "tduality", version)]
struct Cli {
  /// Input file; read from stdin when absent.
  #[arg(long, global = true)]
  spec: Option<PathBuf>,

  /// Emit structured JSON instead of the text report.
  #[arg(long, global = true)]
  json: bool,

  #[command(subcommand)]
  command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
  /// Cohomology groups of a declared complex.
  Cohom {
    #[arg(long)]
    complex: String,
    #[arg(long)]
    max_degree: Option<usize>,
  },
  /// T-dual of a bundle with optional flux.
  Dualize {
    #[arg(long)]
    bundle: String,
    #[arg(long)]
    flux: Option<String>,
  },
  /// Truncated Borel construction of an action and its dual.
  Borel {
    #[arg(long)]
    action: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Mw)]
    route: RouteArg,
  },
  /// Run consistency checks on every declaration.
  Verify {
    /// Also run the built-in catalog checks.
    #[arg(long)]
    all: bool,
  },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
  Mw,
  Bunke,
  Both,
}

fn exit_code(e: &Error) -> u8 {
  match e.class() {
    ErrorClass::Parse => 1,
    ErrorClass::Precondition => 2,
    ErrorClass::Internal => 3,
  }
}

fn read_spec(path: Option<&PathBuf>) -> Result<String, String> {
  match path {
    Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
    None if io::stdin().is_terminal() => Ok(String::new()),
    None => {
      let mut s = String::new();
      io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read stdin: {e}"))?;
      Ok(s)
    }
  }
}

fn main() -> ExitCode {
  let cli = match Cli::try_parse() {
    Ok(cli) => cli,
    Err(e) => {
      let code = if e.use_stderr() { 1 } else { 0 };
      let _ = e.print();
      return ExitCode::from(code);
    }
  };
  let text = match read_spec(cli.spec.as_ref()) {
    Ok(t) => t,
    Err(msg) => {
      eprintln!("error: {msg}");
      return ExitCode::from(2);
    }
  };
  let spec: SpecFile = match parse_spec(&text) {
    Ok(s) => s,
    Err(e) => {
      eprintln!("error: {e}");
      return ExitCode::from(exit_code(&e));
    }
  };
  let command = match cli.command {
    Cmd::Cohom { complex, max_degree } => Command::Cohom { complex, max_degree },
    Cmd::Dualize { bundle, flux } => Command::Dualize { bundle, flux },
    Cmd::Borel { action, route } => Command::Borel {
      action,
      route: match route {
        RouteArg::Mw => RouteChoice::MathaiWu,
        RouteArg::Bunke => RouteChoice::Bunke,
        RouteArg::Both => RouteChoice::Both,
      },
    },
    Cmd::Verify { all } => Command::Verify { all },
  };
  match execute(&command, &spec) {
    Ok(report) => {
      let text = if cli.json { format!("{}\n", report.to_json()) } else { report.to_string() };
      // a closed pipe downstream is not an error of ours
      let _ = io::stdout().lock().write_all(text.as_bytes());
      if report.failed() {
        ExitCode::from(3)
      } else if report.input_rejected() {
        ExitCode::from(2)
      } else {
        ExitCode::SUCCESS
      }
    }
    Err(e) => {
      eprintln!("error: {e}");
      ExitCode::from(exit_code(&e))
    }
  }
}
