//! `mvpoly`: build, act on, enumerate and verify rank-2 affine MV polytopes.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 suite failure.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvpoly::crystal::{self, CrystalElement};
use mvpoly::polytope::RenderFormat;
use mvpoly::twisted;
use mvpoly::verify::{self, Report};
use mvpoly::{LusztigDatum, MvError, System};

/// Largest height accepted by `enumerate`.
const MAX_ENUMERATE: u64 = 16;
/// Default bound when neither `--height` nor `MV_DEFAULT_HEIGHT` is given.
const DEFAULT_HEIGHT: u64 = 8;

#[derive(Parser)]
#[command(name = "mvpoly", version, about = "Rank-2 affine MV polytopes and their crystal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the polytope from one side and print both sides with statistics.
    Build(DatumArgs),
    /// Apply a comma separated word of crystal operators, left to right.
    Apply(ApplyArgs),
    /// List all elements up to a height.
    Enumerate {
        #[arg(long)]
        height: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: EnumFormat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Draw the polytope.
    Render {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value = "svg")]
        format: PictureFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// The same commands for A2(2).
    A22 {
        #[command(subcommand)]
        command: A22Command,
    },
}

#[derive(Subcommand)]
enum A22Command {
    Build(DatumArgs),
    Apply(ApplyArgs),
}

#[derive(Args)]
struct DatumArgs {
    /// Right Lusztig data as JSON.
    #[arg(long, conflicts_with = "left")]
    right: Option<String>,
    /// Left Lusztig data as JSON.
    #[arg(long)]
    left: Option<String>,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long)]
    ops: String,
    /// Right Lusztig data as JSON; read from stdin when omitted.
    #[arg(long)]
    right: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum PictureFormat {
    Svg,
    Tikz,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Ks,
    Phi,
    Blambda,
    A22,
}

impl Suite {
    fn max_height(self) -> u64 {
        match self {
            Suite::Ks | Suite::Phi => 12,
            Suite::Blambda | Suite::A22 => 8,
        }
    }
}

enum Failure {
    Usage(String),
    Validation(String),
    Suite,
}

impl From<MvError> for Failure {
    fn from(e: MvError) -> Self {
        match e {
            MvError::UnknownOp(_) => Failure::Usage(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(s)
}

fn parse_datum(text: &str, system: Option<System>) -> Result<LusztigDatum, Failure> {
    let text = if text.trim().is_empty() { "{}" } else { text };
    let d = LusztigDatum::from_json(text)?;
    Ok(match system {
        Some(s) => d.with_system(s),
        None => d,
    })
}

fn element(args: &DatumArgs, system: Option<System>) -> Result<CrystalElement, Failure> {
    let b = match (&args.right, &args.left) {
        (_, Some(l)) => CrystalElement::try_from_left(parse_datum(l, system)?)?,
        (Some(r), None) => CrystalElement::try_new(parse_datum(r, system)?)?,
        (None, None) => CrystalElement::try_new(parse_datum(&read_stdin()?, system)?)?,
    };
    Ok(b)
}

fn right_element(right: &Option<String>, system: Option<System>) -> Result<CrystalElement, Failure> {
    let text = match right {
        Some(r) => r.clone(),
        None => read_stdin()?,
    };
    Ok(CrystalElement::try_new(parse_datum(&text, system)?)?)
}

fn height(given: Option<u64>, max: u64) -> Result<u64, Failure> {
    let h = match given {
        Some(h) => h,
        None => match std::env::var("MV_DEFAULT_HEIGHT") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("MV_DEFAULT_HEIGHT is not a height: {v:?}")))?,
            Err(_) => DEFAULT_HEIGHT,
        },
    };
    if h > max {
        return Err(Failure::Validation(format!("height {h} out of range (maximum {max})")));
    }
    Ok(h)
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_summary(b: &CrystalElement) {
    print_json(&crystal::summarize(b));
}

fn report_none(pos: usize, op: &str) {
    print_json(&serde_json::json!({ "result": "none", "position": pos, "op": op }));
}

fn apply(args: &ApplyArgs) -> CliResult {
    let ops = crystal::parse_word(&args.ops)?;
    let b = right_element(&args.right, None)?;
    match crystal::apply_word(&ops, &b) {
        Ok(c) => print_json(c.right()),
        Err(pos) => report_none(pos, &ops[pos - 1].to_string()),
    }
    Ok(())
}

fn a22_apply(args: &ApplyArgs) -> CliResult {
    let ops = twisted::a22_parse_word(&args.ops)?;
    let b = right_element(&args.right, Some(System::Twisted))?;
    match twisted::a22_apply_word(&ops, &b)? {
        Ok(c) => print_json(c.right()),
        Err(pos) => {
            let word: Vec<&str> = args.ops.split(',').map(str::trim).collect();
            report_none(pos, word[pos - 1]);
        }
    }
    Ok(())
}

fn verify_suite(suite: Suite, h: Option<u64>) -> CliResult {
    let h = height(h, suite.max_height())?;
    let reports: Vec<Report> = match suite {
        Suite::Ks => vec![verify::ks_characterization_check(h)],
        Suite::Phi => vec![verify::phi_morphism_check(0, h), verify::phi_morphism_check(1, h)],
        Suite::Blambda => verify::standard_lambdas()
            .iter()
            .map(|l| verify::b_lambda_count_check(l, h))
            .collect::<mvpoly::Result<_>>()?,
        Suite::A22 => vec![twisted::similarity_embed_check(h), twisted::a22_transfer_check(h)],
    };
    for r in &reports {
        println!("{}", r.to_json());
    }
    if reports.iter().all(Report::passed) {
        Ok(())
    } else {
        Err(Failure::Suite)
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Build(args) => print_summary(&element(&args, None)?),
        Command::Apply(args) => apply(&args)?,
        Command::Enumerate { height: h, format } => {
            let h = height(h, MAX_ENUMERATE)?;
            match format {
                EnumFormat::Json => {
                    let items: Vec<_> = verify::enumerate(h)
                        .iter()
                        .map(|b| serde_json::json!({ "right": b.right(), "left": b.left() }))
                        .collect();
                    print_json(&items);
                }
                EnumFormat::Dot => print!("{}", verify::crystal_graph_dot(h)),
            }
        }
        Command::Verify { suite, height: h } => verify_suite(suite, h)?,
        Command::Render { datum, format, output } => {
            let fmt = match format {
                PictureFormat::Svg => RenderFormat::Svg,
                PictureFormat::Tikz => RenderFormat::Tikz,
            };
            let text = element(&datum, None)?.polytope().render(fmt);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::A22 { command } => match command {
            A22Command::Build(args) => print_summary(&element(&args, Some(System::Twisted))?),
            A22Command::Apply(args) => a22_apply(&args)?,
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Suite) => 3,
    };
    let _ = io::stdout().flush();
    ExitCode::from(code)
}
