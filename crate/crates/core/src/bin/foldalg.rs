use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use foldalg::algebra::PresentedAlgebra;
use foldalg::cartan::{fold, CartanTriple};
use foldalg::groebner::{EngineCaps, EngineError, DEFAULT_DEGREE_CAP, DEFAULT_DIM_CAP};
use foldalg::ideal::{vertex_ideals, IdealError, IdealMonoid, DEFAULT_ELEMENT_CAP};
use foldalg::io::{preset, CartanFile, InputError, InputFile};
use foldalg::linalg::{Field, PrimeField, RationalField};
use foldalg::presentation::{gls_h_presentation, gls_pi_presentation, preprojective_presentation, Presentation};
use foldalg::verify::{verify_prop_a, verify_theorem_b, Caps, VerifyError};
use foldalg::weyl::{WeylError, WeylGroup};

// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "foldalg", version, about = "Preprojective algebras, quiver folding and ideal monoids")]
struct Cli {
    /// Coefficient field: f2, f3, fP for a prime P, or q.
    #[arg(long, global = true, default_value = "f2")]
    field: String,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// JSON file: a quiver, a Cartan triple or a presentation.
    file: Option<PathBuf>,
    /// One of the bundled inputs: a3_swap, d4_rot3, pi_a2, pi_b2.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Preprojective algebra (of a quiver or of a Cartan triple).
    Pi,
    /// The algebra H(C, D, Ω) of a Cartan triple.
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a quiver with group action into a Cartan triple.
    Fold(Source),
    /// Verify the folding correspondence on an instance.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Build an algebra and dump its structure constants.
    Algebra {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "pi")]
        kind: Kind,
    },
    /// Build the monoid generated by the ideals A(1 - e_i)A.
    Monoid {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "pi")]
        kind: Kind,
        /// Comma-separated vertex labels to use as generators (default: all).
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<String>>,
    },
    /// Enumerate a Weyl group.
    Weyl(Source),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Ideal-monoid square through the folding map.
    PropA(Source),
    /// Computable consequences of the skew-group Morita equivalence.
    TheoremB(Source),
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Cap(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Cap(e.to_string())
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::CapExceeded(_) => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match VerifyError::from(e) {
            VerifyError::Cap(m) => CliError::Cap(m),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e.exit_code() {
            2 => CliError::Input(e.to_string()),
            3 => CliError::Cap(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

fn read_source(source: &Source) -> Result<(String, InputFile), CliError> {
    let (name, text) = match (&source.preset, &source.file) {
        (Some(p), None) => (p.clone(), preset(p)?.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (Some(_), Some(_)) => return Err(CliError::Input("give either a file or --preset, not both".into())),
        (None, None) => return Err(CliError::Input("no input: give a file or --preset".into())),
    };
    Ok((name, InputFile::parse(&text)?))
}

fn print<T: Serialize>(value: &T) {
    outln!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn presentation<F: Field>(field: F, input: &InputFile, kind: Kind) -> Result<(Presentation<F>, Vec<String>), CliError> {
    match (input, kind) {
        (InputFile::Quiver(qf), Kind::Pi) => {
            let q = qf.quiver()?;
            let (p, _) = preprojective_presentation(field, &q).map_err(InputError::from)?;
            Ok((p, q.vertices().to_vec()))
        }
        (InputFile::Quiver(_), Kind::H) => Err(CliError::Input("--kind h needs a Cartan triple".into())),
        (InputFile::Cartan(cf), kind) => {
            let t = cf.build()?;
            let p = match kind {
                Kind::Pi => gls_pi_presentation(field, &t),
                Kind::H => gls_h_presentation(field, &t),
            };
            Ok((p, t.index().to_vec()))
        }
        (InputFile::Presentation(pf), _) => {
            let p = pf.build(field)?;
            let names = p.quiver().vertices().to_vec();
            Ok((p, names))
        }
    }
}

fn run<F: Field>(field: F, cli: &Cli) -> Result<(), CliError> {
    let caps = Caps {
        engine: EngineCaps { degree_cap: cli.degree_cap, dim_cap: cli.dim_cap },
        element_cap: cli.element_cap,
    };
    match &cli.command {
        Command::Fold(source) => {
            let (_, input) = read_source(source)?;
            let qf = input.into_quiver()?;
            if qf.action.is_none() {
                return Err(InputError::MissingAction.into());
            }
            let (q, action) = qf.build()?;
            let t = fold(&q, &action).map_err(VerifyError::from)?;
            print(&CartanFile::from_triple(&t));
            Ok(())
        }
        Command::Verify { which } => {
            let (source, theorem_b) = match which {
                VerifyCommand::PropA(s) => (s, false),
                VerifyCommand::TheoremB(s) => (s, true),
            };
            let (name, input) = read_source(source)?;
            let (q, action) = input.into_quiver()?.build()?;
            let (report, _) = if theorem_b {
                verify_theorem_b(field, &name, &q, &action, caps)?
            } else {
                verify_prop_a(field, &name, &q, &action, caps)?
            };
            if cli.json {
                print(&report);
            } else {
                out!("{}", report.to_text());
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed("some checks failed".into()))
            }
        }
        Command::Algebra { source, kind } => {
            let (_, input) = read_source(source)?;
            let (p, _) = presentation(field, &input, *kind)?;
            let pa = PresentedAlgebra::build(&p, caps.engine)?;
            if cli.json {
                print(&pa.algebra().dump());
            } else {
                outln!("field {}", pa.algebra().field().descriptor());
                outln!("dimension {}", pa.dim());
                outln!("basis {}", pa.algebra().labels().join(", "));
            }
            Ok(())
        }
        Command::Monoid { source, kind, gens } => {
            let (_, input) = read_source(source)?;
            let (p, names) = presentation(field, &input, *kind)?;
            let pa = PresentedAlgebra::build(&p, caps.engine)?;
            let alg = pa.algebra();
            let mut generators = vertex_ideals(alg, &names)?;
            if let Some(wanted) = gens {
                if let Some(bad) = wanted.iter().find(|w| !names.contains(w)) {
                    return Err(CliError::Input(format!("unknown generator label {bad:?}")));
                }
                generators.retain(|(l, _)| wanted.contains(l));
            }
            let m = IdealMonoid::closure(alg, generators, caps.element_cap)?;
            let report = m.report(alg);
            if cli.json {
                print(&report);
            } else {
                outln!("elements {}", report.element_count);
                for e in &report.elements {
                    let flag = if e.is_zero_ideal { " (zero)" } else if e.is_unit { " (unit)" } else { "" };
                    outln!("  {:>4}  dim {:>4}  word [{}]{flag}", e.index, e.dimension, e.word.join(" "));
                }
            }
            Ok(())
        }
        Command::Weyl(source) => {
            let (_, input) = read_source(source)?;
            let t = match input {
                InputFile::Cartan(cf) => cf.build()?,
                InputFile::Quiver(qf) => CartanTriple::of_quiver(&qf.quiver()?).map_err(VerifyError::from)?,
                InputFile::Presentation(_) => return Err(CliError::Input("weyl needs a quiver or a Cartan triple".into())),
            };
            let w = WeylGroup::of_triple(&t, cli.element_cap)?;
            let report = w.report();
            if cli.json {
                print(&report);
            } else {
                outln!("order {}", report.order);
                outln!("lengths {:?}", report.length_histogram);
                outln!("longest element {}", report.longest_element_reduced_word.join(" "));
                for r in &report.relations {
                    outln!("  [{}] {}", if r.holds { "holds" } else { "FAILS" }, r.relation);
                }
            }
            if report.relations.iter().all(|r| r.holds) {
                Ok(())
            } else {
                Err(CliError::Failed("relation check failed".into()))
            }
        }
    }
}

fn parse_field(s: &str) -> Result<Option<u64>, CliError> {
    let s = s.to_ascii_lowercase();
    if s == "q" {
        return Ok(None);
    }
    s.strip_prefix('f')
        .and_then(|p| p.parse::<u64>().ok())
        .map(Some)
        .ok_or_else(|| CliError::Input(format!("unknown field {s:?}; use f2, f3, fP or q")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = parse_field(&cli.field).and_then(|p| match p {
        None => run(RationalField, &cli),
        Some(p) => {
            let f = PrimeField::new(p).map_err(|e| CliError::Input(e.to_string()))?;
            run(f, &cli)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
