use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hkgeom::coframe::FamilySpec;
use hkgeom::ternary::Variant;
use hkgeom::{GeomError, KForm, SymTensor};
use hkgeom_cli::commands::{self, Outcome, Target};
use hkgeom_cli::report::{canonical_json, SuiteReport};
use hkgeom_cli::suite::{self, Options};
use serde::de::DeserializeOwned;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "hkgeom", version, about = "Exact checks for ternary forms, stabilizers and homogeneous coframes")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for the randomized spectral splitting.
    #[arg(long, global = true, env = "HKGEOM_SEED", default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Decompose(Decompose),
    #[command(subcommand)]
    Kernel(Kernel),
    /// Stabilizer subalgebra of an invariant tensor.
    Stabilizer {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Classify a 3-form on R^8 by its su(3) type.
    #[command(name = "classify-3form")]
    Classify3Form {
        #[arg(long)]
        input: PathBuf,
    },
    /// Torsion, curvature and symmetry data of a coframe family.
    Family {
        #[arg(long)]
        name: String,
        /// Comma separated assignments, e.g. `k=1,t=5/3`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Run acceptance checks: `all` or a criterion number 1 to 12.
    Suite {
        #[arg(default_value = "all")]
        which: String,
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Identities and Cartan conditions of a ternary symmetric form.
    Ternary {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        variant: u32,
        /// Symmetric tensor in JSON to check instead of the built-in one.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Cartan conditions for both bracketings.
    Cartan {
        #[arg(long)]
        k: u32,
    },
    /// The SU(2)×SU(2) structure in dimension 8.
    Su2su2,
}

#[derive(Subcommand, Debug)]
enum Decompose {
    /// Spectrum of Υ̂ on the tensor square.
    #[command(name = "tensor-square")]
    TensorSquare {
        #[arg(long)]
        k: u32,
    },
    /// Isotypic decomposition of Λ³.
    Lambda3 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Kernel {
    /// Kernel dimension of Υ′ on Λ²⊗ℝⁿ.
    #[command(name = "upsilon-prime")]
    UpsilonPrime {
        #[arg(long)]
        k: u32,
        /// Use two-prime modular elimination.
        #[arg(long)]
        modular: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Upsilon,
    Psi,
    Phi14,
    Sextic,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Upsilon => Target::Upsilon,
            TargetArg::Psi => Target::Psi,
            TargetArg::Phi14 => Target::Phi14,
            TargetArg::Sextic => Target::Sextic,
        }
    }
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::UnsupportedK(_)
            | GeomError::UnknownVariant(_)
            | GeomError::UnknownFamily(_)
            | GeomError::MissingParameter(_)
            | GeomError::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn suite_outcome(report: SuiteReport) -> Outcome {
    let ok = report.passed();
    Outcome { value: serde_json::to_value(&report).expect("report serializes"), status: hkgeom_cli::report::Status::from_bool(ok) }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Verify(Verify::Ternary { k, variant, input }) => {
            let variant = Variant::from_index(*variant)?;
            let tensor = match input {
                Some(p) => Some(read_json::<SymTensor>(p)?),
                None => None,
            };
            commands::verify_ternary(*k, variant, tensor)?
        }
        Command::Verify(Verify::Cartan { k }) => commands::verify_cartan(*k)?,
        Command::Verify(Verify::Su2su2) => commands::verify_su2su2(seed)?,
        Command::Decompose(Decompose::TensorSquare { k }) => commands::decompose_tensor_square(*k, seed)?,
        Command::Decompose(Decompose::Lambda3 { k, slow }) => commands::decompose_lambda3(*k, seed, *slow)?,
        Command::Kernel(Kernel::UpsilonPrime { k, modular }) => commands::kernel_upsilon_prime(*k, *modular)?,
        Command::Stabilizer { target, k } => commands::stabilizer((*target).into(), *k)?,
        Command::Classify3Form { input } => {
            let form: KForm = read_json(input)?;
            match commands::classify(&form) {
                Err(GeomError::InvalidStructure(m)) => return Err(Failure::Usage(m)),
                r => r?,
            }
        }
        Command::Family { name, params } => commands::family(&FamilySpec::parse(name, params)?)?,
        Command::Suite { which, slow } => {
            let opts = Options { seed, slow: *slow };
            if which == "all" {
                suite_outcome(suite::run_all(opts))
            } else {
                let n: u32 = which.parse().map_err(|_| Failure::Usage(format!("unknown suite `{which}`")))?;
                let checks = suite::run_criterion(n, opts).ok_or_else(|| Failure::Usage(format!("no criterion {n}")))?;
                suite_outcome(SuiteReport::new(&format!("criterion{n}"), seed, *slow, checks))
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    let (value, code) = match result {
        Ok(o) => {
            let code = if o.status == hkgeom_cli::report::Status::Fail { 1 } else { 0 };
            (o.value, code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Computation(m)) => (json!({ "error": m }), 1),
    };
    let text = canonical_json(&value);
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
