use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regmat::bounds::BoundMethod;
use regmat::classify::Theorem;
use regmat::gen::{GeneratorSpec, GraphFamily, PaperExample};
use regmat_cli::commands::{self, Options};
use regmat_cli::report::{bounds_table, certificate_text, classification_text, components_text};
use regmat_cli::{json, CliError};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "regmat", version, about = "Walk-weight bounds on the largest singular value, and regularity classification")]
struct Cli {
    /// Relative tolerance for equality and tightness tests.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Iteration cap for the power iteration behind the reported sigma.
    #[arg(long, global = true, default_value_t = regmat::spectral::DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Print JSON instead of a text table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: components, sigma, all bounds, classification, certificates.
    Analyze {
        path: PathBuf,
        /// Also report the alternative readings of the support condition.
        #[arg(long)]
        literal_t3ii: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One lower bound (or Schur's upper bound).
    Bound {
        path: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Regular / pseudo-regular / almost regular (scalar input only).
    Classify { path: PathBuf },
    /// Connected components of the bipartite support graph.
    Components { path: PathBuf },
    /// Generate a matrix; the output format follows the --out extension.
    Gen(GenArgs),
    /// Equality certificate for one theorem.
    Certify {
        path: PathBuf,
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        literal_t3ii: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Walk,
    Weighted,
    Mean,
    Hwh,
    Schur,
}

impl From<MethodArg> for BoundMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Walk => BoundMethod::WalkBound,
            MethodArg::Weighted => BoundMethod::WeightedBound,
            MethodArg::Mean => BoundMethod::MeanBound,
            MethodArg::Hwh => BoundMethod::HwhBound,
            MethodArg::Schur => BoundMethod::SchurUpper,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    RandomNonneg,
    RandomComplex,
    Regular,
    AlmostRegular,
    Graph,
    PaperExample,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    E1,
    C2,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, required_unless_present = "spec")]
    kind: Option<KindArg>,
    /// A generator spec as JSON, e.g. '{"kind":"block_diag","blocks":[...]}'.
    #[arg(long, conflicts_with = "kind")]
    spec: Option<String>,
    #[arg(long, value_enum)]
    which: Option<WhichArg>,
    #[arg(long, value_enum)]
    graph: Option<GraphArg>,
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    binary: bool,
    #[arg(long)]
    symmetric: bool,
    /// Ones per row of the regular pattern.
    #[arg(long, default_value_t = 2)]
    row_support: usize,
    /// Number of weighted patterns summed by the regular generator.
    #[arg(long, default_value_t = 1)]
    terms: usize,
    /// Almost-regular blocks as `m x n x row_support` triples, e.g. `2x2x2,1x2x2`.
    #[arg(long, value_delimiter = ',')]
    blocks: Vec<String>,
    #[arg(long, default_value_t = 1.0)]
    target_sigma: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_block(s: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<usize> = s
        .split('x')
        .map(|t| t.trim().parse().map_err(|_| CliError::Input(format!("bad block `{s}`"))))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [m, n, k] => Ok((m, n, k)),
        _ => Err(CliError::Input(format!("block `{s}` must be m x n x row_support"))),
    }
}

fn gen_spec(g: &GenArgs) -> Result<GeneratorSpec, CliError> {
    if let Some(json) = &g.spec {
        return serde_json::from_str(json).map_err(|e| CliError::Input(format!("--spec: {e}")));
    }
    let (m, n, seed) = (g.m, g.n, g.seed);
    Ok(match g.kind.expect("clap requires --kind without --spec") {
        KindArg::RandomNonneg => GeneratorSpec::RandomNonneg {
            m,
            n,
            density: g.density,
            seed,
            binary: g.binary,
            symmetric: g.symmetric,
        },
        KindArg::RandomComplex => GeneratorSpec::RandomComplex { m, n, density: g.density, seed },
        KindArg::Regular => GeneratorSpec::Regular { m, n, row_support: g.row_support, terms: g.terms, seed },
        KindArg::AlmostRegular => GeneratorSpec::AlmostRegular {
            blocks: g.blocks.iter().map(|b| parse_block(b)).collect::<Result<_, _>>()?,
            target_sigma: g.target_sigma,
            seed,
            permute: true,
        },
        KindArg::Graph => {
            let graph = match g.graph.ok_or_else(|| CliError::Input("--kind graph needs --graph".into()))? {
                GraphArg::Path => GraphFamily::Path { n },
                GraphArg::Cycle => GraphFamily::Cycle { n },
                GraphArg::Complete => GraphFamily::Complete { n },
                GraphArg::CompleteBipartite => GraphFamily::CompleteBipartite { a: m, b: n },
                GraphArg::Star => GraphFamily::Star { leaves: n },
            };
            GeneratorSpec::Graph { graph }
        }
        KindArg::PaperExample => {
            let which = match g.which.ok_or_else(|| CliError::Input("--kind paper-example needs --which".into()))? {
                WhichArg::E1 => PaperExample::E1,
                WhichArg::C2 => PaperExample::C2,
            };
            GeneratorSpec::PaperExample { which }
        }
    })
}

fn emit<T: Serialize>(as_json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<String, CliError> {
    if as_json {
        json::to_string(value).map_err(|e| CliError::Numerical(format!("serializing report: {e}")))
    } else {
        Ok(text(value))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let opts = Options { tol: cli.tol, max_iter: cli.max_iter, literal_t3ii: false };
    match cli.command {
        Command::Analyze { path, literal_t3ii, out } => {
            let report = commands::cmd_analyze(&path, &Options { literal_t3ii, ..opts })?;
            let text = emit(cli.json, &report, |r| r.to_text())?;
            match out {
                Some(o) => {
                    fs::write(&o, text).map_err(|e| CliError::Input(format!("{}: {e}", o.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Bound { path, method, p, r } => {
            let b = commands::cmd_bound(&path, method.into(), p, r, &opts)?;
            emit(cli.json, &b, |b| bounds_table(std::slice::from_ref(b)))
        }
        Command::Classify { path } => {
            let c = commands::cmd_classify(&path, &opts)?;
            emit(cli.json, &c, classification_text)
        }
        Command::Components { path } => {
            let s = commands::cmd_components(&path)?;
            emit(cli.json, &s, components_text)
        }
        Command::Gen(g) => {
            let spec = gen_spec(&g)?;
            let (report, matrix) = commands::cmd_gen(&spec, g.out.as_deref())?;
            match (&g.out, cli.json) {
                (_, true) => emit(true, &report, |_| String::new()),
                (Some(p), false) => Ok(format!("wrote {}x{} matrix to {}\n", report.rows, report.cols, p.display())),
                (None, false) => Ok(matrix),
            }
        }
        Command::Certify { path, theorem, s, r, literal_t3ii } => {
            let c = commands::cmd_certify(&path, theorem, s, r, &Options { literal_t3ii, ..opts })?;
            emit(cli.json, &c, certificate_text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("regmat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
