use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gendet_core::bench::{parse_shapes, run_benchmark, BenchConfig, Domain};
use gendet_core::gendet::{DEFAULT_MAX_MINORS, DEFAULT_TOLERANCE};
use gendet_core::io::{matrix_to_json, parse_matrix, parse_vector, Format, Literal};
use gendet_core::{
    detl, detl_squared_gram, directional_det, gdet_closed, gdet_recursive, polygon_area_gdet, solve_overdetermined,
    tdet, vdet, wedge_columns, Detl, Error, Matrix, Multivector, Options, Point, Rational, SolveOutcome,
};

mod exit {
    pub const USAGE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const INCONSISTENT: u8 = 3;
    pub const CAP: u8 = 4;
    pub const RANK_DEFICIENT: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "gendet", version, about = "Generalized determinants of tall matrices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Parse entries as exact rationals (integers, decimals, "p/q").
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum, global = true)]
    input: Option<InputFormat>,
    /// Relative tolerance for float-domain checks.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, global = true)]
    tolerance: f64,
    /// Cap on the number of maximal minors one call may enumerate.
    #[arg(long, env = "GENDET_MAX_MINORS", default_value_t = DEFAULT_MAX_MINORS, global = true)]
    max_minors: u128,
    /// Compute detl through det(AᵀA) instead of enumerating minors.
    #[arg(long, global = true)]
    gram: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Plain,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum InputFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant-like function (unsigned n-volume of the columns).
    Detl { matrix: Option<PathBuf> },
    /// Vector determinant: every maximal minor, in lexicographic order.
    Vdet { matrix: Option<PathBuf> },
    /// g-determinant.
    Gdet {
        matrix: Option<PathBuf>,
        /// Evaluate by Laplace recursion instead of the closed form.
        #[arg(long)]
        recursive: bool,
    },
    /// Sum of all maximal minors.
    Tdet { matrix: Option<PathBuf> },
    /// Wedge product of the columns by brute-force expansion.
    Wedge { matrix: Option<PathBuf> },
    /// Projection of vdet A onto the unit n-blade spanned by B.
    Dirdet { a: PathBuf, b: PathBuf },
    /// Solve a tall system Ax = b with the generalized Cramer rule.
    Solve { a: PathBuf, b: PathBuf },
    /// Signed polygon area from "x,y" vertex lines.
    Polyarea { vertices: Option<PathBuf> },
    /// Time minor enumeration against the Gram path.
    Bench {
        #[arg(long, default_value = "15x3,20x3,25x4,2000x10")]
        shapes: String,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => exit::INPUT,
            Failure::Core(e) => match e {
                Error::Inconsistent { .. } => exit::INCONSISTENT,
                Error::CapExceeded { .. } => exit::CAP,
                Error::RankDeficient | Error::DegenerateDirection => exit::RANK_DEFICIENT,
                Error::Dimension(_)
                | Error::Size { .. }
                | Error::NonFinite { .. }
                | Error::Numeric(_)
                | Error::Parse(_) => exit::INPUT,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_source(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn input_format(g: &Global, path: Option<&Path>) -> Format {
    match g.input {
        Some(InputFormat::Csv) => Format::Csv,
        Some(InputFormat::Json) => Format::Json,
        None => match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        },
    }
}

fn load<S: Literal>(g: &Global, path: Option<&Path>) -> Result<Matrix<S>, Failure> {
    let text = read_source(path)?;
    Ok(parse_matrix(&text, input_format(g, path))?)
}

fn load_vector<S: Literal>(g: &Global, path: &Path) -> Result<Vec<S>, Failure> {
    let text = read_source(Some(path))?;
    Ok(parse_vector(&text, input_format(g, Some(path)))?)
}

fn options(g: &Global) -> Options {
    Options::default().with_max_minors(g.max_minors).with_tolerance(g.tolerance)
}

fn plain_scalar<S: Literal>(v: &S) -> String {
    match v.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON value serializes")
}

fn exact_root<S: Literal>(squared: &S) -> Option<String> {
    squared.perfect_sqrt().map(|r| plain_scalar(&r))
}

fn detl_text<S: Literal>(d: &Detl<S>) -> String {
    if S::EXACT {
        exact_root(&d.squared).unwrap_or_else(|| format!("sqrt({})", plain_scalar(&d.squared)))
    } else {
        d.value().to_string()
    }
}

fn multivector_json<S: Literal>(v: &Multivector<S>) -> Value {
    let terms: Vec<Value> = v.terms().map(|(c, x)| json!({"blade": c.indices(), "coefficient": x.to_json()})).collect();
    json!({"ambient": v.ambient(), "grade": v.grade(), "terms": terms})
}

fn multivector_plain<S: Literal>(v: &Multivector<S>) -> String {
    v.terms().map(|(c, x)| format!("{c} {}", plain_scalar(x))).collect::<Vec<_>>().join("\n")
}

fn run_typed<S: Literal>(g: &Global, command: &Command) -> Outcome {
    let opts = options(g);
    let json_out = g.format == OutputFormat::Json;
    match command {
        Command::Detl { matrix } => {
            let a: Matrix<S> = load(g, matrix.as_deref())?;
            let d = if g.gram && a.is_tall() { detl_squared_gram(&a, opts.tolerance)? } else { detl(&a, &opts)? };
            if d.fell_back() && !json_out {
                eprintln!("note: minor cap exceeded, detl computed through det(AᵀA)");
            }
            Ok(if json_out {
                pretty(json!({
                    "command": "detl",
                    "domain": S::DOMAIN,
                    "matrix": matrix_to_json(&a),
                    "detl": d.value(),
                    "detl_squared": d.squared.to_json(),
                    "path": d.path.as_str(),
                    "fallback": d.fell_back(),
                    "minors_visited": d.minors_visited.to_string(),
                }))
            } else {
                detl_text(&d)
            })
        }
        Command::Vdet { matrix } | Command::Wedge { matrix } => {
            let a: Matrix<S> = load(g, matrix.as_deref())?;
            let (name, v) = match command {
                Command::Vdet { .. } => ("vdet", vdet(&a, &opts)?),
                _ => ("wedge", wedge_columns(&a)?),
            };
            Ok(if json_out {
                let mut out = multivector_json(&v);
                out["command"] = json!(name);
                out["domain"] = json!(S::DOMAIN);
                out["matrix"] = matrix_to_json(&a);
                pretty(out)
            } else {
                multivector_plain(&v)
            })
        }
        Command::Gdet { matrix, recursive } => {
            let a: Matrix<S> = load(g, matrix.as_deref())?;
            let v = if *recursive { gdet_recursive(&a)? } else { gdet_closed(&a, &opts)? };
            Ok(scalar_output(json_out, "gdet", &a, &v))
        }
        Command::Tdet { matrix } => {
            let a: Matrix<S> = load(g, matrix.as_deref())?;
            let v = tdet(&a, &opts)?;
            Ok(scalar_output(json_out, "tdet", &a, &v))
        }
        Command::Dirdet { a, b } => {
            let ma: Matrix<S> = load(g, Some(a))?;
            let mb: Matrix<S> = load(g, Some(b))?;
            let p = directional_det(&ma, &mb, &opts)?;
            Ok(if json_out {
                pretty(json!({
                    "command": "dirdet",
                    "domain": S::DOMAIN,
                    "numerator": p.numerator.to_json(),
                    "direction_norm_squared": p.direction_norm_squared.to_json(),
                    "value": p.value(),
                }))
            } else if S::EXACT {
                match exact_root(&p.direction_norm_squared) {
                    Some(root) if root == "1" => plain_scalar(&p.numerator),
                    Some(root) => format!("{}/{}", plain_scalar(&p.numerator), root),
                    None => format!("{}/sqrt({})", plain_scalar(&p.numerator), plain_scalar(&p.direction_norm_squared)),
                }
            } else {
                p.value().to_string()
            })
        }
        Command::Solve { a, b } => {
            let ma: Matrix<S> = load(g, Some(a))?;
            let vb: Vec<S> = load_vector(g, b)?;
            match solve_overdetermined(&ma, &vb, &opts)? {
                SolveOutcome::Solution(x) => Ok(if json_out {
                    pretty(json!({
                        "command": "solve",
                        "domain": S::DOMAIN,
                        "status": "solution",
                        "x": x.iter().map(Literal::to_json).collect::<Vec<_>>(),
                    }))
                } else {
                    x.iter().map(plain_scalar).collect::<Vec<_>>().join("\n")
                }),
                SolveOutcome::Inconsistent { column, blade } => {
                    Err(Failure::Core(Error::Inconsistent { column, blade: blade.to_string() }))
                }
                SolveOutcome::RankDeficient => Err(Failure::Core(Error::RankDeficient)),
            }
        }
        Command::Polyarea { vertices } => {
            let m: Matrix<S> = load(g, vertices.as_deref())?;
            if m.cols() != 2 {
                return Err(Error::Dimension(format!("vertices need 2 coordinates, got {}", m.cols())).into());
            }
            let pts: Vec<Point<S>> =
                (0..m.rows()).map(|i| Point::new(m.get(i, 0).clone(), m.get(i, 1).clone())).collect();
            let area = polygon_area_gdet(&pts)?;
            Ok(scalar_output(json_out, "polyarea", &m, &area))
        }
        Command::Bench { .. } => unreachable!("bench is dispatched separately"),
    }
}

fn scalar_output<S: Literal>(json_out: bool, name: &str, a: &Matrix<S>, v: &S) -> String {
    if json_out {
        pretty(json!({
            "command": name,
            "domain": S::DOMAIN,
            "matrix": matrix_to_json(a),
            "value": v.to_json(),
        }))
    } else {
        plain_scalar(v)
    }
}

fn run_bench(g: &Global, shapes: &str, reps: usize, out: Option<&Path>, seed: u64) -> Outcome {
    let config = BenchConfig {
        shapes: parse_shapes(shapes)?,
        domain: if g.exact { Domain::Exact } else { Domain::Float },
        reps,
        options: options(g),
        seed,
    };
    let report = run_benchmark(&config)?;
    let text = report.to_json();
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match g.format {
        OutputFormat::Json => text,
        OutputFormat::Plain => report.render_table().trim_end().to_string(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(exit::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Bench { shapes, reps, out, seed } => run_bench(&cli.global, shapes, *reps, out.as_deref(), *seed),
        cmd if cli.global.exact => run_typed::<Rational>(&cli.global, cmd),
        cmd => run_typed::<f64>(&cli.global, cmd),
    };
    match result {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("gendet: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
