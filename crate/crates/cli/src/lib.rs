//! Command-line front end. [`run_command`] holds all of the logic so that it
//! can be driven from tests with in-memory streams.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cavepoly::algorithms::{
    box_polynomial, cave_polynomial, mobius_polynomial, mobius_table, snapper_from_cave,
    stalactite_polynomial, LexOrder,
};
use cavepoly::geometry::{independence_points, is_cave, truncate};
use cavepoly::io::{
    parse_instance, parse_instance_document, serialize_instance, PolynomialDocument, RationalDocument,
};
use cavepoly::poly::canonical_cmp;
use cavepoly::{verify_campaign, Error, GeneratorConfig, LatticePoint, MultiPoly, Polymatroid, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "cavepoly",
    version,
    about = "Cave, stalactite, box and Möbius polynomials of polymatroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Instance JSON file; standard input when omitted or `-`
    file: Option<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate an instance
    Validate(Input),
    /// Base points
    Points(Input),
    /// Lattice points of the independence region
    Independence(Input),
    /// Cave polynomial
    Cave(Input),
    /// Stalactite polynomial
    Stal {
        #[command(flatten)]
        input: Input,
        /// Coordinate priority as a 1-based permutation, e.g. `2,1`
        #[arg(long)]
        order: Option<String>,
    },
    /// Box polynomial
    Box(Input),
    /// Möbius polynomial
    Mobius {
        #[command(flatten)]
        input: Input,
        /// Print μ at every independence point instead
        #[arg(long)]
        table: bool,
    },
    /// Snapper polynomial in the binomial basis
    Snapper {
        #[command(flatten)]
        input: Input,
        /// Expand to rational coefficients in the monomial basis
        #[arg(long)]
        expand: bool,
        /// Evaluate at an integer point, e.g. `0,0`
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Compare all four polynomials
    Equal(Input),
    /// Truncation at a point of the independence region
    Truncate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        at: String,
    },
    /// Check whether a raw point set is a cave
    IsCave {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        order: Option<String>,
    },
    /// Generate a random instance
    Random {
        #[command(flatten)]
        generator: GeneratorArgs,
    },
    /// Verify every identity on a seeded batch of random instances
    Verify {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Skip minimizing failing instances
        #[arg(long)]
        no_shrink: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct GeneratorArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dimension (for `verify`, the largest dimension)
    #[arg(long, default_value_t = 3)]
    p: usize,
    #[arg(long, default_value = "submodular-rejection")]
    strategy: String,
    #[arg(long, default_value_t = 6)]
    max_rank: u32,
    #[arg(long, default_value_t = 5)]
    max_cage: u32,
}

impl GeneratorArgs {
    fn config(&self) -> Result<GeneratorConfig, Error> {
        let cfg = GeneratorConfig {
            seed: self.seed,
            p: self.p,
            max_rank: self.max_rank,
            max_cage_entry: self.max_cage,
            strategy: self.strategy.parse::<Strategy>()?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit statuses.
pub const SUCCESS: i32 = 0;
pub const NEGATIVE: i32 = 1;
pub const INPUT_ERROR: i32 = 2;

enum Failure {
    Input(Error),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) => e.fmt(f),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Io(e) => e.fmt(f),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<i32, Failure>;

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                INPUT_ERROR
            } else {
                let _ = write!(stdout, "{e}");
                SUCCESS
            };
            return code;
        }
    };
    let mut streams = Streams { stdin, out: stdout };
    match dispatch(cli.command, &mut streams) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {failure}");
            INPUT_ERROR
        }
    }
}

fn read_input(input: &Input, streams: &mut Streams<'_>) -> Result<String, Failure> {
    match input.file.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            streams.stdin.read_to_string(&mut text)?;
            Ok(text)
        }
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
    }
}

fn load(input: &Input, streams: &mut Streams<'_>) -> Result<Polymatroid, Failure> {
    Ok(parse_instance(&read_input(input, streams)?)?)
}

fn parse_vector(flag: &str, text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--{flag} expects comma-separated integers, got `{text}`")))
}

fn parse_order(text: Option<&str>, p: usize) -> Result<LexOrder, Failure> {
    let Some(text) = text else {
        return Ok(LexOrder::identity(p));
    };
    let values = parse_vector("order", text)?;
    let values: Vec<usize> = values
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| Failure::Usage(format!("--order entry {v} is negative"))))
        .collect::<Result<_, _>>()?;
    let order = LexOrder::from_one_based(&values)?;
    if order.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: order.dim(),
        }
        .into());
    }
    Ok(order)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_polynomial(out: &mut dyn Write, q: &MultiPoly, json: bool) -> Outcome {
    if json {
        emit_json(out, &PolynomialDocument::monomial(q))?;
    } else {
        writeln!(out, "{q}")?;
    }
    Ok(SUCCESS)
}

fn emit_points<'a>(
    out: &mut dyn Write,
    points: impl IntoIterator<Item = &'a LatticePoint>,
    json: bool,
) -> Outcome {
    let points: Vec<&LatticePoint> = points.into_iter().collect();
    if json {
        emit_json(out, &points)?;
    } else {
        for n in points {
            writeln!(out, "{n}")?;
        }
    }
    Ok(SUCCESS)
}

fn dispatch(command: Command, streams: &mut Streams<'_>) -> Outcome {
    match command {
        Command::Validate(input) => {
            let poly = load(&input, streams)?;
            if input.json {
                #[derive(Serialize)]
                struct Summary<'a> {
                    valid: bool,
                    p: usize,
                    rank: u64,
                    cage: &'a LatticePoint,
                    base_points: usize,
                }
                emit_json(
                    streams.out,
                    &Summary {
                        valid: true,
                        p: poly.dim(),
                        rank: poly.rank(),
                        cage: poly.cage(),
                        base_points: poly.len(),
                    },
                )?;
            } else {
                writeln!(
                    streams.out,
                    "valid polymatroid: p={} rank={} cage={} base points={}",
                    poly.dim(),
                    poly.rank(),
                    poly.cage(),
                    poly.len()
                )?;
            }
            Ok(SUCCESS)
        }
        Command::Points(input) => {
            let poly = load(&input, streams)?;
            emit_points(streams.out, poly.points(), input.json)
        }
        Command::Independence(input) => {
            let poly = load(&input, streams)?;
            let ind = independence_points(&poly);
            emit_points(streams.out, ind.points(), input.json)
        }
        Command::Cave(input) => {
            let poly = load(&input, streams)?;
            emit_polynomial(streams.out, &cave_polynomial(&poly)?, input.json)
        }
        Command::Stal { input, order } => {
            let poly = load(&input, streams)?;
            let order = parse_order(order.as_deref(), poly.dim())?;
            emit_polynomial(streams.out, &stalactite_polynomial(&poly, &order)?, input.json)
        }
        Command::Box(input) => {
            let poly = load(&input, streams)?;
            emit_polynomial(streams.out, &box_polynomial(&poly)?, input.json)
        }
        Command::Mobius { input, table } => {
            let poly = load(&input, streams)?;
            if !table {
                return emit_polynomial(streams.out, &mobius_polynomial(&poly)?, input.json);
            }
            let table = mobius_table(&poly);
            let mut rows: Vec<(&LatticePoint, i64)> = table.values().iter().map(|(n, &v)| (n, v)).collect();
            rows.sort_by(|a, b| canonical_cmp(a.0, b.0));
            if input.json {
                #[derive(Serialize)]
                struct Row<'a> {
                    point: &'a LatticePoint,
                    mu: i64,
                }
                let rows: Vec<Row> = rows.into_iter().map(|(point, mu)| Row { point, mu }).collect();
                emit_json(streams.out, &rows)?;
            } else {
                for (n, v) in rows {
                    writeln!(streams.out, "{n} {v}")?;
                }
            }
            Ok(SUCCESS)
        }
        Command::Snapper { input, expand, eval } => {
            let poly = load(&input, streams)?;
            let snapper = snapper_from_cave(&poly)?;
            if let Some(at) = eval {
                let t = parse_vector("eval", &at)?;
                let value = snapper.eval(&t)?;
                if input.json {
                    emit_json(
                        streams.out,
                        &serde_json::json!({ "at": t, "value": value.to_string() }),
                    )?;
                } else {
                    writeln!(streams.out, "{value}")?;
                }
            } else if expand {
                let expanded = snapper.expand();
                if input.json {
                    emit_json(streams.out, &RationalDocument::new(&expanded))?;
                } else {
                    writeln!(streams.out, "{expanded}")?;
                }
            } else if input.json {
                emit_json(streams.out, &PolynomialDocument::binomial(&snapper))?;
            } else {
                writeln!(streams.out, "{snapper}")?;
            }
            Ok(SUCCESS)
        }
        Command::Equal(input) => {
            let poly = load(&input, streams)?;
            equal(&poly, input.json, streams.out)
        }
        Command::Truncate { input, at } => {
            let poly = load(&input, streams)?;
            let n = parse_vector("at", &at)?;
            if n.len() != poly.dim() {
                return Err(Error::DimensionMismatch {
                    expected: poly.dim(),
                    found: n.len(),
                }
                .into());
            }
            let n = LatticePoint::from_signed(&n)
                .ok_or_else(|| Failure::Usage(format!("--at {at} has a negative entry")))?;
            let t = truncate(&poly, &n)?;
            if input.json {
                writeln!(streams.out, "{}", serialize_instance(&t))?;
                Ok(SUCCESS)
            } else {
                emit_points(streams.out, t.points(), false)
            }
        }
        Command::IsCave { input, order } => {
            let doc = parse_instance_document(&read_input(&input, streams)?)?;
            let points = doc
                .points
                .ok_or_else(|| Failure::Usage("is-cave expects a `points` document".into()))?;
            let set = points.into_iter().map(LatticePoint::new).collect();
            let p = point_set_dim(&set)?;
            let order = parse_order(order.as_deref(), p)?;
            let report = is_cave(&set, &order)?;
            if input.json {
                emit_json(streams.out, &report)?;
            } else if let Some(failure) = &report.failure {
                let text = serde_json::to_string(failure).map_err(|e| Failure::Usage(e.to_string()))?;
                writeln!(streams.out, "not a cave: {text}")?;
            } else {
                writeln!(streams.out, "cave")?;
            }
            Ok(if report.is_cave { SUCCESS } else { NEGATIVE })
        }
        Command::Random { generator } => {
            let poly = cavepoly::random_polymatroid(&generator.config()?)?;
            writeln!(streams.out, "{}", serialize_instance(&poly))?;
            Ok(SUCCESS)
        }
        Command::Verify {
            generator,
            count,
            no_shrink,
            json,
        } => {
            let report = verify_campaign(&generator.config()?, count, !no_shrink)?;
            if json {
                emit_json(streams.out, &report)?;
            } else {
                writeln!(
                    streams.out,
                    "verified {} instances: {} passed, {} failed",
                    report.count, report.passed, report.failed
                )?;
                for f in &report.failures {
                    writeln!(
                        streams.out,
                        "FAIL seed={} {}: {}",
                        f.seed, f.check, f.counterexample
                    )?;
                    if let Some(shrunk) = &f.shrunk {
                        let points: Vec<String> =
                            shrunk.instance.points.iter().map(ToString::to_string).collect();
                        writeln!(streams.out, "  minimized: {}", points.join(" "))?;
                    }
                }
            }
            Ok(if report.all_passed() { SUCCESS } else { NEGATIVE })
        }
    }
}

fn point_set_dim(set: &std::collections::BTreeSet<LatticePoint>) -> Result<usize, Failure> {
    let first = set.iter().next().ok_or(Error::EmptyInput)?;
    for n in set {
        if n.dim() != first.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: n.dim(),
            }
            .into());
        }
    }
    Ok(first.dim())
}

fn equal(poly: &Polymatroid, json: bool, out: &mut dyn Write) -> Outcome {
    let identity = LexOrder::identity(poly.dim());
    let polys = [
        ("cave", cave_polynomial(poly)?),
        ("stalactite", stalactite_polynomial(poly, &identity)?),
        ("box", box_polynomial(poly)?),
        ("mobius", mobius_polynomial(poly)?),
    ];
    let mut pairs = Vec::new();
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            pairs.push((polys[a].0, polys[b].0, polys[a].1 == polys[b].1));
        }
    }
    let all_equal = pairs.iter().all(|p| p.2);
    if json {
        #[derive(Serialize)]
        struct Pair {
            left: &'static str,
            right: &'static str,
            equal: bool,
        }
        #[derive(Serialize)]
        struct Report {
            equal: bool,
            polynomials: Vec<(&'static str, String)>,
            pairs: Vec<Pair>,
        }
        emit_json(
            out,
            &Report {
                equal: all_equal,
                polynomials: polys.iter().map(|(k, q)| (*k, q.to_string())).collect(),
                pairs: pairs
                    .iter()
                    .map(|&(left, right, equal)| Pair { left, right, equal })
                    .collect(),
            },
        )?;
    } else if all_equal {
        writeln!(out, "EQUAL")?;
    } else {
        writeln!(out, "NOT EQUAL")?;
        for (name, q) in &polys {
            writeln!(out, "{name}: {q}")?;
        }
    }
    Ok(if all_equal { SUCCESS } else { NEGATIVE })
}
