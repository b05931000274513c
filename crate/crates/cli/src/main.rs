//! Command-line front end for exact lattice-point counting and summation
//! over rational convex polygons.
//!
//! Subcommands: `count`, `sum-monomial`, `sum-poly`, `ehrhart`,
//! `ehrhart-coeff`, `enumerate`.  All arithmetic is exact; output is
//! decimal integers or "num/den" rationals, quasi-polynomials in the text
//! form `fmod(p*t, q)` or as structured JSON.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 degenerate hull,
//! 4 internal consistency failure, 5 enumeration budget exceeded.

use clap::{ArgGroup, Args, Parser, Subcommand};
use latsum::brion::vertex_contribution;
use latsum::{
    coeff_t_ehrhart, convex_hull, ehrhart_quasipolynomial, Error, Int, Poly2, Polygon, Rat,
};
use latsum_cli::input::{
    parse_inline_points, parse_monomial, parse_polynomial, InputSpec, WeightSpec,
};
use latsum_cli::output::{coefficient_json, quasi_polynomial_json};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "latsum",
    version,
    about = "Exact sums of polynomial weights over the lattice points of rational polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the lattice points in the convex hull of the input points
    Count(CountArgs),
    /// Sum the monomial x^m1*y^m2 over the lattice points of the hull
    SumMonomial(SumMonomialArgs),
    /// Sum a polynomial weight over the lattice points of the hull
    SumPoly(SumPolyArgs),
    /// Quasi-polynomial in t giving the weighted sum over the t-fold dilation
    Ehrhart(EhrhartArgs),
    /// A single coefficient of the dilation quasi-polynomial
    EhrhartCoeff(EhrhartCoeffArgs),
    /// List the lattice points of the hull, one "x y" pair per line
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "points"])))]
struct SourceArgs {
    /// JSON problem file; "-" reads standard input
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Inline point list "x,y; x,y; ..." of exact rationals
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    points: Option<String>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Worker threads for the per-vertex contributions
    #[arg(long, value_name = "N", default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct SumMonomialArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Monomial exponents "m1,m2" (falls back to the input file's weight)
    #[arg(long, value_name = "M1,M2")]
    m: Option<String>,
    /// Recompute the sum by enumeration and require equality
    #[arg(long)]
    oracle_check: bool,
    /// Bounding-box cell budget for enumeration
    #[arg(long, value_name = "CELLS", default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for the per-vertex contributions
    #[arg(long, value_name = "N", default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct SumPolyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Polynomial weight, e.g. "x^32*y^32+7" (falls back to the input file)
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    h: Option<String>,
    /// Recompute the sum by enumeration and require equality
    #[arg(long)]
    oracle_check: bool,
    /// Bounding-box cell budget for enumeration
    #[arg(long, value_name = "CELLS", default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for the per-vertex contributions
    #[arg(long, value_name = "N", default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct EhrhartArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Monomial weight exponents "m1,m2" (default 0,0: plain counting)
    #[arg(long, value_name = "M1,M2", conflicts_with = "h")]
    m: Option<String>,
    /// Polynomial weight expression
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    h: Option<String>,
    /// Emit the structured JSON form instead of text
    #[arg(long)]
    json: bool,
    /// Print the exact value at this dilation instead of the closed form
    #[arg(long, value_name = "T", conflicts_with = "json")]
    eval: Option<i64>,
}

#[derive(Args)]
struct EhrhartCoeffArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Coefficient index: the power of t
    #[arg(long, value_name = "N")]
    i: usize,
    /// Monomial weight exponents "m1,m2" (default 0,0: plain counting)
    #[arg(long, value_name = "M1,M2", conflicts_with = "h")]
    m: Option<String>,
    /// Polynomial weight expression
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    h: Option<String>,
    /// Emit the structured JSON form instead of text
    #[arg(long)]
    json: bool,
    /// Print the exact value at this dilation instead of the closed form
    #[arg(long, value_name = "T", conflicts_with = "json")]
    eval: Option<i64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Bounding-box cell budget for enumeration
    #[arg(long, value_name = "CELLS", default_value_t = 10_000_000)]
    budget: u64,
}

/// A command failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult<T> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure {
        code: 4,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::SumMonomial(args) => cmd_sum_monomial(args),
        Command::SumPoly(args) => cmd_sum_poly(args),
        Command::Ehrhart(args) => cmd_ehrhart(args),
        Command::EhrhartCoeff(args) => cmd_ehrhart_coeff(args),
        Command::Enumerate(args) => cmd_enumerate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Problem {
    polygon: Polygon,
    weight: Option<WeightSpec>,
}

fn load_problem(source: &SourceArgs) -> CmdResult<Problem> {
    let (points, weight) = if let Some(path) = &source.input {
        let text = if path.as_os_str() == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?
        };
        let spec = InputSpec::from_json(&text).map_err(usage)?;
        (spec.points().map_err(usage)?, spec.weight)
    } else {
        let inline = source.points.as_deref().unwrap_or_default();
        (parse_inline_points(inline).map_err(usage)?, None)
    };
    let polygon = convex_hull(&points).map_err(|_| Failure {
        code: 3,
        message: "degenerate hull".to_string(),
    })?;
    Ok(Problem { polygon, weight })
}

fn monomial_weight(flag: &Option<String>, weight: &Option<WeightSpec>) -> CmdResult<(u32, u32)> {
    if let Some(m) = flag {
        return parse_monomial(m).map_err(usage);
    }
    match weight {
        Some(WeightSpec::Monomial([a, b])) => Ok((*a, *b)),
        Some(WeightSpec::Polynomial(_)) => Err(usage(
            "this command takes a monomial weight; pass --m M1,M2",
        )),
        None => Err(usage(
            "no weight given; pass --m M1,M2 or add one to the input file",
        )),
    }
}

fn polynomial_weight(flag: &Option<String>, weight: &Option<WeightSpec>) -> CmdResult<Poly2<Rat>> {
    if let Some(h) = flag {
        return parse_polynomial(h).map_err(usage);
    }
    match weight {
        Some(WeightSpec::Polynomial(src)) => parse_polynomial(src).map_err(usage),
        Some(WeightSpec::Monomial([a, b])) => Ok(monomial(*a, *b)),
        None => Err(usage(
            "no weight given; pass --h EXPR or add one to the input file",
        )),
    }
}

/// Weight for the dilation commands: --m, --h, the file weight, or the
/// counting weight 1 when nothing is specified.
fn dilation_weight(
    m: &Option<String>,
    h: &Option<String>,
    weight: &Option<WeightSpec>,
) -> CmdResult<Poly2<Rat>> {
    if let Some(m) = m {
        let (a, b) = parse_monomial(m).map_err(usage)?;
        return Ok(monomial(a, b));
    }
    if let Some(h) = h {
        return parse_polynomial(h).map_err(usage);
    }
    match weight {
        Some(_) => polynomial_weight(&None, weight),
        None => Ok(monomial(0, 0)),
    }
}

fn monomial(a: u32, b: u32) -> Poly2<Rat> {
    Poly2::monomial(a, b, Rat::from_integer(Int::from(1)))
}

/// Sums the per-vertex contributions, optionally on several worker threads.
/// The final reduction always runs in vertex order, so the result bytes do
/// not depend on the thread count.
fn weighted_sum(p: &Polygon, h: &Poly2<Rat>, threads: usize) -> Rat {
    let n = p.len();
    let threads = threads.clamp(1, n.max(1));
    let mut slots: Vec<Option<Rat>> = vec![None; n];
    if threads == 1 {
        for (i, slot) in slots.iter_mut().enumerate() {
            *slot = Some(vertex_contribution(p, i, h));
        }
    } else {
        let chunk = n.div_ceil(threads);
        std::thread::scope(|scope| {
            for (w, block) in slots.chunks_mut(chunk).enumerate() {
                let base = w * chunk;
                scope.spawn(move || {
                    for (off, slot) in block.iter_mut().enumerate() {
                        *slot = Some(vertex_contribution(p, base + off, h));
                    }
                });
            }
        });
    }
    let mut acc = Rat::from_integer(Int::from(0));
    for slot in slots {
        acc += slot.unwrap();
    }
    acc
}

fn check_budget(p: &Polygon, budget: u64) -> CmdResult<()> {
    let cells = p.bounding_box_cells();
    if cells > Int::from(budget) {
        return Err(Failure {
            code: 5,
            message: format!(
                "enumeration budget exceeded: the bounding box has {cells} cells, budget is {budget} (raise --budget)"
            ),
        });
    }
    Ok(())
}

fn oracle_check(p: &Polygon, h: &Poly2<Rat>, total: &Rat, budget: u64) -> CmdResult<()> {
    check_budget(p, budget)?;
    let mut direct = Rat::from_integer(Int::from(0));
    for point in p.lattice_points() {
        let x = Rat::from_integer(point.x);
        let y = Rat::from_integer(point.y);
        direct += h.evaluate(&x, &y);
    }
    if &direct != total {
        return Err(internal(format!(
            "oracle mismatch: cone summation gave {total}, enumeration gave {direct}"
        )));
    }
    Ok(())
}

fn print_integer(r: &Rat) -> CmdResult<()> {
    if !r.is_integer() {
        return Err(internal(format!(
            "non-integer result {r} from an integer-valued sum"
        )));
    }
    println!("{}", r.numer());
    Ok(())
}

fn cmd_count(args: CountArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    let total = weighted_sum(&problem.polygon, &monomial(0, 0), args.threads);
    print_integer(&total)
}

fn cmd_sum_monomial(args: SumMonomialArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    let (m1, m2) = monomial_weight(&args.m, &problem.weight)?;
    let h = monomial(m1, m2);
    let total = weighted_sum(&problem.polygon, &h, args.threads);
    if args.oracle_check {
        oracle_check(&problem.polygon, &h, &total, args.budget)?;
    }
    print_integer(&total)
}

fn cmd_sum_poly(args: SumPolyArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    let h = polynomial_weight(&args.h, &problem.weight)?;
    let total = weighted_sum(&problem.polygon, &h, args.threads);
    if args.oracle_check {
        oracle_check(&problem.polygon, &h, &total, args.budget)?;
    }
    println!("{total}");
    Ok(())
}

fn parse_eval_point(t: i64) -> CmdResult<Int> {
    if t < 0 {
        return Err(usage("--eval takes a non-negative dilation"));
    }
    Ok(Int::from(t))
}

fn cmd_ehrhart(args: EhrhartArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    let h = dilation_weight(&args.m, &args.h, &problem.weight)?;
    let qp = ehrhart_quasipolynomial(&problem.polygon, &h);
    if let Some(t) = args.eval {
        let t = parse_eval_point(t)?;
        println!("{}", qp.evaluate(&t));
    } else if args.json {
        println!(
            "{}",
            serde_json::to_string(&quasi_polynomial_json(&qp)).unwrap()
        );
    } else {
        println!("{qp}");
    }
    Ok(())
}

fn cmd_ehrhart_coeff(args: EhrhartCoeffArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    let h = dilation_weight(&args.m, &args.h, &problem.weight)?;
    let coeff = coeff_t_ehrhart(&problem.polygon, &h, args.i).map_err(|e| match e {
        Error::IndexOutOfRange => usage(format!("coefficient index {} is out of range", args.i)),
        other => internal(other.to_string()),
    })?;
    if let Some(t) = args.eval {
        let t = parse_eval_point(t)?;
        println!("{}", coeff.evaluate(&t));
    } else if args.json {
        println!(
            "{}",
            serde_json::to_string(&coefficient_json(args.i, &coeff)).unwrap()
        );
    } else {
        println!("{coeff}");
    }
    Ok(())
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult<()> {
    let problem = load_problem(&args.source)?;
    check_budget(&problem.polygon, args.budget)?;
    for point in problem.polygon.lattice_points() {
        println!("{} {}", point.x, point.y);
    }
    Ok(())
}
