//! `quadfree`: command-line front end.
//!
//! Each subcommand prints a JSON document on stdout. With `-o`, the main
//! artefact (point list, image, report) goes to the file and stdout carries a
//! short summary instead. Exit status: 0 on success, 1 on invalid input, 2
//! when a search or factoring budget runs out.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use quadfree::ideals::PrimeIdealRef;
use quadfree::lfunctions::{zeta_k_euler, zeta_k_special, ExactZetaValue};
use quadfree::ring::BasisKind;
use quadfree::shiftspace::{entropy_exact, erdos_sum, zeta_k_value};
use quadfree::symmetries::{
    counterexample_pattern, is_predicted_element, predicted_stabilizer, stabilizer_search,
    DEFAULT_WITNESS_RADIUS,
};
use quadfree::{enumerate_kfree, Error, FieldParams, GLMatrix, LatticeBox, PointSet};

#[derive(Parser, Debug)]
#[command(name = "quadfree", version, about = "k-free integers of quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant, integral basis and unit group.
    Field(Opts),
    /// k-free points of a box.
    Enumerate(Opts),
    /// Density of k-free points in [-N, N]² against 1/ζ_K(k).
    Density(Opts),
    /// Exact and numeric ζ_K(k).
    Zeta(Opts),
    /// Entropy estimate, exact entropy and Erdős partial sum.
    Entropy(Opts),
    /// Brute-force stabiliser search on a box.
    Stab(Opts),
    /// Admissible pattern with a non-admissible image under a matrix.
    Counterexample(Opts),
    /// PGM image of the k-free points of a box.
    Render(Opts),
    /// Partial sum of No(p)^-k over prime ideals.
    Erdos(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Square-free d defining Q(√d).
    #[arg(short = 'd', allow_negative_numbers = true)]
    d: i64,
    #[arg(short = 'k', default_value_t = 2)]
    k: u32,
    /// Half-width of the centred box [-N, N]².
    #[arg(short = 'N', default_value_t = 100)]
    n: u32,
    #[arg(long, default_value_t = 1_000_000)]
    prime_bound: u64,
    #[arg(long, default_value_t = 3)]
    entry_bound: i64,
    /// Explicit box x0,x1,y0,y1 (overrides -N).
    #[arg(long = "box", allow_hyphen_values = true)]
    window: Option<LatticeBox>,
    /// Matrix for `counterexample`, as [[a,b],[c,d]].
    #[arg(long, default_value = "[[1,1],[0,1]]", allow_hyphen_values = true)]
    matrix: GLMatrix,
    /// Unit power bound for real-field stabiliser truncations.
    #[arg(long, default_value_t = 3)]
    unit_power_bound: u32,
    #[arg(short = 'o')]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also report entropies in bits.
    #[arg(long)]
    bits: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pgm,
}

enum Failure {
    Domain(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

/// Largest box the point-set commands accept.
const MAX_AREA: u64 = 400_000_000;

fn check_area(b: &LatticeBox) -> Result<(), Failure> {
    if b.area() > MAX_AREA {
        return Err(domain(format!("box {b} has more than {MAX_AREA} points")));
    }
    Ok(())
}

fn centered(n: u32) -> Result<LatticeBox, Failure> {
    if n > 10_000 {
        return Err(domain(format!("N = {n} exceeds 10000")));
    }
    Ok(LatticeBox::centered(n))
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

impl Opts {
    fn field(&self) -> Result<FieldParams, Failure> {
        Ok(FieldParams::new(self.d)?)
    }

    fn require_k(&self) -> Result<(), Failure> {
        if self.k < 2 {
            return Err(domain(format!("k = {} must be at least 2", self.k)));
        }
        Ok(())
    }

    fn window(&self) -> Result<LatticeBox, Failure> {
        let b = match self.window {
            Some(b) => b,
            None => centered(self.n)?,
        };
        check_area(&b)?;
        Ok(b)
    }

    fn format(&self, allowed: &[Format], default: Format) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            return Err(domain(format!("format {f:?} is not available for this command")));
        }
        Ok(f)
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes).map_err(|e| domain(format!("cannot write {}: {e}", path.display())))
}

/// Emits `doc` on stdout, or to `-o` with `summary` on stdout.
fn emit_json(opts: &Opts, doc: Value, summary: Value) -> Outcome {
    match &opts.output {
        Some(path) => {
            let mut text = serde_json::to_string_pretty(&doc).expect("serialisable");
            text.push('\n');
            write_file(path, text.as_bytes())?;
            print_json(&summary);
        }
        None => print_json(&doc),
    }
    Ok(())
}

fn points_json(set: &PointSet) -> Value {
    Value::Array(set.iter().map(|&(x, y)| json!([x, y])).collect())
}

fn matrix_json(m: &GLMatrix) -> Value {
    json!(m.entries())
}

fn box_json(b: &LatticeBox) -> Value {
    json!([b.x_min(), b.x_max(), b.y_min(), b.y_max()])
}

fn ideal_json(i: &PrimeIdealRef) -> Value {
    json!({ "p": i.p, "root": i.root, "norm": i.norm(), "label": i.to_string() })
}

/// Integers beyond `i64` are written as strings.
fn bigint_json(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `value = (q_num / q_den) · π^pi_pow / √sqrt_disc`, times `ζ(odd_zeta)`
/// when present.
fn exact_json(v: &ExactZetaValue) -> Value {
    let q = &v.rational;
    json!({
        "q_num": bigint_json(q.numer()),
        "q_den": bigint_json(q.denom()),
        "pi_pow": v.pi_power,
        "sqrt_disc": if v.inv_sqrt_disc { v.disc_abs } else { 1 },
        "odd_zeta": v.odd_zeta_factor,
    })
}

fn cmd_field(opts: &Opts) -> Outcome {
    let f = opts.field()?;
    let units = f.unit_group()?;
    let basis = match f.basis_kind() {
        BasisKind::SqrtBasis => "sqrt(d)",
        BasisKind::HalfBasis => "(1+sqrt(d))/2",
    };
    let (t1, t0) = f.min_poly();
    let ramified: Vec<u64> = quadfree::arith::factor(f.discriminant().unsigned_abs() as u128)?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let doc = json!({
        "d": f.d(),
        "d_K": f.discriminant(),
        "real": f.is_real(),
        "delta": basis,
        "min_poly": [1, -t1, -t0],
        "ramified_primes": ramified,
        "unit_group": {
            "torsion_order": units.torsion.len(),
            "torsion": units.torsion.iter().map(|u| json!([u.a, u.b])).collect::<Vec<_>>(),
            "fundamental": units.fundamental.map(|u| json!([u.a, u.b])),
            "order": if units.fundamental.is_none() { json!(units.torsion.len()) } else { Value::Null },
        },
    });
    emit_json(opts, doc.clone(), doc)
}

fn cmd_enumerate(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    let window = opts.window()?;
    let format = opts.format(&[Format::Json, Format::Csv, Format::Pgm], Format::Json)?;
    let set = enumerate_kfree(&f, opts.k, &window);
    let summary = json!({
        "d": f.d(), "k": opts.k, "box": box_json(&window), "count": set.len(),
    });
    match format {
        Format::Json => {
            let mut doc = summary.clone();
            doc["points"] = points_json(&set);
            emit_json(opts, doc, summary)
        }
        Format::Csv | Format::Pgm => {
            let bytes = if format == Format::Csv {
                set.to_csv().into_bytes()
            } else {
                set.to_pgm(&window)
            };
            let Some(path) = &opts.output else {
                return Err(domain("csv and pgm output need -o <path>"));
            };
            write_file(path, &bytes)?;
            print_json(&summary);
            Ok(())
        }
    }
}

fn cmd_density(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    let window = centered(opts.n)?;
    let count = quadfree::count_kfree(&f, opts.k, &window);
    let density = count as f64 / window.area() as f64;
    let doc = json!({
        "d": f.d(), "k": opts.k, "N": opts.n,
        "count": count, "area": window.area(),
        "density": density,
        "inverse_zeta": 1.0 / zeta_k_value(&f, opts.k)?,
    });
    emit_json(opts, doc.clone(), doc)
}

fn cmd_zeta(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    let euler = zeta_k_euler(&f, opts.k as f64, opts.prime_bound);
    let (exact, float) = match zeta_k_special(&f, opts.k) {
        Ok(v) => (exact_json(&v), v.float_shadow),
        Err(Error::ParityMismatch { .. }) => (Value::Null, euler),
        Err(e) => return Err(e.into()),
    };
    let doc = json!({
        "d": f.d(), "k": opts.k,
        "exact": exact,
        "float": float,
        "euler": euler,
        "prime_bound": opts.prime_bound,
    });
    emit_json(opts, doc.clone(), doc)
}

fn cmd_entropy(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    let window = centered(opts.n)?;
    let density = quadfree::count_kfree(&f, opts.k, &window) as f64 / window.area() as f64;
    let ln2 = std::f64::consts::LN_2;
    let exact = entropy_exact(&f, opts.k)?;
    let mut doc = json!({
        "d": f.d(), "k": opts.k, "N": opts.n,
        "density": density,
        "entropy_nats": ln2 * density,
        "entropy_exact": exact,
        "erdos_partial": erdos_sum(&f, opts.k, opts.prime_bound),
    });
    if opts.bits {
        doc["entropy_bits"] = json!(density);
        doc["entropy_exact_bits"] = json!(exact / ln2);
    }
    emit_json(opts, doc.clone(), doc)
}

fn cmd_stab(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    if !(0..=10).contains(&opts.entry_bound) {
        return Err(domain("entry bound must lie in 0..=10"));
    }
    let window = opts.window()?;
    let found = stabilizer_search(&f, opts.k, opts.entry_bound, &window);
    let predicted: Vec<GLMatrix> = predicted_stabilizer(&f, opts.unit_power_bound)?
        .into_iter()
        .filter(|m| m.max_abs_entry() <= opts.entry_bound as i128)
        .collect();
    let doc = json!({
        "d": f.d(), "k": opts.k, "entry_bound": opts.entry_bound,
        "box": box_json(&window),
        "count": found.len(),
        "matrices": found.iter().map(matrix_json).collect::<Vec<_>>(),
        "predicted_in_bound": predicted.iter().map(matrix_json).collect::<Vec<_>>(),
        "all_predicted": found.iter().all(|m| is_predicted_element(&f, m)),
        "matches_prediction": found == predicted,
    });
    let summary = json!({ "d": f.d(), "k": opts.k, "count": found.len() });
    emit_json(opts, doc, summary)
}

fn cmd_counterexample(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    let cx = counterexample_pattern(&f, opts.k, &opts.matrix, DEFAULT_WITNESS_RADIUS)?;
    let doc = json!({
        "d": f.d(), "k": opts.k,
        "matrix": matrix_json(&cx.matrix),
        "witness": [cx.witness.0, cx.witness.1],
        "violated_ideal": ideal_json(&cx.violated_ideal),
        "pattern": points_json(&cx.pattern),
        "image": points_json(&cx.image),
        "met_cosets": cx.met_cosets.iter().map(|&(x, y)| json!([x as i64, y as i64])).collect::<Vec<_>>(),
    });
    let summary = json!({
        "d": f.d(), "k": opts.k,
        "pattern_size": cx.pattern.len(),
        "violated_ideal": ideal_json(&cx.violated_ideal),
    });
    emit_json(opts, doc, summary)
}

fn cmd_render(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Pgm], Format::Pgm)?;
    let Some(path) = &opts.output else {
        return Err(domain("render needs -o <path>"));
    };
    let window = opts.window()?;
    let set = enumerate_kfree(&f, opts.k, &window);
    write_file(path, &set.to_pgm(&window))?;
    print_json(&json!({
        "d": f.d(), "k": opts.k, "box": box_json(&window),
        "width": window.width(), "height": window.height(), "count": set.len(),
    }));
    Ok(())
}

fn cmd_erdos(opts: &Opts) -> Outcome {
    opts.require_k()?;
    let f = opts.field()?;
    opts.format(&[Format::Json], Format::Json)?;
    let doc = json!({
        "d": f.d(), "k": opts.k, "prime_bound": opts.prime_bound,
        "erdos_partial": erdos_sum(&f, opts.k, opts.prime_bound),
    });
    emit_json(opts, doc.clone(), doc)
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var("QUADFREE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| domain(format!("QUADFREE_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| domain(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match &cli.command {
        Command::Field(o) => cmd_field(o),
        Command::Enumerate(o) => cmd_enumerate(o),
        Command::Density(o) => cmd_density(o),
        Command::Zeta(o) => cmd_zeta(o),
        Command::Entropy(o) => cmd_entropy(o),
        Command::Stab(o) => cmd_stab(o),
        Command::Counterexample(o) => cmd_counterexample(o),
        Command::Render(o) => cmd_render(o),
        Command::Erdos(o) => cmd_erdos(o),
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
