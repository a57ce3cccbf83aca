mod json;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nilorbit::catalog::{self, Entry};
use nilorbit::harmonic::{self, QuadratureConfig, TestFunction};
use nilorbit::io::{self, AlgebraFile};
use nilorbit::orbits::{orbit_chart, same_orbit, section_point, FlowSchedule};
use nilorbit::polarization::{crosscheck_polarizations, ludwig_zahir};
use nilorbit::scalar::parse_rational_list;
use nilorbit::stratification::{enumerate_layers, layer_polynomial};
use nilorbit::{Covector, Error, NilpotentLieAlgebra, Rational, Result};

/// Orbit-method computations for nilpotent Lie algebras.
///
/// ALGEBRA arguments are `catalog:<name>` or a path to a JSON definition
/// `{"name", "dim", "brackets": [{"i", "j", "terms": {"k": "p/q"}}]}`.
/// Covectors are comma-separated rationals in the dual basis Z1*..Zn*.
#[derive(Parser, Debug)]
#[command(name = "nilorbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads [default: available parallelism].
    #[arg(long, global = true, env = "NILORBIT_THREADS")]
    threads: Option<usize>,

    /// Single-line JSON.
    #[arg(long, global = true)]
    compact: bool,

    /// Write the JSON document to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// `catalog:<name>` or a JSON definition file.
    algebra: String,

    /// Parameter values `b1,...,bm` for a family.
    #[arg(long)]
    beta: Option<String>,
}

#[derive(Args, Debug)]
struct CovectorArg {
    #[command(flatten)]
    algebra: AlgebraArg,

    /// Covector coordinates, e.g. "0,0,1/2".
    #[arg(long, allow_hyphen_values = true)]
    l: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check triangularity and the Jacobi identity.
    Validate(AlgebraArg),
    /// Ludwig-Zahir index set of a covector.
    Index(CovectorArg),
    /// Full index-algorithm trace and the Vergne cross-check.
    Polarize(CovectorArg),
    /// Sample covectors and group them by index set.
    Layers {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pukanszky-section representative of the orbit of a covector.
    Section(CovectorArg),
    /// Whether two covectors lie on one coadjoint orbit.
    SameOrbit {
        #[command(flatten)]
        l: CovectorArg,
        /// Second covector.
        #[arg(long, allow_hyphen_values = true)]
        lp: String,
    },
    /// Symbolic parametrization of the orbit through a covector.
    Chart(CovectorArg),
    /// Pfaffian of the form ⟨l,[Zi,Zj]⟩ restricted to some labels.
    Pfaffian {
        #[command(flatten)]
        l: CovectorArg,
        /// Comma-separated labels [default: the index set of the covector].
        #[arg(long)]
        labels: Option<String>,
    },
    /// Numerical Fourier inversion on the Heisenberg group.
    #[command(name = "invert-h3")]
    InvertH3 {
        /// Test function, e.g. "gaussian:0,0,0:1" or "gaussian:0,0,0:1:1@100;-2@002+gaussian:1,0,0:0.5".
        #[arg(long = "f")]
        function: String,
        /// Sample points "x1,x2,x3;...".
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        grid: String,
        /// "eps,max": excluded radius around 0 and half-length of the λ window.
        #[arg(long)]
        lambda_range: Option<String>,
        /// Gauss-Legendre nodes per panel.
        #[arg(long)]
        order: Option<usize>,
        /// Order of the comparison rule.
        #[arg(long)]
        reference_order: Option<usize>,
        /// Fail unless every estimate is below tolerance·(1+|f(g)|).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// List the built-in algebras, or print one as a definition file.
    Catalog {
        name: Option<String>,
    },
}

fn load_entry(spec: &str) -> Result<Entry> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::lookup(name);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::InvalidInput(format!("{spec}: {e}")))?;
    io::parse_definition(&text)
}

fn load_algebra(arg: &AlgebraArg) -> Result<NilpotentLieAlgebra> {
    match (load_entry(&arg.algebra)?, &arg.beta) {
        (Entry::Algebra(a), None) => Ok(a),
        (Entry::Algebra(_), Some(_)) => Err(Error::InvalidInput("--beta given for a fixed algebra".into())),
        (Entry::Family(f), Some(b)) => f.evaluate(&parse_rational_list(b)?),
        (Entry::Family(f), None) => Err(Error::InvalidInput(format!(
            "{} is a family; pass --beta with {} values",
            f.name(),
            f.param_count()
        ))),
    }
}

fn parse_covector(alg: &NilpotentLieAlgebra, text: &str) -> Result<Covector<Rational>> {
    let l = Covector(parse_rational_list(text)?);
    alg.check_dim(l.len())?;
    Ok(l)
}

fn load_covector(arg: &CovectorArg) -> Result<(NilpotentLieAlgebra, Covector<Rational>)> {
    let alg = load_algebra(&arg.algebra)?;
    let l = parse_covector(&alg, &arg.l)?;
    Ok((alg, l))
}

fn parse_labels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad label {s:?}")))
        })
        .collect()
}

fn parse_floats(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Parse(format!("bad {what} value {s:?}")))
        })
        .collect()
}

fn parse_grid(text: &str) -> Result<Vec<harmonic::heisenberg::Point>> {
    text.split(';')
        .map(|p| match parse_floats(p, "grid")?[..] {
            [a, b, c] => Ok([a, b, c]),
            _ => Err(Error::Parse(format!("grid point {p:?} needs three coordinates"))),
        })
        .collect()
}

fn schedule(s: &FlowSchedule) -> Value {
    Value::Array(
        s.moves
            .iter()
            .map(|m| json!({"label": m.label, "param": json::rational(&m.param)}))
            .collect(),
    )
}

fn basis(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(json::rationals).collect())
}

fn validate(arg: &AlgebraArg) -> Result<Value> {
    Ok(match (load_entry(&arg.algebra)?, &arg.beta) {
        (Entry::Family(f), Some(b)) => {
            let a = f.evaluate(&parse_rational_list(b)?)?;
            json!({"valid": true, "dim": a.dim(), "name": a.name()})
        }
        (Entry::Family(f), None) => {
            json!({"valid": true, "dim": f.dim(), "name": f.name(), "params": f.param_count()})
        }
        (Entry::Algebra(a), None) => json!({"valid": true, "dim": a.dim(), "name": a.name()}),
        (Entry::Algebra(_), Some(_)) => {
            return Err(Error::InvalidInput("--beta given for a fixed algebra".into()))
        }
    })
}

fn index(arg: &CovectorArg) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let i = nilorbit::stratification::index_of(&alg, &l)?;
    Ok(json!({
        "algebra": alg.name(),
        "l": json::covector(&l),
        "index_set": json::index_set(&i),
        "orbit_dim": i.size(),
    }))
}

fn polarize(arg: &CovectorArg) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let trace = ludwig_zahir(&alg, &l)?;
    let check = crosscheck_polarizations(&alg, &l)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "j": s.j,
                "k": s.k,
                "c": json::rational(&s.c),
                "x": json::vector(&s.x),
                "y": json::vector(&s.y),
                "basis": s.next_basis.iter().map(|b| json!({"label": b.label, "vector": json::vector(&b.vector)})).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "algebra": alg.name(),
        "l": json::covector(&l),
        "index_set": json::index_set(&trace.index_set),
        "steps": steps,
        "polarization": basis(trace.polarization.basis()),
        "stabilizer": basis(trace.stabilizer.basis()),
        "vergne": basis(check.vergne.basis()),
        "agree": check.agree,
    }))
}

fn layers(arg: &AlgebraArg, samples: usize, seed: u64) -> Result<Value> {
    let alg = load_algebra(arg)?;
    let e = enumerate_layers(&alg, samples, seed)?;
    let layers = e
        .layers
        .iter()
        .map(|layer| {
            let d = layer_polynomial(&alg, &layer.index_set)?;
            Ok(json!({
                "index_set": json::index_set(&layer.index_set),
                "witness": json::covector(&layer.witness),
                "count": layer.count,
                "layer_polynomial": d.polynomial.to_string(),
                "c_values": d.c_values.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "algebra": alg.name(),
        "samples": e.samples,
        "seed": e.seed,
        "layers": layers,
    }))
}

fn section(arg: &CovectorArg) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let s = section_point(&alg, &l)?;
    Ok(json!({
        "algebra": alg.name(),
        "l": json::covector(&l),
        "index_set": json::index_set(&s.index_set),
        "section_point": json::covector(&s.l_section),
        "schedule": schedule(&s.schedule),
    }))
}

fn same(arg: &CovectorArg, lp: &str) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let lp = parse_covector(&alg, lp)?;
    Ok(json!({"same_orbit": same_orbit(&alg, &l, &lp)?}))
}

fn chart(arg: &CovectorArg) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let c = orbit_chart(&alg, &l)?;
    Ok(json!({
        "algebra": alg.name(),
        "l": json::covector(&l),
        "index_set": json::index_set(&c.index_set),
        "variables": c.ring.to_vec(),
        "z_labels": c.z_labels,
        "functions": c.functions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "polynomial_in_z": c.is_polynomial_in_z(),
        "shape_holds": c.shape_holds(),
    }))
}

fn pfaffian(arg: &CovectorArg, labels: Option<&str>) -> Result<Value> {
    let (alg, l) = load_covector(arg)?;
    let labels = match labels {
        Some(t) => parse_labels(t)?,
        None => nilorbit::stratification::index_of(&alg, &l)?.sorted_labels(),
    };
    let form = harmonic::SkewForm::new(&alg, &l, &labels)?;
    let pf = form.pfaffian()?;
    Ok(json!({
        "algebra": alg.name(),
        "l": json::covector(&l),
        "labels": labels,
        "matrix": basis(&form.matrix.row_vectors()),
        "determinant": json::rational(&form.determinant()),
        "pfaffian": json::rational(&pf),
    }))
}

#[allow(clippy::too_many_arguments)]
fn invert(
    function: &str,
    grid: &str,
    lambda_range: Option<&str>,
    order: Option<usize>,
    reference_order: Option<usize>,
    tolerance: Option<f64>,
) -> Result<Value> {
    let f = TestFunction::parse(function)?;
    let points = parse_grid(grid)?;
    let mut cfg = QuadratureConfig::default();
    if let Some(o) = order {
        cfg.order = o;
    }
    if let Some(o) = reference_order {
        cfg.reference_order = o;
    }
    if let Some(r) = lambda_range {
        match parse_floats(r, "lambda-range")?[..] {
            [eps, max] => {
                cfg.lambda_cut = eps;
                cfg.lambda_max = Some(max);
            }
            _ => return Err(Error::Parse("--lambda-range takes \"eps,max\"".into())),
        }
    }
    let r = harmonic::inversion(&catalog::h3(), &f, &points, &cfg, tolerance)?;
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|s| {
            json!({
                "g": json::floats(&s.g),
                "f": json::float(s.f),
                "reconstructed": json::float(s.reconstructed),
                "imaginary": json::float(s.imaginary),
                "error": json::float(s.error),
                "estimate": json::float(s.quadrature_estimate),
                "cut_bound": json::float(s.cut_bound),
            })
        })
        .collect();
    Ok(json!({
        "function": f.spec(),
        "kappa": json::float(r.kappa),
        "quadrature": {
            "sigmas": json::float(cfg.sigmas),
            "panel_density": json::float(cfg.panel_density),
            "order": cfg.order,
            "reference_order": cfg.reference_order,
            "lambda_cut": json::float(cfg.lambda_cut),
            "lambda_max": cfg.lambda_max.map(json::float),
            "nodes": {"lambda": r.nodes.lambda, "u": r.nodes.u, "b": r.nodes.b, "c": r.nodes.c},
        },
        "samples": samples,
        "max_error": json::float(r.max_error()),
        "max_estimate": json::float(r.max_estimate()),
    }))
}

fn catalog_verb(name: Option<&str>) -> Result<Value> {
    match name {
        None => Ok(json!({"entries": catalog::NAMES})),
        Some(n) => {
            let file = AlgebraFile::from_entry(&catalog::lookup(n)?);
            Ok(serde_json::to_value(file).expect("definition files serialize"))
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Value> {
    match cmd {
        Command::Validate(a) => validate(a),
        Command::Index(a) => index(a),
        Command::Polarize(a) => polarize(a),
        Command::Layers { algebra, samples, seed } => layers(algebra, *samples, *seed),
        Command::Section(a) => section(a),
        Command::SameOrbit { l, lp } => same(l, lp),
        Command::Chart(a) => chart(a),
        Command::Pfaffian { l, labels } => pfaffian(l, labels.as_deref()),
        Command::InvertH3 {
            function,
            grid,
            lambda_range,
            order,
            reference_order,
            tolerance,
        } => invert(function, grid, lambda_range.as_deref(), *order, *reference_order, *tolerance),
        Command::Catalog { name } => catalog_verb(name.as_deref()),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let v = json::usage_error("UsageError", e.render().to_string().trim());
            eprint!("{}", json::render(&v, false));
            return ExitCode::from(2);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let v = json::usage_error("UsageError", "--threads must be at least 1");
            eprint!("{}", json::render(&v, cli.compact));
            return ExitCode::from(2);
        }
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(p) => p.install(|| dispatch(&cli.command)),
        Err(e) => Err(Error::InvalidInput(format!("thread pool: {e}"))),
    };
    match result {
        Ok(body) => {
            let text = json::render(&json::document(body), cli.compact);
            if let Err(e) = emit(&text, cli.out.as_ref()) {
                let v = json::usage_error("IoError", &e.to_string());
                eprint!("{}", json::render(&v, cli.compact));
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let text = json::render(&json::error(&e), cli.compact);
            // Errors go to stdout as well so scripts can parse one stream.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
