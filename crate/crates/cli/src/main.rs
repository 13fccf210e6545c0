use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kacalg::analysis::{classify_iso, Verdict};
use kacalg::duality::dualize;
use kacalg::hopf::{cocentre_basis, haar_state, kappa_symmetric_basis, verify_hopf, HopfAlgebra};
use kacalg::io::MapSpecFile;
use kacalg::ktheory::{build_tower, fusion_ring, k0_states, verify_box_convolve, DEFAULT_CAP};
use kacalg::linalg::LinearMap;
use kacalg::scalar::{Scalar, CF64, DEFAULT_TOL};
use kacalg::{Error, Exact, Result};

mod fixtures;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "kacalg", version, about = "Checks and pipelines for finite-dimensional Kac algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,
    /// Comparison tolerance in float mode.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Axioms, Haar state, co-centre and κ-symmetric part.
    Verify { algebra: String },
    /// Fusion ring and K₀ states.
    Fusion {
        algebra: String,
        #[arg(long)]
        check_box_convolve: bool,
    },
    /// Classify a *-isomorphism between two algebras.
    Classify { algebra_a: String, algebra_b: String, map: PathBuf },
    /// Tensor-power tower over a base algebra.
    Tower {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Fail instead of going combinatorial above the cap.
        #[arg(long)]
        force: bool,
    },
    /// Write the bundled fixture files.
    Fixtures { dir: PathBuf },
}

impl Command {
    fn echo(&self) -> Value {
        match self {
            Command::Verify { algebra } => json!({ "name": "verify", "algebra": algebra }),
            Command::Fusion { algebra, check_box_convolve } => {
                json!({ "name": "fusion", "algebra": algebra, "check_box_convolve": check_box_convolve })
            }
            Command::Classify { algebra_a, algebra_b, map } => {
                json!({ "name": "classify", "algebra_a": algebra_a, "algebra_b": algebra_b, "map": map })
            }
            Command::Tower { base, levels, cap, force } => {
                json!({ "name": "tower", "base": base, "levels": levels, "cap": cap, "force": force })
            }
            Command::Fixtures { dir } => json!({ "name": "fixtures", "dir": dir }),
        }
    }
}

/// Scalar-specific loading: float mode tags inputs with the tolerance.
trait ModeScalar: Scalar {
    fn prepare(h: HopfAlgebra<Self>, tol: f64) -> HopfAlgebra<Self>;
    fn prepare_map(f: LinearMap<Self>, tol: f64) -> LinearMap<Self>;
}

impl ModeScalar for Exact {
    fn prepare(h: HopfAlgebra<Self>, _: f64) -> HopfAlgebra<Self> {
        h
    }
    fn prepare_map(f: LinearMap<Self>, _: f64) -> LinearMap<Self> {
        f
    }
}

impl ModeScalar for CF64 {
    fn prepare(h: HopfAlgebra<Self>, tol: f64) -> HopfAlgebra<Self> {
        h.with_tolerance(tol)
    }
    fn prepare_map(f: LinearMap<Self>, tol: f64) -> LinearMap<Self> {
        f.with_tolerance(tol)
    }
}

struct Outcome {
    pass: bool,
    result: Value,
}

fn load<S: ModeScalar>(cli: &Cli, name: &str) -> Result<HopfAlgebra<S>> {
    let spec = fixtures::resolve(name)?;
    Ok(S::prepare(spec.to_hopf(cli.seed)?, cli.tol))
}

fn values<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

fn verify<S: ModeScalar>(cli: &Cli, name: &str) -> Result<Outcome> {
    let h = load::<S>(cli, name)?;
    let axioms = verify_hopf(&h);
    if !axioms.all_pass() {
        return Ok(Outcome { pass: false, result: json!({ "axioms": axioms }) });
    }
    let haar = haar_state(&h)?;
    let cocentre = cocentre_basis(&h)?;
    let ks = kappa_symmetric_basis(&h)?;
    Ok(Outcome {
        pass: true,
        result: json!({
            "axioms": axioms,
            "haar": values(&haar),
            "cocentre_dim": cocentre.len(),
            "kappa_symmetric": {
                "real_dim": ks.real_dim,
                "jordan_closed": ks.jordan_closed,
                "product_closed": ks.product_closed,
            },
        }),
    })
}

fn fusion<S: ModeScalar>(cli: &Cli, name: &str, boxconv: bool) -> Result<Outcome> {
    let h = load::<S>(cli, name)?;
    let ring = fusion_ring(&h)?;
    let k0 = k0_states(&h)?;
    let ring_check = ring.verify();
    let mut result = json!({
        "shape": h.shape().dims(),
        "fusion": ring.to_json(),
        "ring_axioms": ring_check.clone().err(),
        "k0": k0.to_json(),
    });
    let mut pass = ring_check.is_ok();
    if boxconv {
        let report = verify_box_convolve(&dualize(&h, cli.seed)?, &ring);
        pass &= report.all_pass();
        result["box_convolve"] = report.to_json();
    }
    Ok(Outcome { pass, result })
}

fn classify<S: ModeScalar>(cli: &Cli, a: &str, b: &str, map: &Path) -> Result<Outcome> {
    let (ha, hb) = (load::<S>(cli, a)?, load::<S>(cli, b)?);
    let f = S::prepare_map(MapSpecFile::load(map)?.to_map()?, cli.tol);
    if f.domain_dim() != ha.dim() || f.codomain_dim() != hb.dim() {
        return Err(Error::Shape(format!(
            "map is {}→{}, algebras have dimensions {} and {}",
            f.domain_dim(),
            f.codomain_dim(),
            ha.dim(),
            hb.dim()
        )));
    }
    let report = classify_iso(&f, &ha, &hb, cli.seed)?;
    let pass = matches!(report.verdict, Verdict::HopfIso | Verdict::HopfCoAntiIso) && report.evidence_recheck;
    Ok(Outcome { pass, result: serde_json::to_value(report).expect("report serializes") })
}

fn tower<S: ModeScalar>(cli: &Cli, base: &str, levels: usize, cap: usize, force: bool) -> Result<Outcome> {
    let h = load::<S>(cli, base)?;
    let t = build_tower(&h, levels, cap, force)?;
    let verified: Vec<Option<bool>> =
        t.levels.iter().map(|l| l.hopf.as_ref().map(|h| verify_hopf(h).all_pass())).collect();
    let pass = t.dims_consistent()
        && t.connecting_hopf.iter().all(|&c| c)
        && t.ring_consistent.iter().all(|c| c.unwrap_or(true))
        && verified.iter().all(|v| v.unwrap_or(true));
    let mut result = t.to_json();
    result["levels_verified"] = json!(verified);
    Ok(Outcome { pass, result })
}

fn dispatch<S: ModeScalar>(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { algebra } => verify::<S>(cli, algebra),
        Command::Fusion { algebra, check_box_convolve } => fusion::<S>(cli, algebra, *check_box_convolve),
        Command::Classify { algebra_a, algebra_b, map } => classify::<S>(cli, algebra_a, algebra_b, map),
        Command::Tower { base, levels, cap, force } => tower::<S>(cli, base, *levels, *cap, *force),
        Command::Fixtures { dir } => {
            let written = fixtures::write_all(dir)?;
            Ok(Outcome { pass: true, result: json!({ "written": written }) })
        }
    }
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Precondition { name, detail } => json!({ "kind": "precondition", "name": name, "detail": detail }),
        Error::Parse { context, message } => json!({ "kind": "parse", "context": context, "message": message }),
        other => json!({ "kind": "structural", "message": other.to_string() }),
    }
}

/// Run a parsed command: exit code and the JSON report text.
fn execute(cli: &Cli) -> (u8, String) {
    let start = Instant::now();
    let outcome = match cli.mode {
        Mode::Exact => dispatch::<Exact>(cli),
        Mode::Float => dispatch::<CF64>(cli),
    };
    let mut report = json!({
        "command": cli.command.echo(),
        "seed": cli.seed,
        "mode": match cli.mode {
            Mode::Exact => json!({ "name": "exact" }),
            Mode::Float => json!({ "name": "float", "tol": cli.tol }),
        },
    });
    let code = match &outcome {
        Ok(o) => {
            report["pass"] = json!(o.pass);
            report["result"] = o.result.clone();
            u8::from(!o.pass)
        }
        Err(e) => {
            report["pass"] = json!(false);
            report["error"] = error_json(e);
            // a refused precondition is a failed mathematical check
            if matches!(e, Error::Precondition { .. }) {
                1
            } else {
                2
            }
        }
    };
    if cli.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    (code, serde_json::to_string_pretty(&report).expect("report serializes"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("kacalg: {e}");
            return ExitCode::from(2);
        }
    }
    let (code, text) = execute(&cli);
    println!("{text}");
    if code != 0 {
        eprintln!("kacalg: {}", if code == 1 { "check failed" } else { "input error" });
    }
    ExitCode::from(code)
}
