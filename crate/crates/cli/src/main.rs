//! `cskit`: metric and signature queries, isomorphism checks, screw
//! trajectories and the property-suite runner.
//!
//! Exit codes: 0 success, 1 property failure, 2 usage, 3 domain or
//! degeneracy, 4 I/O.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cskit_core::check::{self, CheckConfig, Suite};
use cskit_core::isomaps::{hom_residual, map_by_name, membership_scan, MAP_NAMES};
use cskit_core::lie::{builtin, BilinearForm, LieAlgebra};
use cskit_core::linalg::Mat;
use cskit_core::metrics::{
    cotangent_metric, eigenvalues, h3_metric, killing_normal_cotangent_frame, signature, so31_metric,
    CotangentMetricParams, H3MetricParams,
};
use cskit_core::screws::{geodesic_sample, linspace, screw_decompose, trajectory_csv, twist_exp, Space, Twist};
use cskit_core::Error;

const HOM_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "cskit",
    version,
    about = "Cartan-Schouten metrics, bundle groups, quaternionic covers and screws"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "CSKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a metric matrix with its signature and eigenvalues.
    Metric(MetricArgs),
    /// Print only the signature of a metric.
    Signature(MetricArgs),
    /// Centralizer of the adjoint representation and, in dimension 2, J.
    Centralizer {
        /// Built-in algebra name (so3, su2, sl2, so21, so31, h3).
        name: Option<String>,
        /// Algebra JSON file instead of a built-in.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Homomorphism residual of a registered map.
    IsoVerify {
        map: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Sample exp(t xi) and write the trajectory as CSV.
    Geodesic {
        /// se3 or se21.
        space: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 0.0])]
        omega: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 0.0])]
        v: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t1: f64,
        /// Number of samples, endpoints included.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run property suites: algebra, quat, covers, metrics, screws or all.
    Check {
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Tolerance override NAME=VALUE; NAME is a check, a suite or `*`.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
    },
    /// Validate an algebra JSON file and summarize it.
    AlgebraLoad { file: PathBuf },
}

#[derive(Args, Clone)]
struct MetricArgs {
    /// t*so3, t*su2, t*sl2, t*so21, t*so31, so31 or h3.
    group: String,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Chart point x,y,z for h3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    at: Option<Vec<f64>>,
}

enum Failure {
    Property(String),
    Usage(String),
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Property(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Property(m) | Failure::Usage(m) | Failure::Domain(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Failure::Property(report) = &f {
                print!("{report}");
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.format == Format::Csv && !matches!(cli.cmd, Command::Geodesic { .. }) {
        return Err(Failure::Usage("--format csv applies to geodesic only".into()));
    }
    match &cli.cmd {
        Command::Metric(args) => cmd_metric(cli, args, true),
        Command::Signature(args) => cmd_metric(cli, args, false),
        Command::Centralizer { name, file } => cmd_centralizer(cli, name.as_deref(), file.as_ref()),
        Command::IsoVerify { map, trials } => cmd_iso_verify(cli, map, *trials),
        Command::Geodesic {
            space,
            omega,
            v,
            t0,
            t1,
            steps,
            out,
        } => cmd_geodesic(cli, space, omega, v, (*t0, *t1, *steps), out.as_ref()),
        Command::Check { suite, trials, tol } => cmd_check(cli, suite, *trials, tol),
        Command::AlgebraLoad { file } => cmd_algebra_load(cli, file),
    }
}

/// 12 significant digits, shortest form.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if (1e-4..1e12).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn text_matrix(m: &Mat<f64>) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| num(x)).collect())
        .collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(s, "  [{}]", line.join(", "));
    }
    s
}

/// Matrix rows for JSON, with signed zeros cleared.
fn rows(m: &Mat<f64>) -> Vec<Vec<f64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x + 0.0).collect())
        .collect()
}

fn json_out(v: Value) -> String {
    format!("{}\n", serde_json::to_string(&v).expect("json"))
}

fn param(v: Option<f64>, name: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{name}")))
}

struct MetricOut {
    basis: Vec<String>,
    frame: &'static str,
    form: BilinearForm<f64>,
}

fn build_metric(args: &MetricArgs) -> Result<MetricOut, Failure> {
    let key = args.group.to_ascii_lowercase().replace(['(', ')', ','], "");
    if let Some(base) = key.strip_prefix("t*") {
        let alg = builtin::by_name::<f64>(base)?;
        let params = if alg.centralizer_basis().len() == 2 {
            CotangentMetricParams::Even {
                s1: args.s1.unwrap_or(0.0),
                s2: args.s2.unwrap_or(0.0),
                t1: args.t1.unwrap_or(0.0),
                t2: args.t2.unwrap_or(0.0),
            }
        } else {
            CotangentMetricParams::Odd {
                s: args.s.unwrap_or(0.0),
                t: param(args.t, "t")?,
            }
        };
        let j = match params {
            CotangentMetricParams::Even { .. } => Some(alg.complex_structure_j()?),
            CotangentMetricParams::Odd { .. } => None,
        };
        let mu = cotangent_metric(&alg, params, j.as_ref())?;
        let (frame, _) = killing_normal_cotangent_frame(&alg)?;
        let n = alg.dim();
        let basis = (1..=n)
            .map(|i| format!("f{i}"))
            .chain((1..=n).map(|i| format!("f{i}*")))
            .collect();
        return Ok(MetricOut {
            basis,
            frame: "killing-normal",
            form: mu.change_basis(&frame),
        });
    }
    match key.as_str() {
        "so31" => {
            let form = so31_metric(args.k1.unwrap_or(0.0), args.k2.unwrap_or(0.0))?;
            let basis = builtin::so31::<f64>().labels().to_vec();
            Ok(MetricOut {
                basis,
                frame: "fixed",
                form,
            })
        }
        "h3" => {
            let p = H3MetricParams::new(
                param(args.a, "a")?,
                param(args.b, "b")?,
                param(args.c, "c")?,
                param(args.d, "d")?,
                param(args.e, "e")?,
                param(args.m, "m")?,
            );
            let at = args.at.clone().unwrap_or_else(|| vec![0.0; 3]);
            if at.len() != 3 {
                return Err(Failure::Usage("--at takes x,y,z".into()));
            }
            let form = BilinearForm::new(h3_metric(p)?.at(&at));
            Ok(MetricOut {
                basis: vec!["dx".into(), "dy".into(), "dz".into()],
                frame: "chart",
                form,
            })
        }
        _ => Err(Failure::Usage(format!("unknown group {}", args.group))),
    }
}

fn cmd_metric(cli: &Cli, args: &MetricArgs, full: bool) -> Outcome {
    let out = build_metric(args)?;
    let sig = signature(&out.form);
    let ev = eigenvalues(&out.form);
    if cli.format == Format::Json {
        let v = if full {
            json!({
                "seed": cli.seed,
                "group": args.group,
                "frame": out.frame,
                "basis": out.basis,
                "matrix": rows(out.form.matrix()),
                "signature": sig,
                "eigenvalues": ev,
            })
        } else {
            json!({"seed": cli.seed, "group": args.group, "neg": sig.neg, "pos": sig.pos, "zero": sig.zero})
        };
        return Ok(json_out(v));
    }
    let mut s = format!("seed {}\n", cli.seed);
    if full {
        let _ = writeln!(
            s,
            "metric {} ({} basis: {})",
            args.group,
            out.frame,
            out.basis.join(" ")
        );
        s.push_str(&text_matrix(out.form.matrix()));
        let _ = writeln!(
            s,
            "eigenvalues {}",
            ev.iter().map(|&x| num(x)).collect::<Vec<_>>().join(" ")
        );
    }
    let _ = writeln!(s, "signature neg {} pos {} zero {}", sig.neg, sig.pos, sig.zero);
    Ok(s)
}

fn load_algebra(file: &PathBuf) -> Result<LieAlgebra<f64>, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{}: {e}", file.display())))?;
    Ok(LieAlgebra::from_json(&text)?)
}

fn cmd_centralizer(cli: &Cli, name: Option<&str>, file: Option<&PathBuf>) -> Outcome {
    let (label, alg) = match (name, file) {
        (Some(n), None) => (n.to_string(), builtin::by_name::<f64>(n)?),
        (None, Some(f)) => (f.display().to_string(), load_algebra(f)?),
        _ => return Err(Failure::Usage("give exactly one of NAME or --file".into())),
    };
    let basis = alg.centralizer_basis();
    let j = if basis.len() == 2 {
        alg.complex_structure_j().ok()
    } else {
        None
    };
    if cli.format == Format::Json {
        return Ok(json_out(json!({
            "seed": cli.seed,
            "algebra": label,
            "dim": basis.len(),
            "basis": basis.iter().map(|b| rows(b.matrix())).collect::<Vec<_>>(),
            "j": j.as_ref().map(|j| rows(j.matrix())),
        })));
    }
    let mut s = format!("seed {}\ncentralizer of {label}: dimension {}\n", cli.seed, basis.len());
    if let Some(j) = j {
        s.push_str("J =\n");
        s.push_str(&text_matrix(j.matrix()));
    }
    Ok(s)
}

fn cmd_iso_verify(cli: &Cli, name: &str, trials: usize) -> Outcome {
    let map = map_by_name(name)
        .map_err(|_| Failure::Usage(format!("unknown map {name}; known: {}", MAP_NAMES.join(", "))))?;
    let r = hom_residual(map.as_ref(), trials, cli.seed);
    let member = membership_scan(map.as_ref(), trials, cli.seed);
    let passed = r < HOM_TOL;
    let body = if cli.format == Format::Json {
        json_out(json!({
            "seed": cli.seed,
            "map": name,
            "trials": trials,
            "residual": r,
            "membership": member,
            "tolerance": HOM_TOL,
            "passed": passed,
        }))
    } else {
        format!(
            "seed {}\n{} {name}: residual {} over {trials} trials (tolerance {}), membership {}\n",
            cli.seed,
            if passed { "PASS" } else { "FAIL" },
            num(r),
            num(HOM_TOL),
            num(member)
        )
    };
    if passed {
        Ok(body)
    } else {
        Err(Failure::Property(body))
    }
}

fn cmd_geodesic(
    cli: &Cli,
    space: &str,
    omega: &[f64],
    v: &[f64],
    (t0, t1, steps): (f64, f64, usize),
    out: Option<&PathBuf>,
) -> Outcome {
    let space: Space = space
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown space {space}; use se3 or se21")))?;
    if omega.len() != 3 || v.len() != 3 {
        return Err(Failure::Usage(
            "--omega and --v take three comma-separated values".into(),
        ));
    }
    if steps == 0 {
        return Err(Failure::Usage("--steps must be positive".into()));
    }
    let xi = Twist::new([omega[0], omega[1], omega[2]], [v[0], v[1], v[2]], space);
    let ts = linspace(t0, t1, steps);
    let curve = geodesic_sample(&cskit_core::groups::GroupElement::identity(space.group()), &xi, &ts)?;
    let screw = match space {
        Space::Euclidean => Some(screw_decompose(&twist_exp(&xi, 1.0)?)?),
        Space::Minkowski => None,
    };
    let data = if cli.format == Format::Json {
        json_out(json!({
            "seed": cli.seed,
            "space": space.name(),
            "t": ts,
            "matrices": curve.iter().map(|g| rows(g.matrix())).collect::<Vec<_>>(),
            "screw": screw.map(|s| s.to_json()),
        }))
    } else {
        trajectory_csv(&ts, &curve)
    };
    let mut summary = format!(
        "seed {}\n{} samples of exp(t xi) on {space}, t in [{}, {}]\n",
        cli.seed,
        steps,
        num(t0),
        num(t1)
    );
    if let Some(sp) = screw {
        let v3 = |a: [f64; 3]| format!("({}, {}, {})", num(a[0]), num(a[1]), num(a[2]));
        let _ = writeln!(
            summary,
            "screw at t = 1: angle {} pitch {} displacement {} axis {} through {}{}",
            num(sp.angle),
            num(sp.pitch),
            num(sp.displacement),
            v3(sp.axis_dir),
            v3(sp.axis_point),
            if sp.pure_translation { " (pure translation)" } else { "" }
        );
    }
    match out {
        Some(path) => {
            std::fs::write(path, data).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let _ = writeln!(summary, "wrote {}", path.display());
            Ok(summary)
        }
        None => {
            eprint!("{summary}");
            Ok(data)
        }
    }
}

fn cmd_check(cli: &Cli, suite: &str, trials: Option<usize>, tol: &[String]) -> Outcome {
    let suites = Suite::parse_list(suite).map_err(|_| {
        Failure::Usage(format!(
            "unknown suite {suite}; use algebra, quat, covers, metrics, screws or all"
        ))
    })?;
    let mut cfg = CheckConfig {
        trials,
        ..CheckConfig::new(cli.seed)
    };
    for entry in tol {
        let (k, v) = entry
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--tol expects NAME=VALUE, got {entry}")))?;
        let v: f64 = v.parse().map_err(|_| Failure::Usage(format!("bad tolerance {v}")))?;
        cfg = cfg.with_override(k, v).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let report = check::run(&suites, &cfg)?;
    let body = if cli.format == Format::Json {
        json_out(report.to_json())
    } else {
        report.to_text()
    };
    if report.passed() {
        Ok(body)
    } else {
        Err(Failure::Property(body))
    }
}

fn cmd_algebra_load(cli: &Cli, file: &PathBuf) -> Outcome {
    let alg = load_algebra(file)?;
    let killing = alg.killing_form();
    let sig = signature(&killing);
    let centralizer = alg.centralizer_basis().len();
    let derived = alg.derived_dim();
    if cli.format == Format::Json {
        return Ok(json_out(json!({
            "seed": cli.seed,
            "dim": alg.dim(),
            "labels": alg.labels(),
            "jacobi_residual": alg.jacobi_residual(),
            "killing": {"basis": alg.labels(), "matrix": rows(killing.matrix())},
            "killing_signature": sig,
            "centralizer_dim": centralizer,
            "derived_dim": derived,
        })));
    }
    let mut s = format!(
        "seed {}\nalgebra of dimension {} ({})\n",
        cli.seed,
        alg.dim(),
        alg.labels().join(" ")
    );
    let _ = writeln!(s, "jacobi residual {}", num(alg.jacobi_residual()));
    s.push_str("killing form\n");
    s.push_str(&text_matrix(killing.matrix()));
    let _ = writeln!(s, "killing signature neg {} pos {} zero {}", sig.neg, sig.pos, sig.zero);
    let _ = writeln!(s, "centralizer dimension {centralizer}, derived dimension {derived}");
    Ok(s)
}
