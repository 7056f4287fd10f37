//! `symconf`: symmetries of the flat conformal model, Weyl prolongations and
//! extension checks from the command line.
//!
//! Exit status: 0 when every check of the command passes, 1 when a check
//! fails, 2 on invalid input.

use std::path::{Path, PathBuf};
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use symconf::cases;
use symconf::extension::{self, Extension};
use symconf::field::{validate_field, DEFAULT_D};
use symconf::flatmodel::{self, NullLine, Signature};
use symconf::io::{self, ExtensionFile, ProblemInput, ReportDto, WeylDto};
use symconf::linalg::{AffineSubspace, Vector};
use symconf::symmetry::{self, SymmetryReport};
use symconf::weyl;
use symconf::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "symconf", version, about = "Exact symmetries of conformal geometries")]
struct Cli {
    /// Number of positive directions.
    #[arg(long, global = true)]
    p: Option<usize>,
    /// Number of negative directions.
    #[arg(long, global = true)]
    q: Option<usize>,
    /// Scalars live in Q(sqrt d); the literal `r` stands for sqrt d.
    #[arg(long, global = true)]
    d: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit of the base point relative to the two removed points.
    Classify(PointArgs),
    /// All symmetries at the base point preserving or swapping the removed points.
    Solve(PointArgs),
    /// Algebraic Weyl tensors.
    Weyl {
        #[command(subcommand)]
        action: WeylCommand,
    },
    /// Extensions of homogeneous pairs.
    Extension {
        #[command(subcommand)]
        action: ExtensionCommand,
    },
    /// Recompute the six removed-points examples and compare with the reference sets.
    ReproducePaper,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// JSON file with p, q, d, u, v and optional w.
    #[arg(long, conflicts_with_all = ["u", "v", "w"])]
    input: Option<PathBuf>,
    /// First removed point, e.g. `0,1,0,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Second removed point.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Base point (default e_0).
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WeylCommand {
    /// Dimension of the space of Weyl tensors, checked against the counting formula.
    BasisDim,
    /// First prolongation of the annihilator of a Weyl tensor.
    Prolongation {
        /// Seed for a random nonzero Weyl tensor.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this tensor (JSON components) instead of a random one.
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ExtensionSource {
    /// Extension file (JSON).
    #[arg(long, conflicts_with = "flat")]
    file: Option<PathBuf>,
    /// Use the flat model extension for the global signature.
    #[arg(long)]
    flat: bool,
}

#[derive(Subcommand, Debug)]
enum ExtensionCommand {
    /// Check the three extension conditions.
    Validate(ExtensionSource),
    /// Curvature on all pairs of m-basis elements.
    Curvature(ExtensionSource),
    /// Whether Ad_{exp Y} alpha(k) is stable under Ad_{s_0}.
    Criterion {
        #[command(flatten)]
        source: ExtensionSource,
        /// Covector Y (default 0).
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Scan integer covectors with entries in [-R, R] instead of a single Y.
        #[arg(long, conflicts_with = "y")]
        search: Option<i64>,
    },
    /// Write the flat model extension file for the global signature.
    ExportFlat,
}

struct Config {
    p: Option<usize>,
    q: Option<usize>,
    d: u64,
    d_given: bool,
}

impl Config {
    fn signature(&self) -> Result<Signature> {
        match (self.p, self.q) {
            (Some(p), Some(q)) => Signature::new(p, q),
            _ => Err(Error::Format("--p and --q are required for this command".into())),
        }
    }

    /// Reconciles a file's parameters with the global flags.
    fn check_file(&self, p: usize, q: usize, d: u64) -> Result<()> {
        let clash = |flag: Option<usize>, file: usize| flag.is_some_and(|f| f != file);
        if clash(self.p, p) || clash(self.q, q) || (self.d_given && self.d != d) {
            return Err(Error::Format(format!(
                "flags disagree with the input file (file has p={p}, q={q}, d={d})"
            )));
        }
        Ok(())
    }
}

/// Passed checks, plus the text and JSON renderings.
struct Output {
    ok: bool,
    text: String,
    json: Value,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn inline_vector(name: &str, text: &str, d: u64) -> Result<Vector> {
    io::parse_vector(text, d).map_err(|e| Error::Format(format!("--{name}: {e}")))
}

fn load_problem(cfg: &Config, args: &PointArgs) -> Result<io::Problem> {
    if let Some(path) = &args.input {
        let input = with_path(path, ProblemInput::from_json(&read(path)?))?;
        cfg.check_file(input.p, input.q, input.d)?;
        return with_path(path, input.resolve());
    }
    let sig = cfg.signature()?;
    let (Some(u), Some(v)) = (&args.u, &args.v) else {
        return Err(Error::Format("give --u and --v, or --input".into()));
    };
    let line = |name: &str, text: &str| -> Result<NullLine> {
        NullLine::new(&sig, inline_vector(name, text, cfg.d)?).map_err(|e| Error::Format(format!("--{name}: {e}")))
    };
    Ok(io::Problem {
        sig,
        d: cfg.d,
        u: line("u", u)?,
        v: line("v", v)?,
        w: match &args.w {
            Some(w) => line("w", w)?,
            None => NullLine::origin(&sig),
        },
    })
}

fn show(v: &[symconf::Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_literal()).collect();
    format!("({})", parts.join(", "))
}

fn describe_set(set: &AffineSubspace) -> String {
    match (set.dim(), set.base_point()) {
        (None, _) | (_, None) => "EMPTY".into(),
        (Some(0), Some(b)) => format!("unique Z = {}", show(b)),
        (Some(k), Some(b)) => {
            let (eqs, rhs) = set.equations();
            let lines: Vec<String> = eqs
                .row_vectors()
                .iter()
                .zip(&rhs)
                .map(|(row, r)| {
                    let terms: Vec<String> = row
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| if c.is_one() { format!("z{}", i + 1) } else { format!("({c})*z{}", i + 1) })
                        .collect();
                    format!("{} = {r}", terms.join(" + "))
                })
                .collect();
            if lines.is_empty() {
                format!("all Z (dimension {k})")
            } else {
                format!("dimension {k}: {} (through {})", lines.join(", "), show(b))
            }
        }
    }
}

fn report_text(r: &SymmetryReport) -> String {
    let mut out = format!(
        "orbit: iso_u={} iso_v={} in_span={}\npreserving: {}\nswapping:   {}\n",
        r.orbit.iso_u,
        r.orbit.iso_v,
        r.orbit.in_span,
        describe_set(&r.preserving),
        describe_set(&r.swapping)
    );
    if r.preserving.is_empty() && r.swapping.is_empty() {
        out += &format!(
            "preserving <u> alone: {}\npreserving <v> alone: {}\n",
            describe_set(&r.preserving_u),
            describe_set(&r.preserving_v)
        );
    }
    out
}

fn cmd_classify(cfg: &Config, args: &PointArgs) -> Result<Output> {
    let pb = load_problem(cfg, args)?;
    let label = flatmodel::classify_orbit(&pb.sig, &pb.w, &pb.u, &pb.v)?;
    let (w, u, v) = (pb.w.representative(), pb.u.representative(), pb.v.representative());
    let wu = pb.sig.pairing(w, u)?;
    let wv = pb.sig.pairing(w, v)?;
    let uv = pb.sig.pairing(u, v)?;
    Ok(Output {
        ok: true,
        text: format!(
            "orbit label: iso_u={} iso_v={} in_span={}\nm(w,u) = {wu}\nm(w,v) = {wv}\nm(u,v) = {uv}\n",
            label.iso_u, label.iso_v, label.in_span
        ),
        json: json!({
            "p": pb.sig.p(), "q": pb.sig.q(), "d": pb.d,
            "iso_u": label.iso_u, "iso_v": label.iso_v, "in_span": label.in_span,
            "pairings": {"wu": wu, "wv": wv, "uv": uv},
        }),
    })
}

fn cmd_solve(cfg: &Config, args: &PointArgs) -> Result<Output> {
    let pb = load_problem(cfg, args)?;
    let report = symmetry::find_symmetries(&pb.sig, &pb.u, &pb.v, &pb.w)?;
    let dto = ReportDto::from_report(&pb.sig, pb.d, &report);
    Ok(Output {
        ok: true,
        text: report_text(&report),
        json: serde_json::to_value(&dto).map_err(|e| Error::Format(e.to_string()))?,
    })
}

fn cmd_weyl(cfg: &Config, action: &WeylCommand) -> Result<Output> {
    match action {
        WeylCommand::BasisDim => {
            let sig = cfg.signature()?;
            let dim = weyl::weyl_space_basis(sig.p(), sig.q())?.dim();
            let expected = weyl::expected_dimension(sig.n());
            Ok(Output {
                ok: dim == expected,
                text: format!("Weyl tensors in signature ({},{}): dimension {dim} (counting formula {expected})\n", sig.p(), sig.q()),
                json: json!({"p": sig.p(), "q": sig.q(), "dim": dim, "expected": expected, "match": dim == expected}),
            })
        }
        WeylCommand::Prolongation { seed, tensor } => {
            let w = match tensor {
                Some(path) => {
                    let dto = with_path(path, WeylDto::from_json(&read(path)?))?;
                    cfg.check_file(dto.p, dto.q, dto.d)?;
                    with_path(path, dto.to_tensor())?
                }
                None => {
                    let sig = cfg.signature()?;
                    weyl::random_weyl(sig.p(), sig.q(), *seed)?
                }
            };
            let basis = weyl::prolongation(&w)?;
            let dto = WeylDto::from_tensor(&w, cfg.d);
            let ann = weyl::annihilator(&w).len();
            let ok = w.is_zero() || basis.is_empty();
            let seed = tensor.is_none().then_some(*seed);
            let source = match seed {
                Some(s) => format!("seed {s}"),
                None => "from file".to_string(),
            };
            let rows: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(|s| s.to_literal()).collect()).collect();
            Ok(Output {
                ok,
                text: format!(
                    "Weyl tensor with {} independent components ({source})\nannihilator dimension: {ann}\nprolongation dimension: {}\n",
                    dto.components.len(),
                    basis.len()
                ),
                json: json!({
                    "p": w.signature().p(), "q": w.signature().q(), "seed": seed,
                    "tensor": dto, "annihilator_dim": ann,
                    "dim": basis.len(), "basis": rows, "match": ok,
                }),
            })
        }
    }
}

fn load_extension(cfg: &Config, src: &ExtensionSource) -> Result<Extension> {
    match (&src.file, src.flat) {
        (Some(path), _) => {
            let file = with_path(path, ExtensionFile::from_json(&read(path)?))?;
            cfg.check_file(file.p, file.q, file.d)?;
            with_path(path, file.to_extension())
        }
        (None, true) => extension::flat_extension(cfg.signature()?),
        (None, false) => Err(Error::Format("give --file or --flat".into())),
    }
}

fn cmd_extension(cfg: &Config, action: &ExtensionCommand) -> Result<Output> {
    match action {
        ExtensionCommand::Validate(src) => {
            let e = load_extension(cfg, src)?;
            let r = extension::validate_extension(&e)?;
            let mut text = String::new();
            for (i, c) in r.conditions().iter().enumerate() {
                let mark = if c.passed { "pass" } else { "FAIL" };
                text += &format!("condition ({}): {mark}: {}\n", i + 1, c.detail);
            }
            Ok(Output {
                ok: r.passed(),
                text,
                json: json!({"conditions": r, "passed": r.passed()}),
            })
        }
        ExtensionCommand::Curvature(src) => {
            let e = load_extension(cfg, src)?;
            let table = extension::curvature_table(&e)?;
            let flat = table.iter().all(|(_, _, k)| k.is_zero());
            let mut text = String::new();
            let mut pairs = Vec::new();
            for (i, j, k) in &table {
                let coords = k.to_coords();
                text += &format!("kappa(m{i}, m{j}) = {}\n", if k.is_zero() { "0".into() } else { show(&coords) });
                pairs.push(json!({"i": i, "j": j, "zero": k.is_zero(), "value": coords}));
            }
            text += if flat { "curvature vanishes identically\n" } else { "curvature is nonzero\n" };
            Ok(Output {
                ok: true,
                text,
                json: json!({"pairs": pairs, "flat": flat}),
            })
        }
        ExtensionCommand::Criterion { source, y, search } => {
            let e = load_extension(cfg, source)?;
            let n = e.signature().n();
            if let Some(radius) = search {
                let grid = extension::covector_grid(n, *radius);
                let hit = extension::symmetry_criterion_search(&e, &grid)?;
                let text = match &hit {
                    Some(y) => format!("criterion holds for Y = {} ({} candidates)\n", show(y), grid.len()),
                    None => format!("no candidate among {} passes; this scan is not exhaustive\n", grid.len()),
                };
                return Ok(Output {
                    ok: hit.is_some(),
                    text,
                    json: json!({"candidates": grid.len(), "found": hit, "holds": hit.is_some()}),
                });
            }
            let yv = match y {
                Some(t) => inline_vector("y", t, cfg.d)?,
                None => symconf::linalg::zero_vector(n),
            };
            let holds = extension::symmetry_criterion(&e, &yv)?;
            Ok(Output {
                ok: holds,
                text: format!("criterion at Y = {}: {}\n", show(&yv), if holds { "holds" } else { "fails" }),
                json: json!({"y": yv, "holds": holds}),
            })
        }
        ExtensionCommand::ExportFlat => {
            let e = extension::flat_extension(cfg.signature()?)?;
            let file = ExtensionFile::from_extension(&e, cfg.d)?;
            let json = serde_json::to_value(&file).map_err(|err| Error::Format(err.to_string()))?;
            Ok(Output {
                ok: true,
                text: file.to_json()? + "\n",
                json,
            })
        }
    }
}

fn cmd_reproduce(cfg: &Config) -> Result<Output> {
    let results = cases::reproduce_paper(cfg.d)?;
    let mut text = format!("{:<10} {:>6}  {:<7} {:<60} {}\n", "case", "(p,q)", "match", "preserving", "swapping");
    let mut dtos = Vec::new();
    for r in &results {
        let s = r.signature;
        text += &format!(
            "{:<10} {:>6}  {:<7} {:<60} {}\n",
            r.case_id,
            format!("({},{})", s.p(), s.q()),
            if r.matched { "yes" } else { "NO" },
            describe_set(&r.report.preserving),
            describe_set(&r.report.swapping),
        );
        if r.case_id == "example-2" {
            text += &format!(
                "{:<27} preserving <u> alone: {}; preserving <v> alone: {}\n",
                "",
                describe_set(&r.report.preserving_u),
                describe_set(&r.report.preserving_v)
            );
        }
        dtos.push(ReportDto::from_case(r, cfg.d));
    }
    let passed = results.iter().filter(|r| r.matched).count();
    text += &format!("{passed}/{} cases match\n", results.len());
    Ok(Output {
        ok: passed == results.len(),
        text,
        json: json!({"cases": dtos, "passed": passed, "total": results.len(), "match": passed == results.len()}),
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let d = cli.d.unwrap_or(DEFAULT_D);
    validate_field(d)?;
    let cfg = Config {
        p: cli.p,
        q: cli.q,
        d,
        d_given: cli.d.is_some(),
    };
    match &cli.command {
        Command::Classify(a) => cmd_classify(&cfg, a),
        Command::Solve(a) => cmd_solve(&cfg, a),
        Command::Weyl { action } => cmd_weyl(&cfg, action),
        Command::Extension { action } => cmd_extension(&cfg, action),
        Command::ReproducePaper => cmd_reproduce(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.machine {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.machine {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
