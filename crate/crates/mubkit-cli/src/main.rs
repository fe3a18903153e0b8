//! Command-line front end: generate, verify, export and describe MUB sets.
//!
//! Exit codes: 0 success (for `verify`: all checks passed), 1 verification
//! failed, 2 malformed input or unsupported request, 3 spectral failure.

use clap::{Args, Parser, Subcommand};
use mubkit::{
    check_mub_set, check_orthogonal_classes, enumerate_class, factor_dim, find_irreducible,
    generate, mub_to_classes, ClassSpec, FpMatrix, FpPoly, GenerateParams, Method, MethodChoice,
    MubFileV1, MubSet, VerifyReport,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mubkit",
    version,
    about = "Construct and verify mutually unbiased bases for prime-power dimensions"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(Subcommand)]
enum CommandKind {
    /// Build a MUB set and emit it as a mub/1 JSON file
    Generate(GenerateArgs),
    /// Check a mub/1 file; exit 0 iff every check passes
    Verify(VerifyArgs),
    /// Export bases, operator class tables, or the symmetric family
    Export(ExportArgs),
    /// Describe a dimension: factorization, MUB count, default method
    Info(InfoArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Dimension d = p^m; alternative to --p and --m
    #[arg(long)]
    dim: Option<u64>,
    /// Prime base (used with --m)
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree (used with --p)
    #[arg(long)]
    m: Option<usize>,
    /// Construction: auto, prime, p2 or wf
    #[arg(long, default_value = "auto")]
    method: String,
    /// Modulus polynomial coefficients, lowest degree first
    /// (e.g. --poly 2,1,1 for x^2+x+2)
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u64>>,
    /// Seed for the spectral stage
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Construction and self-verification tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// mub/1 file to check
    #[arg(long = "in")]
    input: PathBuf,
    /// Verification tolerance; defaults to the tolerance recorded in the file
    #[arg(long)]
    tol: Option<f64>,
    /// Also derive the operator classes and check their pairwise orthogonality
    #[arg(long)]
    classes: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// mub/1 file to read
    #[arg(long = "in")]
    input: PathBuf,
    /// json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// bases, classes or family
    #[arg(long, default_value = "bases")]
    what: String,
}

#[derive(Args)]
struct InfoArgs {
    /// Dimension to describe
    #[arg(long)]
    dim: u64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        CommandKind::Generate(args) => cmd_generate(args),
        CommandKind::Verify(args) => cmd_verify(args),
        CommandKind::Export(args) => cmd_export(args),
        CommandKind::Info(args) => cmd_info(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn resolve_dims(args: &GenerateArgs) -> Result<(u64, usize), Failure> {
    match (args.dim, args.p, args.m) {
        (Some(d), None, None) => {
            let info = factor_dim(d);
            info.prime_power
                .ok_or_else(|| Failure::input(info.not_prime_power_message()))
        }
        (None, Some(p), Some(m)) => Ok((p, m)),
        _ => Err(Failure::input("specify either --dim, or both --p and --m")),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    let (p, m) = resolve_dims(&args)?;
    let method = MethodChoice::parse(&args.method)
        .ok_or_else(|| Failure::input(format!("unknown method {:?}", args.method)))?;
    let poly = args
        .poly
        .as_ref()
        .map(|coeffs| FpPoly::new(p, coeffs))
        .transpose()
        .map_err(|e| Failure::input(e.to_string()))?;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::input(format!(
            "tolerance must be positive and finite, got {}",
            args.tol
        )));
    }
    let params = GenerateParams {
        p,
        m,
        method,
        poly,
        seed: args.seed,
        tol: args.tol,
    };
    let (set, _report) = generate(&params).map_err(|e| Failure {
        code: if e.is_spectral() { 3 } else { 2 },
        message: e.to_string(),
    })?;
    let text = MubFileV1::from_mub_set(&set).to_json();
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::input(e.to_string()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn load_set(path: &std::path::Path) -> Result<MubSet, Failure> {
    let file = MubFileV1::read(path).map_err(|e| Failure::input(e.to_string()))?;
    file.to_mub_set().map_err(|e| Failure::input(e.to_string()))
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let set = load_set(&args.input)?;
    let tol = match args.tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => {
            return Err(Failure::input(format!(
                "tolerance must be positive and finite, got {t}"
            )))
        }
        None => set.tol,
    };
    let mut report = check_mub_set(&set, tol);
    if args.classes && report.passed {
        let addition = match mub_to_classes(&set) {
            Ok(classes) => check_orthogonal_classes(&classes, tol),
            Err(e) => VerifyReport {
                passed: false,
                tolerance: tol,
                checks: vec![mubkit::CheckRecord {
                    name: format!("classes_input ({e})"),
                    worst_deviation: f64::MAX,
                    location: vec![],
                }],
            },
        };
        report = report.merge(addition);
    }
    let mut text = serde_json::to_string(&report).expect("report serializes");
    text.push('\n');
    print!("{text}");
    Ok(if report.passed { 0 } else { 1 })
}

/// The symmetric family implied by a file's metadata. The prime formula
/// corresponds to the 1x1 matrices `[k]` for k = 0..p-1.
fn family_for(set: &MubSet) -> Result<Vec<FpMatrix>, Failure> {
    let to_failure = |e: mubkit::mub_primepower::PrimePowerError| Failure::input(e.to_string());
    match set.method {
        Method::PrimeFormula => (0..set.p)
            .map(|k| FpMatrix::new(set.p, 1, &[k]).map_err(|e| Failure::input(e.to_string())))
            .collect(),
        Method::P2Quadratic => Ok(
            mubkit::symmetric_family_p2(set.p, set.modulus_poly.as_ref())
                .map_err(to_failure)?
                .matrices,
        ),
        Method::WoottersFields => {
            Ok(
                mubkit::symmetric_family_wf(set.p, set.m, set.modulus_poly.as_ref())
                    .map_err(to_failure)?
                    .matrices,
            )
        }
    }
}

fn class_specs_for(set: &MubSet) -> Result<Vec<ClassSpec>, Failure> {
    let m = if set.method == Method::PrimeFormula {
        1
    } else {
        set.m
    };
    let mut specs = vec![ClassSpec::ZClass { p: set.p, m }];
    for a in family_for(set)? {
        specs.push(ClassSpec::XClass(a));
    }
    Ok(specs)
}

fn digits_str(digits: &[u64], p: u64) -> String {
    if p <= 9 {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

fn cmd_export(args: ExportArgs) -> Result<u8, Failure> {
    let file = MubFileV1::read(&args.input).map_err(|e| Failure::input(e.to_string()))?;
    let set = file
        .to_mub_set()
        .map_err(|e| Failure::input(e.to_string()))?;
    let out = match (args.format.as_str(), args.what.as_str()) {
        ("json", "bases") => {
            let doc = serde_json::json!({ "dim": file.dim, "bases": file.bases });
            format!("{doc}\n")
        }
        ("csv", "bases") => {
            let d = set.dim;
            let mut out = String::new();
            for (k, basis) in set.bases.iter().enumerate() {
                out.push_str(&format!("# basis {k}\n"));
                for r in 0..d {
                    let cells: Vec<String> = (0..d)
                        .flat_map(|c| {
                            let e = basis.matrix().get(r, c);
                            [format!("{}", e.re), format!("{}", e.im)]
                        })
                        .collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            out
        }
        ("json", "classes") => {
            let specs = class_specs_for(&set)?;
            let mut classes = Vec::new();
            for (index, spec) in specs.iter().enumerate() {
                let vectors = enumerate_class(spec).map_err(|e| Failure::input(e.to_string()))?;
                classes.push(serde_json::json!({
                    "class_index": index,
                    "vectors": vectors,
                }));
            }
            format!("{}\n", serde_json::Value::Array(classes))
        }
        ("csv", "classes") => {
            let specs = class_specs_for(&set)?;
            let mut out = String::from("class_index,x_vector,alpha|beta\n");
            for (index, spec) in specs.iter().enumerate() {
                let vectors = enumerate_class(spec).map_err(|e| Failure::input(e.to_string()))?;
                for (n, v) in vectors.iter().enumerate() {
                    let x = mubkit::index_to_digits(n as u64, set.p, spec.m());
                    out.push_str(&format!(
                        "{index},{},{}|{}\n",
                        digits_str(&x, set.p),
                        digits_str(&v.alpha, set.p),
                        digits_str(&v.beta, set.p),
                    ));
                }
            }
            out
        }
        ("json", "family") => {
            let family = family_for(&set)?;
            let matrices: Vec<Vec<Vec<u64>>> = family
                .iter()
                .map(|a| {
                    (0..a.dim())
                        .map(|r| (0..a.dim()).map(|c| a.get(r, c)).collect())
                        .collect()
                })
                .collect();
            let doc = serde_json::json!({ "p": set.p, "m": set.m, "matrices": matrices });
            format!("{doc}\n")
        }
        ("csv", "family") => {
            let family = family_for(&set)?;
            let dim = family.first().map(|a| a.dim()).unwrap_or(0);
            let mut header = vec!["family_index".to_string()];
            for r in 0..dim {
                for c in 0..dim {
                    header.push(format!("e{r}{c}"));
                }
            }
            let mut out = header.join(",");
            out.push('\n');
            for (index, a) in family.iter().enumerate() {
                let mut cells = vec![index.to_string()];
                cells.extend(a.entries().iter().map(|e| e.to_string()));
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        ("json" | "csv", what) => {
            return Err(Failure::input(format!(
                "unknown export target {what:?} (expected bases, classes or family)"
            )))
        }
        (format, _) => {
            return Err(Failure::input(format!(
                "unknown format {format:?} (expected json or csv)"
            )))
        }
    };
    print!("{out}");
    Ok(0)
}

fn cmd_info(args: InfoArgs) -> Result<u8, Failure> {
    let info = factor_dim(args.dim);
    let line = match info.prime_power {
        Some((_, 1)) => format!(
            "{d} prime; {n} MUBs constructible; bound {n}; method prime",
            d = args.dim,
            n = args.dim + 1
        ),
        Some((p, m)) => {
            let default_method = if m == 2 { "p2" } else { "wf" };
            let poly = find_irreducible(p, if m == 2 { 2 } else { m })
                .map(|f| f.display())
                .unwrap_or_else(|e| format!("unavailable ({e})"));
            format!(
                "{d} = {f}; prime power; {n} MUBs constructible; bound {n}; method {default_method}; default polynomial {poly}",
                d = args.dim,
                f = info.factorization,
                n = args.dim + 1
            )
        }
        None => format!(
            "{d} = {f}; not a prime power; construction unsupported; bound {n}",
            d = args.dim,
            f = info.factorization,
            n = args.dim + 1
        ),
    };
    println!("{line}");
    Ok(0)
}
