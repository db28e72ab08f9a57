//! Command-line front end: singularity certificates, census enumeration,
//! classification, constructions, power-LCM brackets and DOT export.
//!
//! Exit codes: 0 success (nonsingular for `verify`), 10 singular set from
//! `verify`, 2 invalid input, 3 violated precondition, 4 internal failure or
//! failed self-test.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use lcmlat::construct::{self, BetweenVariant, MaximalAnchor};
use lcmlat::enumerate::{enumerate_with_threads, filter_special, level_counts};
use lcmlat::files::{self, AnyFile};
use lcmlat::gcdset::GcdSet;
use lcmlat::matrix::{det_lcm, factorize};
use lcmlat::power;
use lcmlat::report::{psi_table, rational_string, set_inputs, Report};
use lcmlat::selfcheck;

const EXIT_SINGULAR: u8 = 10;
const EXIT_INPUT: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lcmlat",
    about = "Exact singularity certificates for LCM matrices on GCD-closed sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Ψ table and singularity verdict of a set file.
    Verify {
        set_file: PathBuf,
        /// Print the full JSON report instead of the summary.
        #[arg(long)]
        json: bool,
        /// Include wall-clock timings in the report (breaks byte-for-byte
        /// reproducibility).
        #[arg(long)]
        timings: bool,
    },
    /// Enumerate meet semilattice structures up to isomorphism.
    Enumerate {
        /// Element count.
        #[arg(short, long)]
        n: usize,
        /// Keep only structures with an element failing the double-chain
        /// property.
        #[arg(long)]
        special: bool,
        /// Print a count table instead of streaming structures.
        #[arg(long)]
        count_only: bool,
        /// Write output to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report (count mode only).
        #[arg(long)]
        json: bool,
    },
    /// Classify a nine-element set against the thirteen labeled shapes.
    Classify {
        set_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the cube-shaped subsemilattices of a set.
    Cubes {
        set_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply one of the eight insertion constructions to a singular seed.
    Construct {
        /// Variant A..H.
        #[arg(long)]
        variant: String,
        /// Seed set file (eight elements, singular at the top).
        #[arg(long)]
        seed_set: PathBuf,
        /// Multiplier for variants A..E (determined by the set for F..H).
        #[arg(long)]
        multiplier: Option<i64>,
        /// Write the constructed set to a file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Build a power-LCM construction and bracket its singular exponent.
    Power {
        /// Target lower bound for the singular exponent.
        #[arg(long = "M")]
        target: f64,
        /// Bracket width tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Working precision in bits.
        #[arg(long, default_value_t = power::DEFAULT_PRECISION_BITS)]
        precision: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a set or structure file as a DOT Hasse diagram.
    ExportDot {
        input_file: PathBuf,
        /// Accept posets that are not meet semilattices.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full reproduction suite.
    Selftest {
        /// Seed for the randomized sweeps.
        #[arg(long, default_value_t = selfcheck::DEFAULT_SEED)]
        seed: u64,
        /// Largest census level to verify (lower it for a quick pass).
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

fn threads_from_env() -> usize {
    match std::env::var("LCMLAT_THREADS") {
        Ok(v) => v.parse().unwrap_or(1).max(1),
        Err(_) => std::thread::available_parallelism().map(usize::from).unwrap_or(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> CmdError {
    CmdError {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn precondition_error(message: impl ToString) -> CmdError {
    CmdError {
        code: EXIT_PRECONDITION,
        message: message.to_string(),
    }
}

fn internal_error(message: impl ToString) -> CmdError {
    CmdError {
        code: EXIT_INTERNAL,
        message: message.to_string(),
    }
}

fn read_set(path: &PathBuf) -> Result<GcdSet, CmdError> {
    files::read_set_file(path).map_err(input_error)
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    match cli.command {
        Command::Verify {
            set_file,
            json,
            timings,
        } => cmd_verify(&set_file, json, timings),
        Command::Enumerate {
            n,
            special,
            count_only,
            out,
            json,
        } => cmd_enumerate(n, special, count_only, out, json),
        Command::Classify { set_file, json } => cmd_classify(&set_file, json),
        Command::Cubes { set_file, json } => cmd_cubes(&set_file, json),
        Command::Construct {
            variant,
            seed_set,
            multiplier,
            out,
            json,
        } => cmd_construct(&variant, &seed_set, multiplier, out, json),
        Command::Power {
            target,
            tol,
            precision,
            json,
        } => cmd_power(target, tol, precision, json),
        Command::ExportDot {
            input_file,
            raw,
            out,
        } => cmd_export_dot(&input_file, raw, out),
        Command::Selftest { seed, max_n } => cmd_selftest(seed, max_n),
    }
}

fn write_or_print(out: Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(&path, content)
            .map_err(|e| internal_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_verify(path: &PathBuf, json: bool, timings: bool) -> Result<ExitCode, CmdError> {
    let start = std::time::Instant::now();
    let set = read_set(path)?;
    let (singular, witnesses) = set.is_singular();
    let det = det_lcm(&set, 1);
    let fact_ok = factorize(&set, 1).verify(&set);
    let mut report = Report::new("verify", set_inputs(&set));
    report.psi = Some(psi_table(&set, 1));
    report.verdict = Some(if singular { "singular" } else { "nonsingular" }.into());
    report.determinant = Some(det.to_string());
    report.witnesses = Some(serde_json::json!(witnesses
        .iter()
        .map(|&i| set.element(i).to_string())
        .collect::<Vec<_>>()));
    report.details = Some(serde_json::json!({
        "factorization_consistent": fact_ok,
    }));
    if timings {
        let mut t = std::collections::BTreeMap::new();
        t.insert("total".to_string(), start.elapsed().as_millis());
        report.timings_ms = Some(t);
    }
    if json {
        println!("{}", report.to_json());
    } else {
        println!(
            "set {} with {} elements",
            set.name().unwrap_or("<unnamed>"),
            set.len()
        );
        for entry in report.psi.as_deref().unwrap_or_default() {
            println!("  Ψ({}) = {}", entry.element, entry.value);
        }
        println!("determinant: {det}");
        println!("factorization consistent: {fact_ok}");
        if singular {
            let names: Vec<String> = witnesses
                .iter()
                .map(|&i| set.element(i).to_string())
                .collect();
            println!("verdict: singular (zero Ψ at {})", names.join(", "));
        } else {
            println!("verdict: nonsingular");
        }
    }
    if !fact_ok {
        return Err(internal_error("factorization reconstruction mismatch"));
    }
    Ok(if singular {
        ExitCode::from(EXIT_SINGULAR)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_enumerate(
    n: usize,
    special: bool,
    count_only: bool,
    out: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, CmdError> {
    if n == 0 {
        return Err(input_error("need at least one element"));
    }
    if n > 10 {
        eprintln!(
            "warning: enumeration beyond 10 elements is untested territory; expect long runtimes"
        );
    }
    let threads = threads_from_env();
    if count_only {
        let counts = level_counts(n, threads);
        let mut lines = String::new();
        let mut table = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            let level = i + 1;
            if special {
                let structures = enumerate_with_threads(level, threads);
                let s = filter_special(&structures).len();
                lines.push_str(&format!("{level:>3} {c:>10} {s:>8}\n"));
                table.push(serde_json::json!({"n": level, "count": c, "special": s}));
            } else {
                lines.push_str(&format!("{level:>3} {c:>10}\n"));
                table.push(serde_json::json!({"n": level, "count": c}));
            }
        }
        let mut report = Report::new("enumerate", serde_json::json!({"n": n, "special": special}));
        report.details = Some(serde_json::json!({"counts": table}));
        if json {
            write_or_print(out, &(report.to_json() + "\n"))?;
        } else {
            write_or_print(out, &lines)?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let structures = enumerate_with_threads(n, threads);
    let mut body = String::new();
    if special {
        let records = filter_special(&structures);
        let by_form: std::collections::BTreeMap<_, _> = structures
            .iter()
            .map(|s| (lcmlat::canonical_form(s), s))
            .collect();
        for record in records {
            let s = by_form[&record.canonical_form];
            body.push_str(&files::structure_to_json(s));
            body.push('\n');
        }
    } else {
        for s in &structures {
            body.push_str(&files::structure_to_json(s));
            body.push('\n');
        }
    }
    write_or_print(out, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(path: &PathBuf, json: bool) -> Result<ExitCode, CmdError> {
    let set = read_set(path)?;
    let label = construct::classify9(&set).map_err(precondition_error)?;
    let mut report = Report::new("classify", set_inputs(&set));
    report.verdict = Some(label.to_string());
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{label}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cubes(path: &PathBuf, json: bool) -> Result<ExitCode, CmdError> {
    let set = read_set(path)?;
    let witnesses = construct::find_cube_subsemilattices(&set).map_err(precondition_error)?;
    let rendered: Vec<Vec<String>> = witnesses
        .iter()
        .map(|w| w.values(&set).iter().map(|x| x.to_string()).collect())
        .collect();
    let mut report = Report::new("cubes", set_inputs(&set));
    report.witnesses = Some(serde_json::json!(rendered));
    report.verdict = Some(format!("{} cube subsemilattices", witnesses.len()));
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{} cube subsemilattices", witnesses.len());
        for w in &rendered {
            println!("  {{{}}}", w.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(
    variant: &str,
    seed_path: &PathBuf,
    multiplier: Option<i64>,
    out: Option<PathBuf>,
    json: bool,
) -> Result<ExitCode, CmdError> {
    let seed = read_set(seed_path)?;
    let variant = variant.to_ascii_uppercase();
    let need_multiplier = matches!(variant.as_str(), "A" | "B" | "C" | "D" | "E");
    if need_multiplier && multiplier.is_none() {
        return Err(input_error(format!(
            "variant {variant} requires --multiplier"
        )));
    }
    if !need_multiplier && multiplier.is_some() {
        return Err(input_error(format!(
            "variant {variant} determines its own multiplier; drop --multiplier"
        )));
    }
    let a = multiplier.map(BigInt::from);
    let (result, used_multiplier) = match variant.as_str() {
        "A" => (
            construct::insert_maximal(&seed, a.as_ref().unwrap(), MaximalAnchor::Bottom),
            a.clone(),
        ),
        "B" => (
            construct::insert_maximal(&seed, a.as_ref().unwrap(), MaximalAnchor::Atom),
            a.clone(),
        ),
        "C" => (
            construct::insert_maximal(&seed, a.as_ref().unwrap(), MaximalAnchor::Coatom),
            a.clone(),
        ),
        "D" => (
            construct::insert_maximal(&seed, a.as_ref().unwrap(), MaximalAnchor::Top),
            a.clone(),
        ),
        "E" => (
            construct::insert_minimum(&seed, a.as_ref().unwrap()),
            a.clone(),
        ),
        "F" | "G" | "H" => {
            let v = match variant.as_str() {
                "F" => BetweenVariant::F,
                "G" => BetweenVariant::G,
                _ => BetweenVariant::H,
            };
            match construct::insert_between(&seed, v) {
                Ok(outcome) => (Ok(outcome.set), Some(outcome.multiplier)),
                Err(e) => (Err(e), None),
            }
        }
        other => return Err(input_error(format!("unknown variant {other:?}"))),
    };
    let set = result.map_err(precondition_error)?;
    let label = construct::classify9(&set).map_err(internal_error)?;
    let (singular, _) = set.is_singular();
    let named = set.with_name(format!("constructed-9{}", variant.to_ascii_lowercase()));
    let set_json =
        serde_json::to_string_pretty(&files::SetFile::from_set(&named)).expect("serializable");
    if let Some(path) = out {
        std::fs::write(&path, set_json.clone() + "\n")
            .map_err(|e| internal_error(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut report = Report::new("construct", set_inputs(&named));
    report.verdict = Some(label.to_string());
    report.details = Some(serde_json::json!({
        "variant": variant,
        "multiplier": used_multiplier.map(|m| m.to_string()),
        "singular": singular,
    }));
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{set_json}");
        println!("class: {label}, singular: {singular}");
    }
    if !singular {
        return Err(internal_error("constructed set is unexpectedly nonsingular"));
    }
    Ok(ExitCode::SUCCESS)
}

/// Decimal rendering of a rational with the given number of fractional
/// digits, rounded toward zero.
fn decimal_string(v: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (v * BigRational::from_integer(scale.clone())).trunc();
    let total = scaled.to_integer();
    let sign = if total.is_negative() { "-" } else { "" };
    let abs = total.abs();
    let (int_part, frac_part) = (abs.clone() / &scale, abs % &scale);
    let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
    format!("{sign}{int_part}.{frac}")
}

fn cmd_power(target: f64, tol: f64, precision: usize, json: bool) -> Result<ExitCode, CmdError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(input_error("tolerance must be positive"));
    }
    let construction = power::build_power_construction(target).map_err(precondition_error)?;
    let tol_rat = BigRational::from_float(tol).ok_or_else(|| input_error("bad tolerance"))?;
    let digits = (-tol.log10()).ceil().max(4.0) as usize + 2;
    let mut checkpoints = Vec::new();
    let mut alpha = BigRational::one();
    for _ in 0..64 {
        let value = match power::h_eval(&construction, &alpha, precision.max(power::MIN_PRECISION_BITS))
            .map_err(precondition_error)?
        {
            power::HValue::Exact(v) => v,
            power::HValue::Enclosure(_) => unreachable!("integer exponents are exact"),
        };
        let negative = value.is_negative();
        checkpoints.push((alpha.to_integer().to_string(), value));
        if negative {
            break;
        }
        alpha += BigRational::one();
    }
    let bracket =
        power::find_alpha0(&construction, &tol_rat, precision).map_err(precondition_error)?;
    let elements: Vec<String> = construction
        .set
        .elements()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let mut report = Report::new(
        "power",
        serde_json::json!({
            "target": target,
            "tol": tol,
            "precision_requested": precision,
        }),
    );
    report.details = Some(serde_json::json!({
        "k": construction.k,
        "primes": construction.primes,
        "set": elements,
        "checkpoints": checkpoints
            .iter()
            .map(|(a, v)| serde_json::json!({"alpha": a, "h": rational_string(v)}))
            .collect::<Vec<_>>(),
        "bracket": {
            "lo": decimal_string(&bracket.lo, digits),
            "hi": decimal_string(&bracket.hi, digits),
            "lo_exact": rational_string(&bracket.lo),
            "hi_exact": rational_string(&bracket.hi),
            "width_bound": tol,
            "precision_bits": bracket.precision_bits,
            "h_lo_positive": bracket.h_lo.sign == astro_float::Sign::Pos,
            "h_hi_negative": bracket.h_hi.sign == astro_float::Sign::Neg,
        },
    }));
    report.verdict = Some(format!(
        "singular exponent inside [{}, {}]",
        decimal_string(&bracket.lo, digits),
        decimal_string(&bracket.hi, digits)
    ));
    if json {
        println!("{}", report.to_json());
    } else {
        println!("k = {}, primes = {:?}", construction.k, construction.primes);
        println!("set = {{{}}}", elements.join(", "));
        for (a, v) in &checkpoints {
            println!("  h({a}) = {}", rational_string(v));
        }
        println!(
            "certified bracket: [{}, {}] (width ≤ {tol}, {} bits)",
            decimal_string(&bracket.lo, digits),
            decimal_string(&bracket.hi, digits),
            bracket.precision_bits
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_dot(path: &PathBuf, raw: bool, out: Option<PathBuf>) -> Result<ExitCode, CmdError> {
    let dot = match files::read_any_file(path, raw).map_err(input_error)? {
        AnyFile::Set(set) => lcmlat::dot::set_to_dot(&set),
        AnyFile::Structure(s) => lcmlat::dot::bare_structure_to_dot(&s),
    };
    write_or_print(out, &dot)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(seed: u64, max_n: usize) -> Result<ExitCode, CmdError> {
    let cfg = selfcheck::Config {
        seed,
        threads: threads_from_env(),
        max_enumeration: max_n.clamp(1, 10),
    };
    let results = selfcheck::run_all(&cfg);
    let mut all_ok = true;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for r in &results {
        writeln!(lock, "{}", r.line()).ok();
        all_ok &= r.passed;
    }
    if all_ok {
        writeln!(lock, "all {} criteria passed", results.len()).ok();
        Ok(ExitCode::SUCCESS)
    } else {
        Err(internal_error("self-test failures above"))
    }
}
