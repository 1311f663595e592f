//! The `ccc` command line: reads fan and setup documents, runs one library
//! operation, and prints a JSON report.

pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cohoracle::{case3_sandwich_check, hom_module_oracle, hom_oracle_check, koszul_check, required_bound};
use crate::error::{CccError, Result};
use crate::exactlin::Rational;
use crate::fm::{
    contractibility_check_2d, fm3_region, fm_case1, fm_case2, fm_line_bundle_case1, fm_line_bundle_case2,
    poset_embedding_report,
};
use crate::stackyfan::{parse_contraction, parse_fan, parse_same_base, Cone, ContractionSetup, Discrepancy, StackyFan};
use crate::thetapos::{hom_constructible, lambda_skeleton, support, ThetaIndex};
pub use report::{Format, Report, Status};
use report::to_value;

#[derive(Parser, Debug)]
#[command(name = "ccc", version, about = "Theta sheaves and toric Fourier-Mukai transforms")]
struct Cli {
    /// Report layout.
    #[arg(long, value_enum, global = true, default_value = "pretty")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse and validate a fan or setup document.
    Validate { file: PathBuf },
    /// Hom between two theta indices of a fan.
    Hom {
        file: PathBuf,
        #[arg(long)]
        theta1: String,
        #[arg(long)]
        theta2: String,
        /// Also decide the hom from character sets.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "box")]
        bbox: Option<String>,
    },
    /// Fourier-Mukai images.
    Fm {
        #[command(subcommand)]
        which: FmCmd,
    },
    /// Exhaustive property sweeps over a window.
    Check {
        #[command(subcommand)]
        which: CheckCmd,
    },
    /// SVG figures.
    Plot {
        #[command(subcommand)]
        which: PlotCmd,
    },
}

#[derive(Args, Debug)]
struct ImageArgs {
    file: PathBuf,
    /// Line bundle coefficients, comma-separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "theta", required_unless_present = "theta")]
    bundle: Option<String>,
    #[arg(long)]
    theta: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FmCmd {
    /// Change of weights on a fixed fan.
    SameBase(ImageArgs),
    /// From the contracted side to the blown-up side.
    ContractPush(ImageArgs),
    /// Staircase region of a theta index of the blown-up side.
    ContractPull {
        file: PathBuf,
        #[arg(long = "J", allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long)]
    window: Option<i64>,
    #[arg(long = "box")]
    bbox: Option<String>,
    #[arg(long)]
    step: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    PosetEmbedding(CheckArgs),
    HomOracle(CheckArgs),
    Case3Sandwich(CheckArgs),
    #[command(name = "contractibility-2d")]
    Contractibility2d(CheckArgs),
}

#[derive(Subcommand, Debug)]
enum PlotCmd {
    /// Conical Lagrangian of a one-dimensional fan.
    Lagrangian {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long = "box", default_value = "1")]
        bbox: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Open support of a theta index, or an image region of a setup.
    Region {
        file: PathBuf,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long = "J", allow_hyphen_values = true, requires = "phi", conflicts_with = "theta")]
        j: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        #[arg(long = "box", default_value = "3")]
        bbox: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// Runs the command line, printing the report on stdout and diagnostics on
/// stderr; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("bad arguments").trim_start_matches("error: ");
            let r = Report::from_error(&CccError::invalid(first.to_string()));
            let _ = write!(out, "{}", r.emit(requested_format(&args)));
            return r.status.exit_code();
        }
    };
    let report = dispatch(&cli.cmd).unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        Report::from_error(&e)
    });
    let _ = write!(out, "{}", report.emit(cli.format));
    report.status.exit_code()
}

/// `--format` as given on a command line that failed to parse.
fn requested_format(args: &[OsString]) -> Format {
    let words: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let json = words.windows(2).any(|w| w[0] == "--format" && w[1] == "json-lines")
        || words.iter().any(|w| w == "--format=json-lines");
    if json {
        Format::JsonLines
    } else {
        Format::Pretty
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CccError::Io(format!("{}: {e}", path.display())))
}

enum Doc {
    Fan(StackyFan),
    SameBase(crate::stackyfan::SameBaseSetup),
    Contraction(ContractionSetup),
}

fn read_doc(path: &Path) -> Result<Doc> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("extra").is_some() {
        Ok(Doc::Contraction(parse_contraction(&text)?))
    } else if v.get("fan").is_some() {
        Ok(Doc::SameBase(parse_same_base(&text)?))
    } else {
        Ok(Doc::Fan(parse_fan(&text)?))
    }
}

fn read_fan(path: &Path) -> Result<StackyFan> {
    match read_doc(path)? {
        Doc::Fan(f) => Ok(f),
        _ => Err(CccError::invalid("expected a fan document")),
    }
}

fn read_same_base(path: &Path) -> Result<crate::stackyfan::SameBaseSetup> {
    match read_doc(path)? {
        Doc::SameBase(s) => Ok(s),
        _ => Err(CccError::invalid("expected a same-base setup document")),
    }
}

fn read_contraction(path: &Path) -> Result<ContractionSetup> {
    match read_doc(path)? {
        Doc::Contraction(s) => Ok(s),
        _ => Err(CccError::invalid("expected a contraction setup document")),
    }
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| CccError::invalid(format!("not an integer: '{x}'"))))
        .collect()
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CccError::invalid(format!("not a ray index: '{x}'"))))
        .collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| CccError::invalid(format!("not a rational number: '{s}'")))
}

fn parse_theta(s: &str) -> Result<ThetaIndex> {
    s.parse::<ThetaIndex>()
}

fn theta_from_pairs(pairs: Vec<(usize, BigInt)>) -> Result<ThetaIndex> {
    let mut pairs = pairs;
    pairs.sort();
    let cone = Cone::new(pairs.iter().map(|p| p.0).collect());
    if cone.dim() != pairs.len() {
        return Err(CccError::invalid("repeated ray index"));
    }
    ThetaIndex::new(cone, pairs.into_iter().map(|p| p.1).collect())
}

/// Theta index in document ray order to the setup's internal order.
fn theta_in(setup: &ContractionSetup, theta: &ThetaIndex) -> Result<ThetaIndex> {
    let pairs = theta
        .cone
        .rays()
        .iter()
        .zip(&theta.t)
        .map(|(&i, t)| Ok((setup.to_internal(i)?, t.clone())))
        .collect::<Result<Vec<_>>>()?;
    theta_from_pairs(pairs)
}

fn theta_out(setup: &ContractionSetup, theta: &ThetaIndex) -> ThetaIndex {
    let pairs = theta
        .cone
        .rays()
        .iter()
        .zip(&theta.t)
        .map(|(&i, t)| (setup.to_original(i), t.clone()))
        .collect();
    theta_from_pairs(pairs).expect("valid")
}

fn cone_out(setup: &ContractionSetup, c: &Cone) -> Vec<usize> {
    let mut v: Vec<usize> = c.rays().iter().map(|&i| setup.to_original(i)).collect();
    v.sort();
    v
}

fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(crate::bigint_serde::to_json).collect())
}

fn dispatch(cmd: &Cmd) -> Result<Report> {
    match cmd {
        Cmd::Validate { file } => validate(file),
        Cmd::Hom {
            file,
            theta1,
            theta2,
            oracle,
            bbox,
        } => hom(file, theta1, theta2, *oracle, bbox.as_deref()),
        Cmd::Fm { which } => match which {
            FmCmd::SameBase(a) => same_base(a),
            FmCmd::ContractPush(a) => contract_push(a),
            FmCmd::ContractPull { file, j, phi } => contract_pull(file, j, phi),
        },
        Cmd::Check { which } => match which {
            CheckCmd::PosetEmbedding(a) => check_poset(a),
            CheckCmd::HomOracle(a) => check_hom_oracle(a),
            CheckCmd::Case3Sandwich(a) => check_sandwich(a),
            CheckCmd::Contractibility2d(a) => check_contractibility(a),
        },
        Cmd::Plot { which } => match which {
            PlotCmd::Lagrangian {
                file,
                window,
                bbox,
                output,
            } => plot_lagrangian(file, *window, bbox, output),
            PlotCmd::Region {
                file,
                theta,
                j,
                phi,
                bbox,
                output,
            } => plot_region(file, theta.as_deref(), j.as_deref(), phi.as_deref(), bbox, output),
        },
    }
}

fn validate(file: &Path) -> Result<Report> {
    Ok(Report::ok(match read_doc(file)? {
        Doc::Fan(f) => json!({
            "kind": "fan",
            "dim": f.dim(),
            "rays": f.rays().len(),
            "max_cones": to_value(&f.max_cones())?,
            "cones": f.cones().len(),
            "complete": f.is_complete(),
        }),
        Doc::SameBase(s) => json!({
            "kind": "same-base",
            "r": s.r(),
            "s": s.s(),
            "t": s.t(),
            "discrepancy": to_value(&s.discrepancy())?,
        }),
        Doc::Contraction(s) => json!({
            "kind": "contraction",
            "dim": s.dim(),
            "alpha": to_value(&(0..s.dim()).map(|o| s.alpha()[s.to_internal(o).unwrap()].clone()).collect::<Vec<_>>())?,
            "alpha_sum": to_value(&s.alpha_sum())?,
            "discrepancy": to_value(&s.discrepancy())?,
            "positive_rays": cone_out(&s, &s.i_prime()),
        }),
    }))
}

fn hom(file: &Path, t1: &str, t2: &str, oracle: bool, bbox: Option<&str>) -> Result<Report> {
    let fan = read_fan(file)?;
    let a = parse_theta(t1)?;
    let b = parse_theta(t2)?;
    let h = hom_constructible(&fan, &a, &b)?;
    let mut payload = json!({ "value": to_value(&h.value)?, "reason": to_value(&h.reason)? });
    if !oracle {
        return Ok(Report::ok(payload));
    }
    let bound = match bbox {
        Some(s) => parse_rational(s)?,
        None => required_bound(&fan, [&a, &b])?,
    };
    let o = hom_module_oracle(&fan, &a, &b, &bound)?;
    payload["oracle"] = to_value(&o)?;
    payload["box"] = to_value(&bound)?;
    let agree = o == h.value;
    let witnesses = if agree { Vec::new() } else { vec![json!({"theta1": t1, "theta2": t2})] };
    Ok(Report::check(agree, payload, witnesses))
}

fn same_base(a: &ImageArgs) -> Result<Report> {
    let setup = read_same_base(&a.file)?;
    if let Some(b) = &a.bundle {
        let img = fm_line_bundle_case1(&setup, &parse_ints(b)?)?;
        return Ok(Report::ok(json!({ "bundle": img.as_deref().map(ints_json) })));
    }
    let theta = parse_theta(a.theta.as_deref().unwrap())?;
    let img = fm_case1(&setup, &theta)?;
    Ok(Report::ok(json!({ "theta": img.to_string() })))
}

fn contract_push(a: &ImageArgs) -> Result<Report> {
    let setup = read_contraction(&a.file)?;
    let n = setup.extra_index();
    if let Some(b) = &a.bundle {
        let c = parse_ints(b)?;
        if c.len() != n {
            return Err(CccError::invalid(format!("expected {n} coefficients, got {}", c.len())));
        }
        let internal: Vec<BigInt> = (0..n).map(|i| c[setup.to_original(i)].clone()).collect();
        let img = fm_line_bundle_case2(&setup, &internal)?;
        let mut out: Vec<BigInt> = (0..n).map(|o| img[setup.to_internal(o).unwrap()].clone()).collect();
        out.push(img[n].clone());
        return Ok(Report::ok(json!({ "bundle": ints_json(&out) })));
    }
    let theta = theta_in(&setup, &parse_theta(a.theta.as_deref().unwrap())?)?;
    let img = fm_case2(&setup, &theta)?;
    let cech: Vec<Value> = img
        .cech
        .iter()
        .map(|t| json!({ "degree": t.degree, "theta": theta_out(&setup, &t.theta).to_string() }))
        .collect();
    Ok(Report::ok(json!({
        "support": to_value(&img.support)?,
        "extra_threshold": img.extra_threshold.as_ref().map(crate::bigint_serde::to_json),
        "cech": cech,
    })))
}

fn pull_theta(setup: &ContractionSetup, j: &str, phi: &str) -> Result<ThetaIndex> {
    let j = parse_indices(j)?;
    let phi = parse_ints(phi)?;
    if j.len() != phi.len() {
        return Err(CccError::invalid(format!("{} rays but {} thresholds", j.len(), phi.len())));
    }
    theta_in(setup, &theta_from_pairs(j.into_iter().zip(phi).collect())?)
}

fn contract_pull(file: &Path, j: &str, phi: &str) -> Result<Report> {
    let setup = read_contraction(file)?;
    let theta = pull_theta(&setup, j, phi)?;
    let r = fm3_region(&setup, &theta)?;
    let mut payload = json!({
        "theta": theta_out(&setup, &theta).to_string(),
        "staircase": r.is_staircase(),
        "J_prime": cone_out(&setup, r.j_prime()),
        "outer": to_value(r.outer())?,
        "inner": to_value(r.inner())?,
    });
    if r.is_staircase() {
        payload["i0"] = Value::from(setup.to_original(r.i0().unwrap()));
        payload["s1"] = to_value(r.s1().unwrap())?;
        let zero = vec![BigInt::from(0); r.multi_index_rays().len()];
        payload["gamma_zero"] = Value::from(theta_out(&setup, &r.gamma(&zero)?).to_string());
    }
    Ok(Report::ok(payload))
}

fn opt_rational(s: &Option<String>, default: Rational) -> Result<Rational> {
    s.as_deref().map(parse_rational).transpose().map(|r| r.unwrap_or(default))
}

fn opt_int(s: &Option<String>, default: i64) -> Result<i64> {
    let r = opt_rational(s, Rational::from_int(default))?;
    r.to_integer()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| CccError::invalid("box must be an integer here"))
}

fn witnesses<T: serde::Serialize>(items: &[T]) -> Result<Vec<Value>> {
    items.iter().map(to_value).collect()
}

fn window(a: &CheckArgs, default: i64) -> Result<i64> {
    let w = a.window.unwrap_or(default);
    if w < 0 {
        return Err(CccError::invalid("window must be nonnegative"));
    }
    Ok(w)
}

fn check_poset(a: &CheckArgs) -> Result<Report> {
    let setup = read_same_base(&a.file)?;
    let w = window(a, 4)?;
    if w < 1 {
        return Err(CccError::invalid("window must be at least 1"));
    }
    let r = poset_embedding_report(&setup, w)?;
    let mut payload = to_value(&r)?;
    payload["window"] = Value::from(w);
    Ok(Report::check(r.embedding, payload, witnesses(&r.violations)?))
}

fn check_hom_oracle(a: &CheckArgs) -> Result<Report> {
    let fan = read_fan(&a.file)?;
    let w = window(a, 3)?;
    let bound = a.bbox.as_deref().map(parse_rational).transpose()?;
    let r = hom_oracle_check(&fan, w, bound)?;
    let wit = r
        .disagreements
        .iter()
        .map(|(x, y)| json!({ "theta1": x.to_string(), "theta2": y.to_string() }))
        .collect();
    let mut payload = to_value(&r)?;
    payload["window"] = Value::from(w);
    Ok(Report::check(r.disagreements.is_empty(), payload, wit))
}

fn check_sandwich(a: &CheckArgs) -> Result<Report> {
    let setup = read_contraction(&a.file)?;
    let w = window(a, 3)?;
    let bound = opt_int(&a.bbox, 2)?;
    let s = case3_sandwich_check(&setup, w, bound)?;
    let k = koszul_check(&setup, w, bound)?;
    let mut wit = witnesses(&s.failures)?;
    wit.extend(witnesses(&k.failures)?);
    let passed = wit.is_empty();
    Ok(Report::check(
        passed,
        json!({ "window": w, "box": bound, "sandwich": to_value(&s)?, "koszul": to_value(&k)? }),
        wit,
    ))
}

fn check_contractibility(a: &CheckArgs) -> Result<Report> {
    let setup = read_contraction(&a.file)?;
    let w = window(a, 1)?;
    let bbox = opt_rational(&a.bbox, Rational::from_int(12))?;
    let step = opt_rational(&a.step, Rational::new(1, 8).unwrap())?;
    let r = contractibility_check_2d(&setup, w, &bbox, &step)?;
    let mut payload = to_value(&r)?;
    payload["window"] = Value::from(w);
    payload["box"] = to_value(&bbox)?;
    payload["step"] = to_value(&step)?;
    Ok(Report::check(r.disagreements.is_empty(), payload, witnesses(&r.disagreements)?))
}

fn write_svg(path: &Path, svg: &str) -> Result<Value> {
    std::fs::write(path, svg).map_err(|e| CccError::Io(format!("{}: {e}", path.display())))?;
    Ok(json!({ "output": path.display().to_string(), "bytes": svg.len() }))
}

fn plot_lagrangian(file: &Path, window: i64, bbox: &str, output: &Path) -> Result<Report> {
    let fan = read_fan(file)?;
    let bbox = parse_rational(bbox)?;
    let pieces = lambda_skeleton(&fan, window, &bbox)?;
    let svg = svg::lagrangian_svg(&fan, &pieces, &bbox)?;
    let mut payload = write_svg(output, &svg)?;
    payload["pieces"] = Value::from(pieces.len());
    Ok(Report::ok(payload))
}

fn plot_region(
    file: &Path,
    theta: Option<&str>,
    j: Option<&str>,
    phi: Option<&str>,
    bbox: &str,
    output: &Path,
) -> Result<Report> {
    let bbox = parse_rational(bbox)?;
    let (pieces, stroke_closed) = match (read_doc(file)?, theta, j) {
        (Doc::Fan(f), Some(t), None) => (vec![support(&f, &parse_theta(t)?, true)?], true),
        (Doc::Contraction(s), Some(t), None) => {
            let img = fm_case2(&s, &theta_in(&s, &parse_theta(t)?)?)?;
            (vec![img.support], true)
        }
        (Doc::Contraction(s), None, Some(j)) => {
            let theta = pull_theta(&s, j, phi.unwrap_or(""))?;
            let r = fm3_region(&s, &theta)?;
            let bmax = (0..=s.extra_index())
                .flat_map(|i| s.b(i).0)
                .map(|x| x.magnitude().clone())
                .max()
                .unwrap_or_default();
            let tmax = theta.t.iter().map(|x| x.magnitude().clone()).max().unwrap_or_default();
            let w = Rational::from(&BigInt::from(bmax)) * bbox.ceil_r() * Rational::from_int(s.dim() as i64)
                + Rational::from(&BigInt::from(tmax))
                + Rational::from_int(2);
            let w = i64::try_from(w.ceil()).map_err(|_| CccError::invalid("box too large"))?;
            (r.pieces(w)?, false)
        }
        (Doc::SameBase(_), _, _) => return Err(CccError::invalid("region plots take a fan or a contraction setup")),
        _ => return Err(CccError::invalid("give --theta, or --J with --phi for a contraction setup")),
    };
    let svg = svg::region_svg(&pieces, &bbox, stroke_closed)?;
    let mut payload = write_svg(output, &svg)?;
    payload["pieces"] = Value::from(pieces.len());
    Ok(Report::ok(payload))
}
