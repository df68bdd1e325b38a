use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncalg::algebra::{Presentation, DEFAULT_PATH_CAP};
use ncalg::catalog::{run_suite, Check, Suite, VerifyConfig, DEFAULT_SEED};
use ncalg::datum::{VLDatum, OA_HYPOTHESIS};
use ncalg::monomial::MonomialPresentation;
use ncalg::prepro::preprojective_datum;
use ncalg::quiver::Quiver;
use ncalg::randmat::mc_matrix_integral;
use ncalg::series::{MatSeries, TruncSeries, DEFAULT_DET_BOUND};

#[derive(Parser)]
#[command(name = "ncalg", version, about = "Hilbert series of noncommutative complete intersections over quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form series of an algebra: h(A), zeta, lambda, h(O(A)) and Hochschild series.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run bundled verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo estimate of the unitary matrix integral.
    Mc {
        #[command(flatten)]
        input: InputArgs,
        /// Dimension vector, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Divide each sample by lambda(L°) and compare with h(O(A)) instead of zeta.
        #[arg(long)]
        over_lambda: bool,
        /// Width of the acceptance band in standard errors.
        #[arg(long, default_value_t = 3.0)]
        sigmas: f64,
        /// Absolute slack added to the band.
        #[arg(long, default_value_t = 0.05)]
        floor: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// (V, L) datum JSON.
    #[arg(long)]
    datum: Option<PathBuf>,
    /// Quiver JSON; its preprojective algebra is used.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Presentation JSON (quiver plus relations).
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Monomial presentation JSON (alphabet plus forbidden words).
    #[arg(long)]
    monomial: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    path_cap: usize,
    #[arg(long, default_value_t = DEFAULT_DET_BOUND)]
    det_bound: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Affine,
    Dtable,
    Molien,
    Oracle,
    Monomial,
    Partial,
    Super,
    Riemsur,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Affine => vec![Suite::Affine],
            SuiteArg::Dtable => vec![Suite::Dtable],
            SuiteArg::Molien => vec![Suite::Molien],
            SuiteArg::Oracle => vec![Suite::Oracle],
            SuiteArg::Monomial => vec![Suite::Monomial],
            SuiteArg::Partial => vec![Suite::Partial],
            SuiteArg::Super => vec![Suite::Super],
            SuiteArg::Riemsur => vec![Suite::Riemsur],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

const DEFAULT_ORDER: usize = 8;

/// Exit 1: a check failed. Exit 2: bad input or a computation that could not run.
enum Failure {
    Verify(String),
    Input(String),
}

impl From<ncalg::Error> for Failure {
    fn from(e: ncalg::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_datum(input: &InputArgs, order: usize) -> Result<VLDatum, Failure> {
    if let Some(p) = &input.datum {
        return read_json(p);
    }
    if let Some(p) = &input.quiver {
        let q: Quiver = read_json(p)?;
        return Ok(preprojective_datum(&q)?);
    }
    if let Some(p) = &input.presentation {
        let pres: Presentation = read_json(p)?;
        return Ok(VLDatum::from_presentation(pres, order.max(1)));
    }
    if let Some(p) = &input.monomial {
        let m: MonomialPresentation = read_json(p)?;
        return Ok(m.to_datum());
    }
    Err(Failure::Input("no input given".into()))
}

fn strings(s: &TruncSeries) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn float_strings(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| format!("{x:.6}")).collect()
}

fn emit(format: Format, json: &Value, rows: &[(String, Vec<String>)]) {
    let mut out = String::new();
    match format {
        Format::Json => out = serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Csv => {
            out.push_str("series,degree,value\n");
            for (name, vals) in rows {
                for (k, v) in vals.iter().enumerate() {
                    let _ = writeln!(out, "{name},{k},{v}");
                }
            }
        }
        Format::Text => {
            let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            for (name, vals) in rows {
                let _ = writeln!(out, "{name:width$}  {}", vals.join(" "));
            }
        }
    }
    print_all(&out);
}

// a closed pipe (`| head`) is not worth reporting
fn print_all(out: &str) {
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), out.as_bytes());
}

fn matrix_rows(name: &str, m: &MatSeries) -> Vec<(String, Vec<String>)> {
    let mut rows = Vec::new();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            rows.push((format!("{name}[{i};{j}]"), strings(m.get(i, j))));
        }
    }
    rows
}

fn cmd_hilbert(input: &InputArgs, c: &CommonArgs) -> Result<(), Failure> {
    let order = c.order.unwrap_or(DEFAULT_ORDER);
    let datum = load_datum(input, order)?;
    let h_a = datum.hilbert_a(order)?;
    let zeta = datum.zeta_bounded(order, c.det_bound)?;
    let lambda = datum.lambda_poly(order);
    let h_oa = datum.hilbert_oa_bounded(order, c.det_bound)?;
    let hh = datum.hochschild_series_bounded(order, c.det_bound)?;
    let json = json!({
        "order": order,
        "h_a": h_a,
        "zeta": zeta,
        "lambda": lambda,
        "h_oa": h_oa,
        "hochschild": hh,
        "hypothesis": OA_HYPOTHESIS,
    });
    let mut rows = matrix_rows("h_a", &h_a);
    rows.push(("h_a_total".into(), strings(&h_a.entry_sum())));
    for (name, s) in
        [("zeta", &zeta), ("lambda", &lambda), ("h_oa", &h_oa), ("hh0", &hh.hh0), ("hh1", &hh.hh1), ("hh2", &hh.hh2)]
    {
        rows.push((name.into(), strings(s)));
    }
    emit(c.format, &json, &rows);
    Ok(())
}

fn cmd_verify(suite: SuiteArg, c: &CommonArgs) -> Result<(), Failure> {
    let cfg = VerifyConfig { order: c.order, path_cap: c.path_cap, det_bound: c.det_bound, seed: c.seed };
    let mut checks: Vec<Check> = Vec::new();
    for s in suite.suites() {
        checks.extend(run_suite(s, &cfg)?);
    }
    let passed = checks.iter().all(|ch| ch.passed);
    let mut out = String::new();
    match c.format {
        Format::Json => {
            out = serde_json::to_string_pretty(&json!({ "passed": passed, "checks": checks })).expect("serializable");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("suite,name,passed,order,first_diff\n");
            for ch in &checks {
                let diff = ch.first_diff.map(|k| k.to_string()).unwrap_or_default();
                let _ =
                    writeln!(out, "{},\"{}\",{},{},{}", ch.suite, ch.name.replace('"', "'"), ch.passed, ch.order, diff);
            }
        }
        Format::Text => {
            for ch in &checks {
                let _ = write!(out, "{} {:8} {}", if ch.passed { "PASS" } else { "FAIL" }, ch.suite, ch.name);
                if let Some(k) = ch.first_diff {
                    let _ = write!(out, " (first difference at t^{k}");
                    if let Some(d) = &ch.detail {
                        let _ = write!(out, ": {d}");
                    }
                    out.push(')');
                }
                out.push('\n');
            }
        }
    }
    print_all(&out);
    if passed {
        Ok(())
    } else {
        let first = checks.iter().find(|ch| !ch.passed).expect("a failing check");
        Err(Failure::Verify(format!("{} / {}: first difference at {:?}", first.suite, first.name, first.first_diff)))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_mc(
    input: &InputArgs,
    dims: &[usize],
    samples: usize,
    over_lambda: bool,
    sigmas: f64,
    floor: f64,
    c: &CommonArgs,
) -> Result<(), Failure> {
    let order = c.order.unwrap_or(4);
    let datum = load_datum(input, order)?;
    let est = mc_matrix_integral(&datum, dims, order, samples, c.seed, over_lambda)?;
    let target = if over_lambda {
        datum.hilbert_oa_bounded(order, c.det_bound)?
    } else {
        datum.zeta_bounded(order, c.det_bound)?
    };
    let target_f: Vec<f64> = target.coeffs().iter().map(|x| x.to_string().parse::<f64>().unwrap_or(f64::NAN)).collect();
    let ok = est.within(&target_f, sigmas, floor);
    let sigma = est.sigma_distances(&target_f);
    let passed = ok.iter().all(|&b| b);
    let json = json!({
        "dims": dims.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "order": order,
        "samples": samples.to_string(),
        "seed": c.seed.to_string(),
        "over_lambda": over_lambda,
        "mean": float_strings(&est.mean),
        "mean_im": float_strings(&est.mean_im),
        "stderr": float_strings(&est.stderr),
        "target": strings(&target),
        "sigma_distance": float_strings(&sigma),
        "pass": ok,
        "passed": passed,
    });
    let rows = vec![
        ("mean".into(), float_strings(&est.mean)),
        ("mean_im".into(), float_strings(&est.mean_im)),
        ("stderr".into(), float_strings(&est.stderr)),
        ("target".into(), strings(&target)),
        ("sigma".into(), float_strings(&sigma)),
        ("pass".into(), ok.iter().map(ToString::to_string).collect()),
    ];
    emit(c.format, &json, &rows);
    if passed {
        Ok(())
    } else {
        let worst = sigma.iter().cloned().fold(0.0, f64::max);
        Err(Failure::Verify(format!("estimate outside the band; largest distance {worst:.2} sigma")))
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("NCALG_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("NCALG_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(Failure::Input("NCALG_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Hilbert { input, common } => cmd_hilbert(input, common),
        Command::Verify { suite, common } => cmd_verify(*suite, common),
        Command::Mc { input, dims, samples, over_lambda, sigmas, floor, common } => {
            cmd_mc(input, dims, *samples, *over_lambda, *sigmas, *floor, common)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
