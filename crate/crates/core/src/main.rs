//! Command-line front end: exponent reports, kernel verification,
//! exact-vs-FD validation, blow-up simulation and lifespan scans.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use critwave::blowup::{self, Outcome, Profile, SimConfig};
use critwave::exponents::{ExponentReport, ScaleInvariantModel, TransformedModel};
use critwave::kernels::{self, KernelParams};
use critwave::quad::QuadConfig;
use critwave::solver1d::{self, CauchyData1D};

#[derive(Parser)]
#[command(name = "critwave", version, about = "Critical-exponent calculus and blow-up simulation for wave equations with time-dependent speed")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print all critical exponents, the classification and (with --p) the
    /// blow-up verdict as JSON.
    Exponents {
        /// Space dimension
        #[arg(long)]
        n: usize,
        /// Damping coefficient mu1 (model side)
        #[arg(long)]
        mu1: Option<f64>,
        /// Mass coefficient mu2^2 (model side)
        #[arg(long)]
        mu2sq: Option<f64>,
        /// Interpret --ell/--k directly instead of (mu1, mu2sq)
        #[arg(long)]
        transformed: bool,
        /// Speed exponent ell (transformed side)
        #[arg(long)]
        ell: Option<f64>,
        /// Source exponent k (transformed side)
        #[arg(long)]
        k: Option<f64>,
        /// Nonlinearity exponent; enables the verdict
        #[arg(long)]
        p: Option<f64>,
        /// Write JSON here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the fundamental-solution identities at random sample points.
    VerifyKernels {
        /// Speed exponent(s); may be repeated
        #[arg(long, default_values_t = [0.0, 1.0, 2.0])]
        ell: Vec<f64>,
        /// Number of random (t, b) pairs per ell
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// RNG seed
        #[arg(long, default_value_t = 12345)]
        seed: u64,
        /// Maximum allowed deviation
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the exact 1D representation formula with the FD oracle at
    /// probe points; emits a CSV of x, exact, fd, error.
    Solve1d {
        /// Flat key=value config file (ell, t, dx, cfl, radius, u0, u1, probes)
        #[arg(long)]
        config: PathBuf,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one blow-up simulation; emits the functional-trace CSV.
    Simulate {
        /// Flat key=value config file with SimConfig field names
        #[arg(long)]
        config: PathBuf,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scan amplitudes and tabulate blow-up time estimates.
    Lifespan {
        /// Flat key=value config file with SimConfig field names
        #[arg(long)]
        config: PathBuf,
        /// Amplitude; may be repeated
        #[arg(long, required = true)]
        epsilon: Vec<f64>,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample the classification-region boundary curves over a mu1 grid
    /// (mu2^2 = 0); emits mu1, strauss branch, fujita branch, p_mu rows.
    Figure1 {
        /// Space dimension
        #[arg(long)]
        n: usize,
        /// Number of mu1 grid points
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failures split by exit code: 2 for bad parameters, 1 for runtime errors.
enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// 17-significant-digit decimal, the fixed numeric format for CSV output.
fn fmt(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    config: serde_json::Value,
    version: String,
    duration_seconds: f64,
    outputs: Vec<String>,
}

/// Writes `content` to `output` (or stdout) and, for file output, a sibling
/// manifest recording the resolved configuration and timing.
fn emit(
    command: &str,
    config: serde_json::Value,
    content: &str,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, content)
                .map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))?;
            let manifest_path = manifest_path(path);
            let manifest = RunManifest {
                command: command.to_string(),
                config,
                version: env!("CARGO_PKG_VERSION").to_string(),
                duration_seconds: started.elapsed().as_secs_f64(),
                outputs: vec![path.display().to_string()],
            };
            let body = serde_json::to_string_pretty(&manifest)
                .map_err(CliError::runtime)?;
            fs::write(&manifest_path, body).map_err(|e| {
                CliError::runtime(format!("writing {}: {e}", manifest_path.display()))
            })?;
            Ok(())
        }
    }
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Flat key=value config file; '#' starts a comment, blank lines ignored.
fn read_kv(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("reading {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("{}:{}: expected key=value", path.display(), idx + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::usage(format!("config key '{key}': {e}")))
}

fn sim_config_from(map: &BTreeMap<String, String>) -> Result<SimConfig, CliError> {
    let mut cfg = SimConfig::default();
    for (key, value) in map {
        match key.as_str() {
            "n" => cfg.n = parse_value(key, value)?,
            "ell" => cfg.ell = parse_value(key, value)?,
            "k" => cfg.k = parse_value(key, value)?,
            "p" => cfg.p = parse_value(key, value)?,
            "epsilon" => cfg.epsilon = parse_value(key, value)?,
            "u0" => cfg.u0 = Profile::parse(value).map_err(CliError::usage)?,
            "u1" => cfg.u1 = Profile::parse(value).map_err(CliError::usage)?,
            "radius" => cfg.radius = parse_value(key, value)?,
            "dx" => cfg.dx = parse_value(key, value)?,
            "cfl" => cfg.cfl = parse_value(key, value)?,
            "blowup_threshold" => cfg.blowup_threshold = parse_value(key, value)?,
            "t_max" => cfg.t_max = parse_value(key, value)?,
            "linear" => cfg.linear = parse_value(key, value)?,
            other => {
                return Err(CliError::usage(format!("unknown config key '{other}'")));
            }
        }
    }
    cfg.validate().map_err(CliError::usage)?;
    Ok(cfg)
}

fn run(command: Command) -> Result<(), CliError> {
    let started = Instant::now();
    match command {
        Command::Exponents {
            n,
            mu1,
            mu2sq,
            transformed,
            ell,
            k,
            p,
            output,
        } => {
            let report = if transformed {
                let (ell, k) = match (ell, k) {
                    (Some(ell), Some(k)) => (ell, k),
                    _ => {
                        return Err(CliError::Usage(
                            "--transformed requires --ell and --k".into(),
                        ))
                    }
                };
                let model = TransformedModel::new(n, ell, k).map_err(CliError::usage)?;
                ExponentReport::for_transformed(&model, p).map_err(CliError::usage)?
            } else {
                let (mu1, mu2sq) = match (mu1, mu2sq) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(CliError::Usage(
                            "either --mu1 and --mu2sq, or --transformed with --ell and --k".into(),
                        ))
                    }
                };
                let model = ScaleInvariantModel::new(n, mu1, mu2sq).map_err(CliError::usage)?;
                ExponentReport::for_model(&model, p).map_err(CliError::usage)?
            };
            let mut body = serde_json::to_string_pretty(&report).map_err(CliError::runtime)?;
            body.push('\n');
            let config = serde_json::json!({
                "n": n, "mu1": mu1, "mu2sq": mu2sq,
                "transformed": transformed, "ell": ell, "k": k, "p": p,
            });
            emit("exponents", config, &body, &output, started)
        }

        Command::VerifyKernels {
            ell,
            samples,
            seed,
            tol,
            output,
        } => {
            let mut body = String::from("ell,max_deviation,pass\n");
            let mut worst = 0.0f64;
            for &ell in &ell {
                let params = KernelParams::new(ell).map_err(CliError::usage)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ell.to_bits());
                let mut max_dev = 0.0f64;
                for _ in 0..samples {
                    let t: f64 = rng.gen_range(0.1..5.0);
                    let b: f64 = rng.gen_range(0.0..t * 0.95);
                    let inner_seed = rng.gen();
                    let report = kernels::verify_lemma41(t, b, &params, 8, inner_seed)
                        .map_err(CliError::runtime)?;
                    max_dev = max_dev.max(report.max_deviation());
                }
                worst = worst.max(max_dev);
                body.push_str(&format!(
                    "{},{},{}\n",
                    fmt(ell),
                    fmt(max_dev),
                    if max_dev <= tol { 1 } else { 0 }
                ));
            }
            let config = serde_json::json!({
                "ell": ell, "samples": samples, "seed": seed, "tol": tol,
            });
            emit("verify-kernels", config, &body, &output, started)?;
            if worst > tol {
                return Err(CliError::Runtime(format!(
                    "kernel identity deviation {worst:e} exceeds tolerance {tol:e}"
                )));
            }
            Ok(())
        }

        Command::Solve1d { config, output } => {
            let map = read_kv(&config)?;
            let mut ell = 0.0f64;
            let mut t = 1.0f64;
            let mut dx = 0.02f64;
            let mut cfl = 0.5f64;
            let mut radius = 1.0f64;
            let mut u0 = Profile::Bump;
            let mut u1 = Profile::Zero;
            let mut probes = 41usize;
            for (key, value) in &map {
                match key.as_str() {
                    "ell" => ell = parse_value(key, value)?,
                    "t" => t = parse_value(key, value)?,
                    "dx" => dx = parse_value(key, value)?,
                    "cfl" => cfl = parse_value(key, value)?,
                    "radius" => radius = parse_value(key, value)?,
                    "u0" => u0 = Profile::parse(value).map_err(CliError::usage)?,
                    "u1" => u1 = Profile::parse(value).map_err(CliError::usage)?,
                    "probes" => probes = parse_value(key, value)?,
                    other => {
                        return Err(CliError::usage(format!("unknown config key '{other}'")));
                    }
                }
            }
            if probes < 2 || radius <= 0.0 || t <= 0.0 {
                return Err(CliError::Usage(
                    "require probes >= 2, radius > 0, t > 0".into(),
                ));
            }
            let params = KernelParams::new(ell).map_err(CliError::usage)?;
            let data = CauchyData1D::homogeneous(
                move |x: f64| u0.eval(x, radius),
                move |x: f64| u1.eval(x, radius),
                radius,
            )
            .map_err(CliError::usage)?;
            let grid =
                solver1d::solve_fd(&data, &params, t, dx, cfl).map_err(CliError::runtime)?;
            let span = radius + kernels::cap_a(t, ell);
            let q = QuadConfig::default();
            let mut body = String::from("x,exact,fd,error\n");
            for i in 0..probes {
                let x = -span + 2.0 * span * i as f64 / (probes - 1) as f64;
                let exact =
                    solver1d::solve_exact(t, x, &data, &params, q).map_err(CliError::runtime)?;
                let fd = grid.value_at(x);
                body.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(x),
                    fmt(exact),
                    fmt(fd),
                    fmt((exact - fd).abs())
                ));
            }
            let config_json = serde_json::json!({
                "ell": ell, "t": t, "dx": dx, "cfl": cfl, "radius": radius,
                "u0": u0, "u1": u1, "probes": probes,
            });
            emit("solve1d", config_json, &body, &output, started)
        }

        Command::Simulate { config, output } => {
            let map = read_kv(&config)?;
            let cfg = sim_config_from(&map)?;
            let (trace, outcome) = blowup::simulate(&cfg).map_err(CliError::runtime)?;
            let mut body = String::from("t,G,dG,G1,Lp_mass,sup_norm\n");
            for s in &trace.samples {
                body.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(s.t),
                    fmt(s.g),
                    fmt(s.dg),
                    fmt(s.g1),
                    fmt(s.lp_mass),
                    fmt(s.sup_norm)
                ));
            }
            match outcome {
                Outcome::BlewUpAt(t_est) => eprintln!("outcome: blew up at t = {}", fmt(t_est)),
                Outcome::ReachedHorizon => eprintln!("outcome: reached horizon"),
            }
            let config_json = serde_json::to_value(&cfg).map_err(CliError::runtime)?;
            emit("simulate", config_json, &body, &output, started)
        }

        Command::Lifespan {
            config,
            epsilon,
            output,
        } => {
            let map = read_kv(&config)?;
            let cfg = sim_config_from(&map)?;
            if epsilon.iter().any(|&e| e <= 0.0) {
                return Err(CliError::Usage("amplitudes must be positive".into()));
            }
            let rows = blowup::lifespan_scan(&cfg, &epsilon).map_err(CliError::runtime)?;
            let mut body = String::from("epsilon,T_est,censored\n");
            for row in &rows {
                let (t_est, censored) = match row.t_est {
                    Some(t) => (t, 0),
                    None => (cfg.t_max, 1),
                };
                body.push_str(&format!(
                    "{},{},{}\n",
                    fmt(row.epsilon),
                    fmt(t_est),
                    censored
                ));
            }
            let config_json = serde_json::to_value(&cfg).map_err(CliError::runtime)?;
            emit("lifespan", config_json, &body, &output, started)
        }

        Command::Figure1 { n, points, output } => {
            if n == 0 || points < 2 {
                return Err(CliError::Usage("require n >= 1 and points >= 2".into()));
            }
            // mu2^2 = 0 slice of the (mu1, p) plane; delta = (mu1 - 1)^2
            // is admissible on [0, 2] away from mu1 = 1
            let mut body = String::from("mu1,strauss_branch,fujita_branch,p_mu\n");
            for i in 0..points {
                let mu1 = 2.0 * i as f64 / (points - 1) as f64;
                let Ok((strauss, fujita)) = critwave::exponents::p_mu_branches(n, mu1, 0.0) else {
                    continue; // delta = 0 at mu1 = 1: outside the admissible range
                };
                body.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(mu1),
                    fmt(strauss.value()),
                    fmt(fujita.value()),
                    fmt(strauss.max(fujita).value())
                ));
            }
            let config = serde_json::json!({ "n": n, "points": points, "mu2sq": 0.0 });
            emit("figure1", config, &body, &output, started)
        }
    }
}
