//! Command-line surface: outcome distributions, verification sweeps,
//! equilibria, phase diagrams and expected payoffs as CSV or JSON.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 probability-range
//! violation (a sign-convention regression), 4 verification tolerance
//! breach.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closedform::{self, full_distribution, OutcomeDistribution, SignConvention};
use crate::equilibrium::{
    boundary_payoff_curve_cos, find_symmetric_pure_ne, find_symmetric_pure_ne_cos,
    pd_phase_boundaries, piecewise_tensor, NePoint, PhaseDiagram,
};
use crate::error::Error;
use crate::frame::{MeasurementFrame, RotorAngles, StateFamily};
use crate::game::{expected_payoff, GameClass, GameSpec, LinearPayoff};
use crate::oracle;

/// Environment variable naming the default directory for `--out` files
/// given as relative paths.
pub const OUT_DIR_ENV: &str = "EPR_GAME_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "epr-game",
    version,
    about = "N-player quantum games in an EPR setting: distributions, equilibria, phase diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact closed-form outcome distribution of a measurement frame
    Dist(DistArgs),
    /// Compare the closed forms against the state-vector simulator over
    /// seeded random frames
    Verify(VerifyArgs),
    /// Symmetric pure Nash equilibria at a given entanglement
    Equilibria(EquilibriaArgs),
    /// Nash-equilibrium zones as a function of cos(gamma)
    PhaseDiagram(PhaseDiagramArgs),
    /// Expected per-player payoffs for a measurement frame
    Payoff(PayoffArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ghz,
    W,
}

impl From<Family> for StateFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Ghz => StateFamily::Ghz,
            Family::W => StateFamily::W,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path (stdout if omitted); relative paths resolve against
    /// EPR_GAME_OUT_DIR when that variable is set
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FrameArgs {
    /// Shared state family
    #[arg(long, value_enum)]
    pub family: Family,
    /// Number of players
    #[arg(long)]
    pub n: usize,
    /// Entanglement angle in radians (GHZ only, ignored for W)
    #[arg(long, conflicts_with = "cos_gamma")]
    pub gamma: Option<f64>,
    /// Entanglement given as cos(gamma) in [0, 1]
    #[arg(long)]
    pub cos_gamma: Option<f64>,
    /// Measurement angles, comma-separated (one per player, or a single
    /// value for all)
    #[arg(long)]
    pub kappa: String,
    /// Rotor angle triples "a1,a2,a3;b1,b2,b3;..." (one per player, or a
    /// single triple for all; defaults to zeros)
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[command(flatten)]
    pub frame: FrameArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// State family to verify
    #[arg(long, value_enum)]
    pub family: Family,
    /// Player counts, a single value or an inclusive range like 2..6
    #[arg(long, value_parser = parse_n_range)]
    pub n: RangeInclusive<usize>,
    /// Random frames per player count
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// PRNG seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum tolerated per-outcome deviation
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Test-harness hook: invert the omega sign table to prove the sweep
    /// catches sign regressions
    #[arg(long, hide = true)]
    pub flip_omega_sign: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EquilibriaArgs {
    /// Number of players
    #[arg(long)]
    pub n: usize,
    /// Linear payoff "a,b,c,d", a preset name (pd-standard, minority,
    /// chicken) or a game-spec JSON file
    #[arg(long)]
    pub payoff: String,
    /// Entanglement angle in radians
    #[arg(long, conflicts_with = "cos_gamma")]
    pub gamma: Option<f64>,
    /// Entanglement given as cos(gamma) in [0, 1]
    #[arg(long)]
    pub cos_gamma: Option<f64>,
    /// Fail unless the payoff parameters classify as a known game
    #[arg(long)]
    pub require_class: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PhaseDiagramArgs {
    /// Number of players
    #[arg(long)]
    pub n: usize,
    /// Linear payoff "a,b,c,d" or a preset name; must classify as a
    /// prisoner dilemma
    #[arg(long)]
    pub payoff: String,
    /// Also emit sampled points of the boundary payoff parabola
    #[arg(long)]
    pub curve: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PayoffArgs {
    #[command(flatten)]
    pub frame: FrameArgs,
    /// Linear payoff "a,b,c,d", a preset name or a game-spec JSON file
    #[arg(long)]
    pub payoff: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub struct CmdError {
    pub code: u8,
    pub message: String,
}

impl CmdError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CmdError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::ProbabilityOutOfRange { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn parse_n_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse_one = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid player count {v:?}"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(lo..=hi)
    } else {
        let v = parse_one(s)?;
        Ok(v..=v)
    }
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CmdError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CmdError::config(format!("invalid {what} value {tok:?}")))
        })
        .collect()
}

fn broadcast<T: Clone>(mut values: Vec<T>, n: usize, what: &str) -> Result<Vec<T>, CmdError> {
    if values.len() == 1 && n > 1 {
        values = vec![values[0].clone(); n];
    }
    if values.len() != n {
        return Err(CmdError::config(format!(
            "expected {n} {what} entries, got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn parse_alphas(s: &str) -> Result<Vec<RotorAngles>, CmdError> {
    s.split(';')
        .map(|triple| {
            let parts = parse_f64_list(triple, "alpha")?;
            if parts.len() != 3 {
                return Err(CmdError::config(format!(
                    "alpha triple {triple:?} must have exactly three angles"
                )));
            }
            Ok(RotorAngles::new(parts[0], parts[1], parts[2]))
        })
        .collect()
}

fn resolve_gamma(gamma: Option<f64>, cos_gamma: Option<f64>) -> Result<f64, CmdError> {
    match (gamma, cos_gamma) {
        (Some(g), None) => Ok(g),
        (None, Some(c)) => {
            if !(0.0..=1.0).contains(&c) {
                return Err(CmdError::config(format!(
                    "--cos-gamma must lie in [0, 1], got {c}"
                )));
            }
            Ok(c.acos())
        }
        (None, None) => Ok(0.0),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn build_frame(args: &FrameArgs) -> Result<MeasurementFrame, CmdError> {
    let gamma = resolve_gamma(args.gamma, args.cos_gamma)?;
    let kappas = broadcast(parse_f64_list(&args.kappa, "kappa")?, args.n, "kappa")?;
    let rotors = match &args.alpha {
        Some(s) => broadcast(parse_alphas(s)?, args.n, "alpha")?,
        None => vec![RotorAngles::IDENTITY; args.n],
    };
    Ok(MeasurementFrame::new(
        args.family.into(),
        gamma,
        rotors,
        kappas,
    )?)
}

/// Payoff presets for the named games.
fn parse_payoff(spec: &str, n_players: usize) -> Result<GameSpec, CmdError> {
    let trimmed = spec.trim();
    let preset = trimmed
        .strip_suffix("-preset")
        .unwrap_or(trimmed)
        .to_ascii_lowercase();
    match preset.as_str() {
        "pd-standard" => return Ok(GameSpec::linear(n_players, LinearPayoff::standard_pd())?),
        "minority" => {
            return Ok(GameSpec::linear(
                n_players,
                LinearPayoff::minority(n_players),
            )?)
        }
        "chicken" => return Ok(GameSpec::linear(n_players, LinearPayoff::chicken())?),
        // the Flitney-Hollenberg piecewise variant
        "piecewise" | "appendix-b" => {
            return Ok(GameSpec::tensor(n_players, piecewise_tensor(n_players)?)?)
        }
        _ => {}
    }
    if trimmed.contains(',') {
        let values = parse_f64_list(trimmed, "payoff")?;
        if values.len() != 4 {
            return Err(CmdError::config(
                "linear payoff needs exactly four values a,b,c,d",
            ));
        }
        return Ok(GameSpec::linear(
            n_players,
            LinearPayoff::new(values[0], values[1], values[2], values[3]),
        )?);
    }
    let path = PathBuf::from(trimmed);
    if path.exists() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CmdError::config(format!("cannot read {}: {e}", path.display())))?;
        let game: GameSpec = serde_json::from_str(&text)
            .map_err(|e| CmdError::config(format!("invalid game spec {}: {e}", path.display())))?;
        if game.n_players() != n_players {
            return Err(CmdError::config(format!(
                "game spec is for {} players, --n is {n_players}",
                game.n_players()
            )));
        }
        return Ok(game);
    }
    Err(CmdError::config(format!(
        "unknown payoff {spec:?}: expected a,b,c,d, a preset (pd-standard, minority, chicken, piecewise) or a JSON file"
    )))
}

fn require_linear(game: &GameSpec) -> Result<LinearPayoff, CmdError> {
    game.linear_payoff()
        .copied()
        .ok_or_else(|| CmdError::config("this command needs linear payoff parameters a,b,c,d"))
}

/// Round-trip-safe decimal rendering (17 significant digits).
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), CmdError> {
    match &output.out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let resolved = if path.is_relative() {
                match std::env::var_os(OUT_DIR_ENV) {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            if let Some(parent) = resolved.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| {
                        CmdError::config(format!("cannot create {}: {e}", parent.display()))
                    })?;
                }
            }
            std::fs::write(&resolved, content)
                .map_err(|e| CmdError::config(format!("cannot write {}: {e}", resolved.display())))
        }
    }
}

/// JSON mirror of the `dist` output.
#[derive(Serialize, Deserialize)]
pub struct DistReport {
    pub family: StateFamily,
    pub n_players: usize,
    pub gamma: f64,
    pub probabilities: BTreeMap<String, f64>,
    pub total: f64,
}

fn render_dist(frame: &MeasurementFrame, dist: &OutcomeDistribution, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("outcome,probability\n");
            for (outcome, p) in dist.iter() {
                let _ = writeln!(out, "{},{}", outcome.bitstring(), fmt_f64(p));
            }
            let _ = writeln!(out, "total,{}", fmt_f64(dist.sum()));
            out
        }
        Format::Json => {
            let report = DistReport {
                family: frame.family(),
                n_players: frame.n_players(),
                gamma: frame.gamma(),
                probabilities: dist.as_map(),
                total: dist.sum(),
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
    }
}

fn cmd_dist(args: &DistArgs) -> Result<(), CmdError> {
    let frame = build_frame(&args.frame)?;
    let dist = full_distribution(&frame)?;
    emit(
        &args.output,
        &render_dist(&frame, &dist, args.output.format),
    )
}

/// One row of the verification report.
#[derive(Serialize, Deserialize)]
pub struct VerifyRow {
    pub family: StateFamily,
    pub n_players: usize,
    pub samples: usize,
    pub max_abs_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

/// JSON mirror of the `verify` output.
#[derive(Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

fn random_frame(rng: &mut ChaCha8Rng, family: StateFamily, n: usize) -> MeasurementFrame {
    use std::f64::consts::{FRAC_PI_2, TAU};
    let rotors: Vec<RotorAngles> = (0..n)
        .map(|_| {
            RotorAngles::new(
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..TAU),
            )
        })
        .collect();
    let kappas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
    let gamma = match family {
        StateFamily::Ghz => rng.gen_range(-FRAC_PI_2..=FRAC_PI_2),
        StateFamily::W => 0.0,
    };
    MeasurementFrame::new(family, gamma, rotors, kappas).expect("sampled frame is valid")
}

/// Deterministic per-count RNG so reports do not depend on the order the
/// counts are swept.
fn sweep_rng(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub(crate) fn verify_sweep(
    family: StateFamily,
    n: usize,
    samples: usize,
    seed: u64,
    convention: &SignConvention,
) -> Result<f64, Error> {
    let mut rng = sweep_rng(seed, n);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let frame = random_frame(&mut rng, family, n);
        let closed = closedform::full_distribution_with(&frame, convention)?;
        let truth = oracle::frame_distribution(&frame)?;
        for (a, b) in closed.probabilities().iter().zip(truth.probabilities()) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

/// Verification sweeps stay below the simulator cap so each sweep is
/// milliseconds, not minutes.
const VERIFY_LIMIT: usize = 14;

fn cmd_verify(args: &VerifyArgs) -> Result<(), CmdError> {
    let family: StateFamily = args.family.into();
    let convention = if args.flip_omega_sign {
        SignConvention::PINNED.with_flipped_omega()
    } else {
        SignConvention::PINNED
    };
    let mut rows = Vec::new();
    for n in args.n.clone() {
        if !(2..=VERIFY_LIMIT).contains(&n) {
            return Err(CmdError::config(format!(
                "verification needs 2 <= n <= {VERIFY_LIMIT}, got {n}"
            )));
        }
        let max_abs_dev = verify_sweep(family, n, args.samples, args.seed, &convention)?;
        rows.push(VerifyRow {
            family,
            n_players: n,
            samples: args.samples,
            max_abs_dev,
            tol: args.tol,
            pass: max_abs_dev <= args.tol,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("family,n,samples,max_abs_dev,tol,status\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:?},{},{},{},{},{}",
                    r.family,
                    r.n_players,
                    r.samples,
                    fmt_f64(r.max_abs_dev),
                    fmt_f64(r.tol),
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            let _ = writeln!(out, "overall,,,,,{}", if pass { "pass" } else { "FAIL" });
            out
        }
        Format::Json => {
            let report = VerifyReport {
                seed: args.seed,
                rows,
                pass,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&args.output, &content)?;
    if pass {
        Ok(())
    } else {
        Err(CmdError {
            code: 4,
            message: "closed form deviates from the state-vector simulator beyond --tol".into(),
        })
    }
}

/// JSON mirror of the `equilibria` output.
#[derive(Serialize, Deserialize)]
pub struct EquilibriaReport {
    pub n_players: usize,
    pub payoff: LinearPayoff,
    pub gamma: f64,
    pub equilibria: Vec<NePoint>,
}

fn cmd_equilibria(args: &EquilibriaArgs) -> Result<(), CmdError> {
    let game = parse_payoff(&args.payoff, args.n)?;
    let lp = require_linear(&game)?;
    if args.require_class && lp.classify(args.n) == GameClass::Unclassified {
        return Err(CmdError::config(
            "payoff parameters do not classify as a known game (--require-class)",
        ));
    }
    let gamma = resolve_gamma(args.gamma, args.cos_gamma)?;
    // going through cos(gamma) directly keeps exact boundary ties exact
    let points = match args.cos_gamma {
        Some(c) => find_symmetric_pure_ne_cos(&lp, args.n, c)?,
        None => find_symmetric_pure_ne(&lp, args.n, gamma)?,
    };
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("cooperators,payoff_cooperate,payoff_defect,on_boundary\n");
            for p in &points {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    p.cooperators,
                    fmt_opt(p.payoff_cooperate),
                    fmt_opt(p.payoff_defect),
                    p.on_boundary
                );
            }
            out
        }
        Format::Json => {
            let report = EquilibriaReport {
                n_players: args.n,
                payoff: lp,
                gamma,
                equilibria: points,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&args.output, &content)
}

/// One sampled point of the boundary payoff parabola.
#[derive(Serialize, Deserialize)]
pub struct CurvePoint {
    pub cos_gamma: f64,
    pub defector_payoff: f64,
}

/// JSON mirror of the `phase-diagram` output.
#[derive(Serialize, Deserialize)]
pub struct PhaseDiagramReport {
    #[serde(flatten)]
    pub diagram: PhaseDiagram,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<CurvePoint>>,
}

fn curve_points(lp: &LinearPayoff, diagram: &PhaseDiagram) -> Result<Vec<CurvePoint>, CmdError> {
    let mut grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    grid.extend(diagram.zones.iter().map(|z| z.cos_gamma_lo));
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    grid.dedup();
    grid.into_iter()
        .map(|c| {
            Ok(CurvePoint {
                cos_gamma: c,
                defector_payoff: boundary_payoff_curve_cos(lp, diagram.n_players, c)?,
            })
        })
        .collect()
}

fn cmd_phase_diagram(args: &PhaseDiagramArgs) -> Result<(), CmdError> {
    let game = parse_payoff(&args.payoff, args.n)?;
    let lp = require_linear(&game)?;
    let diagram = pd_phase_boundaries(&lp, args.n)?;
    let curve = if args.curve {
        Some(curve_points(&lp, &diagram)?)
    } else {
        None
    };
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from(
                "n,cos_gamma_lo,cos_gamma_hi,payoff_coop_at_lo,payoff_coop_at_hi,\
                 payoff_defect_at_lo,payoff_defect_at_hi\n",
            );
            for z in &diagram.zones {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    z.cooperators,
                    fmt_f64(z.cos_gamma_lo),
                    fmt_f64(z.cos_gamma_hi),
                    fmt_opt(z.payoff_cooperate.map(|l| l.eval_cos(z.cos_gamma_lo))),
                    fmt_opt(z.payoff_cooperate.map(|l| l.eval_cos(z.cos_gamma_hi))),
                    fmt_opt(z.payoff_defect.map(|l| l.eval_cos(z.cos_gamma_lo))),
                    fmt_opt(z.payoff_defect.map(|l| l.eval_cos(z.cos_gamma_hi))),
                );
            }
            if let Some(curve) = &curve {
                out.push_str("\ncos_gamma,defector_payoff\n");
                for point in curve {
                    let _ = writeln!(
                        out,
                        "{},{}",
                        fmt_f64(point.cos_gamma),
                        fmt_f64(point.defector_payoff)
                    );
                }
            }
            out
        }
        Format::Json => {
            let report = PhaseDiagramReport { diagram, curve };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&args.output, &content)
}

/// JSON mirror of the `payoff` output.
#[derive(Serialize, Deserialize)]
pub struct PayoffReport {
    pub family: StateFamily,
    pub n_players: usize,
    pub gamma: f64,
    /// Expected payoffs in player order (player 1 first).
    pub payoffs: Vec<f64>,
}

fn cmd_payoff(args: &PayoffArgs) -> Result<(), CmdError> {
    let frame = build_frame(&args.frame)?;
    let game = parse_payoff(&args.payoff, frame.n_players())?;
    let dist = full_distribution(&frame)?;
    let payoffs: Vec<f64> = (0..frame.n_players())
        .map(|p| expected_payoff(&dist, &game, p))
        .collect::<Result<_, _>>()?;
    let content = match args.output.format {
        Format::Csv => {
            let mut out = String::from("player,expected_payoff\n");
            for (i, p) in payoffs.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, fmt_f64(*p));
            }
            out
        }
        Format::Json => {
            let report = PayoffReport {
                family: frame.family(),
                n_players: frame.n_players(),
                gamma: frame.gamma(),
                payoffs,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
    };
    emit(&args.output, &content)
}

pub fn run(cli: &Cli) -> Result<(), CmdError> {
    match &cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Equilibria(args) => cmd_equilibria(args),
        Command::PhaseDiagram(args) => cmd_phase_diagram(args),
        Command::Payoff(args) => cmd_payoff(args),
    }
}
