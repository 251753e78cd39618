//! Subcommand definitions and their table outputs.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qecbound::bath::{
    d_sat, gamma_series, mmax_multi, mmax_single, trace_distance_single, trace_distance_upper, zeta_and_regime, Axis,
    HsEvaluator, MmaxMode, StepBound, SumKind,
};
use qecbound::pauli::{
    classify, gf2_rank, paulis_of_weight, syndrome, verify_distance, ErrorClass, Pauli, PauliString, Phase,
    StabilizerCode,
};
use qecbound::EtaTable;

use crate::model::Model;
use crate::output::{num, steps, Table};

#[derive(Debug, Parser)]
#[command(name = "qecbound", version, about = "Computation-time bounds for a QEC code in a correlated bosonic bath")]
pub struct Cli {
    /// Run configuration (TOML). Required except for `eta` and `code-check`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Use this λ* for every configured channel instead of computing it.
    #[arg(long, global = true)]
    pub lambda_star: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Third-order η table of the code (eta.txt, eta.csv).
    Eta,
    /// Brute-force checks of the code and the Pauli algebra.
    CodeCheck,
    #[command(flatten)]
    Job(Job),
    /// Vary one scalar config key and re-run a subcommand.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Subcommand)]
pub enum Job {
    /// Pair amplitudes and effective couplings λ*.
    LambdaStar,
    /// Decoherence function and exact single-qubit distance over time.
    Gamma(SeriesArgs),
    /// Distance and saturation values at one time.
    Distance(DistanceArgs),
    /// ζ and regime labels for every channel and sum kind.
    Regimes,
    /// Single- and multi-qubit step bounds.
    Mmax(MmaxArgs),
    /// Hilbert–Schmidt distance bound over time.
    Hs(HsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub t_max: f64,
    /// Number of evenly spaced times in [0, t_max].
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Channel to evaluate; defaults to z when configured.
    #[arg(long)]
    pub channel: Option<AxisArg>,
}

#[derive(Debug, Clone, Args)]
pub struct DistanceArgs {
    #[arg(long)]
    pub t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct HsArgs {
    #[arg(long)]
    pub t_max: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MmaxArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Asymptotic)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Dotted config key, e.g. `qec.Delta` or `bath.channels[0].lambda`.
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long)]
    pub points: usize,
    #[command(subcommand)]
    pub target: Job,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    X,
    Z,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Z => Axis::Z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Numeric,
    Asymptotic,
}

impl Command {
    /// Canonical command line (without paths) for output headers.
    pub fn describe(&self) -> String {
        match self {
            Command::Eta => "eta".into(),
            Command::CodeCheck => "code-check".into(),
            Command::Job(j) => j.describe(),
            Command::Sweep(s) => format!(
                "sweep --param {} --from {} --to {} --points {} {}",
                s.param,
                s.from,
                s.to,
                s.points,
                s.target.describe()
            ),
        }
    }
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::LambdaStar => "lambda-star",
            Job::Gamma(_) => "gamma",
            Job::Distance(_) => "distance",
            Job::Regimes => "regimes",
            Job::Mmax(_) => "mmax",
            Job::Hs(_) => "hs",
        }
    }

    pub fn describe(&self) -> String {
        let mut s = self.name().to_string();
        match self {
            Job::Gamma(a) => {
                let _ = write!(s, " --t-max {} --steps {}", a.t_max, a.steps);
                if let Some(c) = a.channel {
                    let _ = write!(s, " --channel {}", Axis::from(c));
                }
            }
            Job::Distance(a) => {
                let _ = write!(s, " --t {}", a.t);
            }
            Job::Mmax(a) => {
                let _ = write!(s, " --mode {}", mode_name(a.mode));
            }
            Job::Hs(a) => {
                let _ = write!(s, " --t-max {} --steps {}", a.t_max, a.steps);
            }
            Job::LambdaStar | Job::Regimes => {}
        }
        s
    }

    pub fn run(&self, model: &Model) -> anyhow::Result<Table> {
        match self {
            Job::LambdaStar => Ok(lambda_star_table(model)),
            Job::Gamma(a) => gamma_table(model, a),
            Job::Distance(a) => distance_table(model, a.t),
            Job::Regimes => regimes_table(model),
            Job::Mmax(a) => mmax_table(model, a.mode),
            Job::Hs(a) => hs_table(model, a),
        }
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Numeric => "numeric",
        ModeArg::Asymptotic => "asymptotic",
    }
}

/// `points` evenly spaced values from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![from],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    to
                } else {
                    from + (to - from) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

fn times(t_max: f64, n: usize) -> anyhow::Result<Vec<f64>> {
    anyhow::ensure!(t_max.is_finite() && t_max >= 0.0, "--t-max must be finite and >= 0, got {t_max}");
    anyhow::ensure!(n >= 1, "--steps must be at least 1");
    Ok(if n == 1 { vec![t_max] } else { linspace(0.0, t_max, n) })
}

pub fn eta_csv(eta: &EtaTable) -> Table {
    let mut t = Table::new("eta", &["alpha", "beta", "i", "j", "k", "logical_type"]);
    for e in eta.entries() {
        let (i, j, k) = e.labels();
        t.push(vec![
            e.alpha.to_string(),
            e.beta.to_string(),
            i.to_string(),
            j.to_string(),
            k.to_string(),
            e.logical.to_string(),
        ]);
    }
    t
}

fn lambda_star_table(model: &Model) -> Table {
    let mut t = Table::new(
        "lambda-star",
        &["axis", "lambda", "a_onsite", "a_min", "a_max", "lambda_star"],
    );
    for axis in Axis::ALL {
        let lambda = model.cfg.channel(axis).map_or(0.0, |c| c.lambda);
        let a = model.a_matrix(axis);
        let n = a.n();
        let off: Vec<f64> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a.get(i, j)).collect();
        let a_min = off.iter().cloned().fold(f64::INFINITY, f64::min);
        let a_max = off.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        t.push(vec![
            axis.to_string(),
            num(lambda),
            num(a.get(0, 0)),
            num(a_min),
            num(a_max),
            num(model.lambda_star.get(axis)),
        ]);
    }
    t
}

fn series_axis(model: &Model, requested: Option<AxisArg>) -> anyhow::Result<Axis> {
    match requested {
        Some(a) => {
            let axis = Axis::from(a);
            anyhow::ensure!(model.grid(axis).is_some(), "channel {axis} is not configured");
            Ok(axis)
        }
        None if model.grid(Axis::Z).is_some() => Ok(Axis::Z),
        None => Ok(Axis::X),
    }
}

fn gamma_table(model: &Model, a: &SeriesArgs) -> anyhow::Result<Table> {
    let axis = series_axis(model, a.channel)?;
    let grid = model.grid(axis).expect("configured channel has a grid");
    let ts = times(a.t_max, a.steps)?;
    let ls = model.lambda_star.get(axis);
    let sigma = model.cfg.criteria.sigma_plus_abs;
    let mut t = Table::new("gamma", &["T", "gamma", "D"]);
    for (time, g) in ts.iter().zip(gamma_series(grid, ls, &ts)) {
        t.push(vec![num(*time), num(g), num(trace_distance_single(g, sigma))]);
    }
    Ok(t)
}

fn distance_table(model: &Model, time: f64) -> anyhow::Result<Table> {
    anyhow::ensure!(time.is_finite() && time >= 0.0, "--t must be finite and >= 0, got {time}");
    let sigma = model.cfg.criteria.sigma_plus_abs;
    let mut t = Table::new("distance", &["axis", "T", "gamma", "D", "gamma_inf", "D_sat"]);
    for grid in model.grids() {
        let ls = model.lambda_star.get(grid.axis());
        let g = qecbound::bath::gamma(grid, ls, time);
        let sat = d_sat(grid, ls, sigma);
        t.push(vec![
            grid.axis().to_string(),
            num(time),
            num(g),
            num(trace_distance_single(g, sigma)),
            num(sat.gamma_inf),
            num(sat.distance),
        ]);
    }
    Ok(t)
}

const KINDS: [SumKind; 3] = [SumKind::SingleDephasing, SumKind::WSelf, SumKind::WCorrelated];

fn regimes_table(model: &Model) -> anyhow::Result<Table> {
    let mut t = Table::new("regimes", &["axis", "kind", "zeta", "exponent", "boundary", "regime"]);
    for ch in model.cfg.channels() {
        for kind in KINDS {
            let r = zeta_and_regime(&ch, &model.geom, kind, model.layout.dim_x)?;
            t.push(vec![
                ch.axis.to_string(),
                kind.as_str().into(),
                num(r.zeta),
                num(r.exponent()),
                num(r.boundary),
                r.regime.as_str().into(),
            ]);
        }
    }
    Ok(t)
}

fn mmax_table(model: &Model, mode: ModeArg) -> anyhow::Result<Table> {
    let inputs = model.bound_input()?;
    let dim_x = model.layout.dim_x;
    let single_z = match (model.cfg.channel(Axis::Z), model.grid(Axis::Z)) {
        (Some(ch), Some(grid)) => {
            let report = zeta_and_regime(&ch, &model.geom, SumKind::SingleDephasing, dim_x)?;
            let m = match mode {
                ModeArg::Numeric => MmaxMode::Numeric,
                ModeArg::Asymptotic => MmaxMode::Asymptotic,
            };
            mmax_single(&report, &inputs, model.lambda_star.z, &model.geom, grid, m)?
        }
        _ => StepBound::Unbounded,
    };
    let multi = |axis: Axis| -> anyhow::Result<StepBound<f64>> {
        let Some(ch) = model.cfg.channel(axis) else {
            return Ok(StepBound::Unbounded);
        };
        let ls = model.lambda_star.get(axis);
        let own = zeta_and_regime(&ch, &model.geom, SumKind::WSelf, dim_x)?;
        let mut bound = mmax_multi(&own, &inputs, ls, &model.geom)?;
        if model.layout.n_logical() > 1 {
            let corr = zeta_and_regime(&ch, &model.geom, SumKind::WCorrelated, dim_x)?;
            bound = bound.min(mmax_multi(&corr, &inputs, ls, &model.geom)?);
        }
        Ok(bound)
    };
    let (mx, mz) = (multi(Axis::X)?, multi(Axis::Z)?);
    let overall = single_z.min(mx).min(mz);
    let mut t = Table::new(
        "mmax",
        &["mode", "mmax_single_z", "mmax_multi_x", "mmax_multi_z", "mmax_overall"],
    );
    t.push(vec![
        mode_name(mode).into(),
        steps(single_z),
        steps(mx),
        steps(mz),
        steps(overall),
    ]);
    Ok(t)
}

fn hs_table(model: &Model, a: &HsArgs) -> anyhow::Result<Table> {
    let ts = times(a.t_max, a.steps)?;
    let grids: Vec<_> = model.grids().iter().collect();
    let eval = HsEvaluator::new(
        &grids,
        &model.lambda_star,
        &model.layout,
        model.cfg.calibration.proportionality,
    );
    let n = model.layout.n_logical();
    let mut t = Table::new("hs", &["T", "D_HS", "D_upper"]);
    for time in ts {
        let d = eval.distance(time);
        t.push(vec![num(time), num(d), num(trace_distance_upper(d, n))]);
    }
    Ok(t)
}

/// Outcome of one brute-force code check.
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn all_paulis(n: usize) -> Vec<PauliString> {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    (0..4usize.pow(n as u32))
        .map(|mut idx| {
            let ps: Vec<Pauli> = (0..n)
                .map(|_| {
                    let p = letters[idx % 4];
                    idx /= 4;
                    p
                })
                .collect();
            PauliString::from_paulis(&ps)
        })
        .collect()
}

pub fn code_checks(code: &StabilizerCode, eta: &EtaTable) -> anyhow::Result<Vec<Check>> {
    let n = code.num_qubits();
    let mut out = Vec::new();
    let gens = code.generators();

    let mut commuting = true;
    for a in gens {
        for b in gens {
            commuting &= a.commutes(b)?;
        }
    }
    out.push(Check {
        name: "generators_commute",
        passed: commuting && gf2_rank(gens) == gens.len(),
        detail: format!("{} generators, rank {}", gens.len(), gf2_rank(gens)),
    });

    let group = code.stabilizer_group();
    let mut trivial = 0;
    for s in &group {
        if syndrome(code, s)?.is_trivial() && classify(code, s)? == ErrorClass::StabilizerEquivalent {
            trivial += 1;
        }
    }
    out.push(Check {
        name: "stabilizer_group_trivial",
        passed: trivial == group.len(),
        detail: format!("{trivial}/{} elements with zero syndrome", group.len()),
    });

    let singles: Vec<_> = paulis_of_weight(n, 1).collect();
    let mut detected = 0;
    for p in &singles {
        if !syndrome(code, p)?.is_trivial() {
            detected += 1;
        }
    }
    out.push(Check {
        name: "weight_one_detectable",
        passed: detected == singles.len(),
        detail: format!("{detected}/{} detected", singles.len()),
    });

    let d = code.distance();
    let exact = verify_distance(code, d)?;
    out.push(Check {
        name: "distance",
        passed: exact,
        detail: format!("minimum trivial-syndrome logical weight == {d}: {exact}"),
    });

    // Exhaustive on two qubits: 16 letters x 4 phases per factor.
    let two: Vec<PauliString> = all_paulis(2)
        .into_iter()
        .flat_map(|p| (0..4).map(move |e| p.clone().with_phase(Phase::from_exponent(e))))
        .collect();
    let mut algebra_ok = true;
    for p in &two {
        for q in &two {
            let pq = p.multiply(q)?;
            algebra_ok &= p.commutes(q)? == (pq == q.multiply(p)?);
            for r in two.iter().step_by(4) {
                algebra_ok &= pq.multiply(r)? == p.multiply(&q.multiply(r)?)?;
            }
        }
    }
    out.push(Check {
        name: "phase_algebra",
        passed: algebra_ok,
        detail: format!("associativity and commutation on {} two-qubit strings", two.len()),
    });

    let all = all_paulis(n);
    let mut coset_ok = true;
    let mut light_logical = None::<usize>;
    for e in &all {
        let class = classify(code, e)?;
        if class.is_logical() && syndrome(code, e)?.is_trivial() {
            light_logical = Some(light_logical.map_or(e.weight(), |w| w.min(e.weight())));
        }
        for s in &group {
            coset_ok &= classify(code, &e.multiply(s)?)? == class;
        }
    }
    out.push(Check {
        name: "coset_constancy",
        passed: coset_ok,
        detail: format!("{} Paulis x {} stabilizers", all.len(), group.len()),
    });
    out.push(Check {
        name: "exhaustive_distance",
        passed: light_logical == Some(d),
        detail: format!(
            "lightest logical over all {} Paulis has weight {}",
            all.len(),
            light_logical.map_or("none".into(), |w| w.to_string())
        ),
    });

    let eta_ok = eta.entries().iter().all(|e| {
        let p = e.pauli(n);
        syndrome(code, &p).map(|s| s.is_trivial()).unwrap_or(false)
            && classify(code, &p).map(|c| c == e.logical).unwrap_or(false)
    });
    out.push(Check {
        name: "eta_entries",
        passed: eta_ok && !eta.is_empty(),
        detail: format!("{} entries", eta.len()),
    });
    Ok(out)
}

pub fn checks_table(checks: &[Check]) -> Table {
    let mut t = Table::new("code-check", &["check", "status", "detail"]);
    for c in checks {
        t.push(vec![
            c.name.into(),
            if c.passed { "pass" } else { "FAIL" }.into(),
            c.detail.replace(',', ";"),
        ]);
    }
    t
}
