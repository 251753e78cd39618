//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use qecbound::analysis::EffectiveCoupling;
use qecbound::bath::{
    build_mode_grid, calibrate_mmax_single, d_sat, gamma, hs_distance, mmax_multi, mmax_single,
    trace_distance_single, w_pair, zeta_and_regime, Axis, BathChannel, BathGeometry, BoundInput, MmaxMode,
    ModeGrid, PairSpectrum, QubitLayout, Regime, StepBound, SumKind,
};
use qecbound::fit_loglog_slope;
use qecbound::pauli::{classify, five_qubit_code, syndrome, Pauli, PauliString, Phase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_qecbound");

type Outcome = Result<(bool, String), String>;

struct Suite {
    failed: usize,
    total: usize,
}

impl Suite {
    fn check(&mut self, id: &str, name: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} [{id}] {name} | {detail} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn grid_with_budget(dim: usize, cells: f64, s: f64, budget: u64) -> Result<ModeGrid<f64>, String> {
    let ch = BathChannel::new(Axis::Z, 1.0, s, 1.0).map_err(e)?;
    let geom = BathGeometry::new(dim, TAU * cells, 1.0).map_err(e)?;
    ModeGrid::build(&geom, &ch, budget).map_err(e)
}

fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp().round())
        .collect()
}

fn gamma_slope(g: &ModeGrid<f64>) -> Result<f64, String> {
    let series: Vec<(f64, f64)> = log_points(1e2, 1e4, 21).into_iter().map(|m| (m, gamma(g, 1e-3, m))).collect();
    Ok(fit_loglog_slope(&series).map_err(e)?.slope)
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap_or_default()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn eta_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let start = Instant::now();
    let status = Command::new(BIN).arg("--out").arg(dir.path()).arg("eta").stdout(Stdio::null()).status().map_err(e)?;
    let elapsed = start.elapsed();
    if !status.success() {
        return Err("eta subcommand failed".into());
    }
    let rows = csv_rows(&dir.path().join("eta.csv"));
    let set = |a: &str, b: &str, class: &str| -> Option<Vec<(usize, usize, usize)>> {
        let mut v = Vec::new();
        for r in rows.iter().filter(|r| r[0] == a && r[1] == b) {
            if r[5] != class {
                return None;
            }
            v.push((r[2].parse().ok()?, r[3].parse().ok()?, r[4].parse().ok()?));
        }
        v.sort();
        Some(v)
    };
    let sorted = |mut v: Vec<(usize, usize, usize)>| {
        v.sort();
        v
    };
    let xz_ref = sorted(vec![(3, 2, 4), (4, 3, 5), (5, 1, 4), (1, 2, 5), (2, 1, 3)]);
    let zx_ref = sorted(vec![(1, 3, 4), (4, 1, 2), (2, 4, 5), (5, 2, 3), (3, 1, 5)]);
    let xz = set("x", "z", "LogicalX").ok_or("x;z,z entry not LogicalX")?;
    let zx = set("z", "x", "LogicalZ").ok_or("z;x,x entry not LogicalZ")?;
    let shift = |(i, j, k): (usize, usize, usize)| {
        let s = |q: usize| q % 5 + 1;
        (s(i), s(j).min(s(k)), s(j).max(s(k)))
    };
    let cyclic = |v: &Vec<(usize, usize, usize)>| &sorted(v.iter().map(|&t| shift(t)).collect()) == v;
    let ok = rows.len() == 10
        && xz.len() == 5
        && zx.len() == 5
        && cyclic(&xz)
        && cyclic(&zx)
        && xz == xz_ref
        && zx == zx_ref
        && elapsed < Duration::from_secs(1);
    Ok((
        ok,
        format!(
            "{} entries, (x;z,z) {:?}, (z;x,x) {:?}, relabeling = identity, {:.3}s",
            rows.len(),
            xz,
            zx,
            elapsed.as_secs_f64()
        ),
    ))
}

fn distance_check() -> Outcome {
    let start = Instant::now();
    let code = five_qubit_code();
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut lightest = usize::MAX;
    let mut count = 0;
    for idx in 0..1024usize {
        let ps: Vec<Pauli> = (0..5).map(|q| letters[(idx >> (2 * q)) & 3]).collect();
        let p = PauliString::from_paulis(&ps);
        count += 1;
        if syndrome(&code, &p).map_err(e)?.is_trivial() && classify(&code, &p).map_err(e)?.is_logical() {
            lightest = lightest.min(p.weight());
        }
    }
    let t = start.elapsed();
    Ok((
        lightest == 3 && count == 1024 && t < Duration::from_secs(1),
        format!("{count} Paulis, lightest trivial-syndrome logical has weight {lightest}, {:.3}s", t.as_secs_f64()),
    ))
}

fn regime_exponents(suite: &mut Suite) {
    let budget_start = Instant::now();
    let cells = 1e5;

    suite.check("3a", "D=1 z=1 s=0 slope 1.0 +/- 0.15", || {
        let g = grid_with_budget(1, cells, 0.0, 10_000_000)?;
        let s = gamma_slope(&g)?;
        Ok(((s - 1.0).abs() <= 0.15, format!("slope {s:.4}")))
    });

    suite.check("3b", "D=1 z=1 s=-1 slope 2.0 +/- 0.1, grows with L", || {
        let g = grid_with_budget(1, cells, -1.0, 10_000_000)?;
        let s = gamma_slope(&g)?;
        let g2 = grid_with_budget(1, 2.0 * cells, -1.0, 10_000_000)?;
        let (a, b) = (gamma(&g, 1e-3, 3e3), gamma(&g2, 1e-3, 3e3));
        Ok((
            (s - 2.0).abs() <= 0.1 && b > a,
            format!("slope {s:.4}, gamma(3e3) at L and 2L: {a:.4e} -> {b:.4e}"),
        ))
    });

    suite.check("3c", "D=1 z=1 s=1/2 gamma/ln M constant within 10% over top decade", || {
        let g = grid_with_budget(1, cells, 0.5, 10_000_000)?;
        let ratios: Vec<f64> = log_points(1e3, 1e4, 11).into_iter().map(|m| gamma(&g, 1e-3, m) / m.ln()).collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
        Ok((hi / lo - 1.0 <= 0.10, format!("max/min - 1 = {:.4}", hi / lo - 1.0)))
    });

    suite.check("3d", "D=3 z=1 s=0 gamma(1e4)/gamma(1e3) in [1, 1.05]", || {
        let g = grid_with_budget(3, 200.0, 0.0, 40_000_000)?;
        let r = gamma(&g, 1e-3, 1e4) / gamma(&g, 1e-3, 1e3);
        Ok(((1.0..=1.05).contains(&r), format!("ratio {r:.5} over {} modes", g.mode_count())))
    });

    let total = budget_start.elapsed();
    suite.check("3", "regime checks total runtime < 5 min", || {
        Ok((total < Duration::from_secs(300), format!("{:.1}s", total.as_secs_f64())))
    });
}

fn exact_distance() -> Outcome {
    let ch = BathChannel::new(Axis::Z, 1.0, 0.0, 1.0).map_err(e)?;
    let g = build_mode_grid(&BathGeometry::new(1, TAU, 1.0).map_err(e)?, &ch).map_err(e)?;
    let ls = 0.1;
    let mut worst_closed = 0.0f64;
    for i in 1..=60 {
        let t = 0.1 * i as f64;
        let gm = gamma(&g, ls, t);
        let gamma_closed = ls * ls * 2.0 * (1.0 - t.cos());
        worst_closed = worst_closed.max((gm / gamma_closed - 1.0).abs());
        for sigma in [0.1, 0.35, 0.5] {
            let closed = sigma * (1.0 - (-4.0 * gm).exp());
            worst_closed = worst_closed.max((trace_distance_single(gm, sigma) / closed - 1.0).abs());
        }
    }
    let mut worst_linear = 0.0f64;
    for i in 1..=200 {
        let gm = 0.002 * i as f64 / 200.0;
        let d = trace_distance_single(gm, 0.5);
        worst_linear = worst_linear.max((d / (4.0 * gm * 0.5) - 1.0).abs());
    }
    Ok((
        worst_closed <= 1e-12 && worst_linear <= 0.01,
        format!("closed-form rel. error {worst_closed:.2e}, linearized rel. error {worst_linear:.2e} (gamma <= 0.002)"),
    ))
}

fn mmax_cross_validation() -> Outcome {
    let geom = BathGeometry::new(1, TAU * 1e5, 1.0).map_err(e)?;
    let ch = BathChannel::new(Axis::Z, 1.0, 0.0, 1.0).map_err(e)?;
    let g = build_mode_grid(&geom, &ch).map_err(e)?;
    let report = zeta_and_regime(&ch, &geom, SumKind::SingleDephasing, 0).map_err(e)?;
    let inputs = BoundInput::new(0.01, 0.5, 1, 1.0).map_err(e)?;
    let numeric = |ls: f64| -> Result<f64, String> {
        Ok(mmax_single(&report, &inputs, ls, &geom, &g, MmaxMode::Numeric).map_err(e)?.to_f64())
    };
    let reference = numeric(1e-3)?;
    let c = calibrate_mmax_single(&report, &inputs, 1e-3, &geom, reference).map_err(e)?;
    let mut ok = report.regime == Regime::SubOhmic;
    let mut parts = Vec::new();
    for ls in [1e-3, 3e-3, 1e-2] {
        let n = numeric(ls)?;
        let a = mmax_single(&report, &inputs.with_c_cal(c), ls, &geom, &g, MmaxMode::Asymptotic)
            .map_err(e)?
            .to_f64();
        let ratio = a.max(n) / a.min(n);
        ok &= ratio <= 2.0;
        parts.push(format!("lambda*={ls:e}: numeric {n}, asymptotic {a}"));
    }

    let g3 = grid_with_budget(3, 200.0, 0.0, 40_000_000)?;
    let geom3 = BathGeometry::new(3, TAU * 200.0, 1.0).map_err(e)?;
    let r3 = zeta_and_regime(&BathChannel::new(Axis::Z, 1.0, 0.0, 1.0).map_err(e)?, &geom3, SumKind::SingleDephasing, 0)
        .map_err(e)?;
    let sat = d_sat(&g3, 1e-3, 0.5);
    let unbounded = [MmaxMode::Numeric, MmaxMode::Asymptotic]
        .iter()
        .map(|&m| mmax_single(&r3, &inputs, 1e-3, &geom3, &g3, m).map(|b| b.is_unbounded()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    ok &= r3.regime == Regime::SuperOhmic && inputs.d_crit > sat.distance && unbounded.iter().all(|&u| u);
    parts.push(format!("super-Ohmic: D_sat {:.3e} < D_crit, M_max = inf", sat.distance));
    Ok((ok, format!("c_cal = {c:.4}; {}", parts.join("; "))))
}

fn w_sum_scaling() -> Outcome {
    let big_xi = 1e6;
    let g = grid_with_budget(1, 4e6, 0.25, 10_000_000)?;
    let ms = log_points(1e2, 1e4, 9);
    let ns = [2usize, 4, 8, 16];
    let mut per_n = Vec::new();
    let mut slopes = Vec::new();
    for &n in &ns {
        let lay = QubitLayout::regular(n, 5, 1, 1, 1.0, big_xi).map_err(e)?;
        let spec = PairSpectrum::new(&g, &lay.logical_positions);
        let series: Vec<(f64, f64)> = ms.iter().map(|&m| (m, spec.total(m).norm())).collect();
        slopes.push(fit_loglog_slope(&series).map_err(e)?.slope);
        per_n.push(series.iter().map(|&(_, w)| w / n as f64).collect::<Vec<_>>());
    }
    let mut spread = 0.0f64;
    for i in 0..ms.len() {
        let col: Vec<f64> = per_n.iter().map(|v| v[i]).collect();
        let (lo, hi) = col.iter().fold((f64::MAX, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
        spread = spread.max(hi / lo - 1.0);
    }
    let ok = spread <= 0.10 && slopes.iter().all(|s| (s - 0.5).abs() <= 0.15);
    Ok((
        ok,
        format!(
            "max N-spread of |sum W|/N {spread:.4}, slopes {:?}",
            slopes.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>()
        ),
    ))
}

fn hs_sanity() -> Outcome {
    let ch = BathChannel::new(Axis::Z, 1.0, 0.25, 0.1).map_err(e)?;
    let geom = BathGeometry::new(1, TAU * 1e3, 1.0).map_err(e)?;
    let g = build_mode_grid(&geom, &ch).map_err(e)?;
    let lay = QubitLayout::regular(6, 5, 1, 1, 1.0, 100.0).map_err(e)?;
    let zero_coupling = hs_distance(&[&g], &EffectiveCoupling { x: 0.0, z: 0.0 }, &lay, 50.0, 1.0);
    let zero_time = hs_distance(&[&g], &EffectiveCoupling { x: 0.0, z: 0.01 }, &lay, 0.0, 1.0);

    let ohmic_ch = BathChannel::new(Axis::Z, 1.0, 0.5, 0.1).map_err(e)?;
    let ohmic = zeta_and_regime(&ohmic_ch, &geom, SumKind::WSelf, 1).map_err(e)?;
    let worked = mmax_multi(&ohmic, &BoundInput::new(0.1, 0.5, 10, 1.0).map_err(e)?, 0.01, &geom).map_err(e)?;

    let mut monotone = true;
    let mut regimes = Vec::new();
    for s in [0.5, 0.25, 0.0, -0.5] {
        let c = BathChannel::new(Axis::Z, 1.0, s, 0.1).map_err(e)?;
        for kind in [SumKind::WSelf, SumKind::WCorrelated] {
            let r = zeta_and_regime(&c, &geom, kind, 1).map_err(e)?;
            if r.regime == Regime::SuperOhmic {
                continue;
            }
            regimes.push(r.regime.as_str());
            let mut prev = StepBound::Unbounded;
            for n in 1..=64 {
                let b = mmax_multi(&r, &BoundInput::new(0.1, 0.5, n, 1.0).map_err(e)?, 0.01, &geom).map_err(e)?;
                monotone &= b.to_f64() <= prev.to_f64();
                prev = b;
            }
        }
    }
    regimes.sort();
    regimes.dedup();
    let ok = zero_coupling == 0.0 && zero_time == 0.0 && worked == StepBound::Finite(2.0) && monotone && regimes.len() == 3;
    Ok((
        ok,
        format!(
            "D_HS(lambda*=0) = {zero_coupling}, D_HS(T=0) = {zero_time}, worked example M_max = {worked}, non-increasing in N over {regimes:?}: {monotone}"
        ),
    ))
}

fn random_string(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
    let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let ps: Vec<Pauli> = (0..n).map(|_| letters[rng.random_range(0..4)]).collect();
    PauliString::from_paulis(&ps).with_phase(Phase::from_exponent(rng.random_range(0..4)))
}

fn property_suites(suite: &mut Suite) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    suite.check("8a", "Pauli associativity with phase, commutation (2000 cases)", || {
        let mut ok = true;
        for _ in 0..2000 {
            let n = rng.random_range(1..130);
            let (p, q, r) = (random_string(&mut rng, n), random_string(&mut rng, n), random_string(&mut rng, n));
            let l = p.multiply(&q).map_err(e)?.multiply(&r).map_err(e)?;
            let rr = p.multiply(&q.multiply(&r).map_err(e)?).map_err(e)?;
            ok &= l == rr;
            ok &= p.commutes(&q).map_err(e)? == (p.multiply(&q).map_err(e)? == q.multiply(&p).map_err(e)?);
        }
        Ok((ok, "2000 random triples, n in 1..130".into()))
    });

    suite.check("8b", "classification constant on stabilizer cosets (2000 cases)", || {
        let code = five_qubit_code();
        let group = code.stabilizer_group();
        let mut ok = true;
        for _ in 0..2000 {
            let p = random_string(&mut rng, 5);
            let s = &group[rng.random_range(0..group.len())];
            let ps = p.multiply(s).map_err(e)?;
            ok &= classify(&code, &p).map_err(e)? == classify(&code, &ps).map_err(e)?;
            ok &= syndrome(&code, &p).map_err(e)? == syndrome(&code, &ps).map_err(e)?;
        }
        Ok((ok, "2000 random (error, stabilizer) pairs".into()))
    });

    suite.check("8c", "gamma non-negative and <= twice the static sum (200 random grids)", || {
        let mut ok = true;
        let mut evals = 0;
        for _ in 0..200 {
            let dim = rng.random_range(1..=3);
            let cells = rng.random_range(1.0..[0.0, 300.0, 30.0, 10.0][dim]);
            let ch = BathChannel::new(Axis::Z, rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0), 1.0).map_err(e)?;
            let geom = BathGeometry::new(dim, TAU * cells, rng.random_range(1.0..2.5)).map_err(e)?;
            let g = build_mode_grid(&geom, &ch).map_err(e)?;
            let ls = rng.random_range(0.0..0.5);
            let bound = 2.0 * g.prefactor() * ls * ls * g.static_sum();
            for _ in 0..5 {
                let v = gamma(&g, ls, rng.random_range(0.0..1e3));
                ok &= v >= 0.0 && v <= bound * (1.0 + 1e-12);
                evals += 1;
            }
        }
        Ok((ok, format!("{evals} evaluations")))
    });

    suite.check("8d", "W kernel symmetry (W_xy = W_yx; spatial kernel Hermitian)", || {
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let dim = rng.random_range(1..=3);
            let cells = [0.0, 200.0, 25.0, 8.0][dim];
            let ch = BathChannel::new(Axis::X, 1.0, rng.random_range(-0.5..0.75), 1.0).map_err(e)?;
            let g = build_mode_grid(&BathGeometry::new(dim, TAU * cells, 1.0).map_err(e)?, &ch).map_err(e)?;
            let mut pt = || [0, 1, 2].map(|_| rng.random_range(-20.0..20.0));
            let (x, y) = (pt(), pt());
            let t = rng.random_range(0.0..200.0);
            let scale = 2.0 * g.prefactor() * g.static_sum();
            worst = worst.max((w_pair(&g, &x, &y, t) - w_pair(&g, &y, &x, t)).norm() / scale);
            let r = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
            let kern = |r: [f64; 3]| g.sum_modes_complex(|m| num_complex::Complex::from_polar(m.u2, -m.dot(&r)));
            let herm = (kern(r) - kern([-r[0], -r[1], -r[2]]).conj()).norm() / g.sum_modes(|m| m.u2);
            worst = worst.max(herm);
        }
        Ok((worst <= 1e-10, format!("max relative asymmetry {worst:.2e}")))
    });

    suite.check("8e", "hs_distance invariant under global translation", || {
        let gz = build_mode_grid(
            &BathGeometry::new(2, TAU * 30.0, 1.0).map_err(e)?,
            &BathChannel::new(Axis::Z, 1.0, 0.2, 0.1).map_err(e)?,
        )
        .map_err(e)?;
        let lay = QubitLayout::regular(4, 5, 2, 2, 0.5, 17.0).map_err(e)?;
        let ls = EffectiveCoupling { x: 0.0, z: 0.03 };
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let shift = [0, 1, 2].map(|_| rng.random_range(-1e3..1e3));
            let t = rng.random_range(0.0..50.0);
            let a = hs_distance(&[&gz], &ls, &lay, t, 1.0);
            let b = hs_distance(&[&gz], &ls, &lay.translated(shift), t, 1.0);
            if a > 0.0 {
                worst = worst.max((a - b).abs() / a);
            }
        }
        Ok((worst <= 1e-9, format!("max relative change {worst:.2e}")))
    });

    suite.check("8f", "byte-identical CLI reruns", || {
        let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/example.toml");
        let jobs: &[&[&str]] = &[
            &["eta"],
            &["regimes"],
            &["gamma", "--t-max", "500", "--steps", "11"],
            &["mmax", "--mode", "numeric"],
            &["hs", "--t-max", "100", "--steps", "5"],
        ];
        let dirs = [tempfile::tempdir().map_err(e)?, tempfile::tempdir().map_err(e)?];
        for d in &dirs {
            for job in jobs {
                let st = Command::new(BIN)
                    .arg("--config")
                    .arg(&cfg)
                    .arg("--out")
                    .arg(d.path())
                    .args(*job)
                    .stdout(Stdio::null())
                    .status()
                    .map_err(e)?;
                if !st.success() {
                    return Err(format!("{job:?} failed"));
                }
            }
        }
        let mut files = 0;
        let mut same = true;
        for entry in std::fs::read_dir(dirs[0].path()).map_err(e)? {
            let name = entry.map_err(e)?.file_name();
            let a = std::fs::read(dirs[0].path().join(&name)).map_err(e)?;
            let b = std::fs::read(dirs[1].path().join(&name)).map_err(e)?;
            same &= a == b;
            files += 1;
        }
        Ok((same && files == jobs.len() + 1, format!("{files} files compared")))
    });
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0, total: 0 };
    suite.check("1", "eta table reproduction", eta_reproduction);
    suite.check("2", "distance 3 by exhaustive search", distance_check);
    regime_exponents(&mut suite);
    suite.check("4", "exact single-qubit distance", exact_distance);
    suite.check("5", "M_max numeric vs calibrated asymptotic", mmax_cross_validation);
    suite.check("6", "W-sum N-linearity and M-slope (s=1/4)", w_sum_scaling);
    suite.check("7", "HS bound sanity and worked example", hs_sanity);
    property_suites(&mut suite);
    println!("{} of {} acceptance checks passed", suite.total - suite.failed, suite.total);
    if suite.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
