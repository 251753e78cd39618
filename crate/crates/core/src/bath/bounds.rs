//! Asymptotic decoherence laws and the resulting bounds on the number of
//! QEC steps `M_max`.
//!
//! The asymptotic forms only fix scalings; their order-one prefactors are the
//! calibration constants in [`BoundInput`].

use std::fmt;

use super::channel::BathGeometry;
use super::decoherence::{d_sat, gamma, trace_distance_single};
use super::grid::ModeGrid;
use super::regime::{Regime, RegimeReport, SumKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Criterion and calibration inputs of the bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInput<T> {
    /// Success threshold on the trace distance.
    pub d_crit: T,
    /// `|<σ̄+>|` of the initial logical state.
    pub sigma_plus_abs: T,
    /// Number of logical qubits `N`.
    pub n_logical: usize,
    /// QEC period `Δ` (units of `1/ω₀`).
    pub delta: T,
    /// Order-one constant of the single-qubit laws. [`gamma_asymptotic`]
    /// uses it as the prefactor of `γ`; [`mmax_single`] as `c_{D,z}`, the
    /// factor scaling `D_crit`.
    pub c_cal: T,
    /// `b_{D,α}` of the multi-qubit Ohmic bound.
    pub b_cal: T,
}

impl<T: Scalar> BoundInput<T> {
    pub fn new(d_crit: T, sigma_plus_abs: T, n_logical: usize, delta: T) -> Result<Self> {
        let b = Self {
            d_crit,
            sigma_plus_abs,
            n_logical,
            delta,
            c_cal: T::one(),
            b_cal: T::one(),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn with_c_cal(mut self, c: T) -> Self {
        self.c_cal = c;
        self
    }

    pub fn with_b_cal(mut self, b: T) -> Self {
        self.b_cal = b;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d_crit > T::zero() && self.d_crit < T::one()) {
            return Err(Error::InvalidParameter {
                name: "D_crit",
                reason: format!("must lie in (0, 1), got {}", self.d_crit),
            });
        }
        if !(self.sigma_plus_abs >= T::zero() && self.sigma_plus_abs <= T::lit(0.5)) {
            return Err(Error::InvalidParameter {
                name: "sigma_plus_abs",
                reason: format!("must lie in [0, 1/2], got {}", self.sigma_plus_abs),
            });
        }
        if !(self.delta.is_finite() && self.delta > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "Delta",
                reason: format!("must be finite and > 0, got {}", self.delta),
            });
        }
        for (name, v) in [("c_cal", self.c_cal), ("b_cal", self.b_cal)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and > 0, got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// A step-count bound: finite or unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepBound<T> {
    Finite(T),
    Unbounded,
}

impl<T: Scalar> StepBound<T> {
    /// Floors a real-valued formula; non-finite values become `Unbounded`.
    pub fn floor_of(v: T) -> Self {
        if v.is_finite() {
            StepBound::Finite(v.max(T::zero()).floor())
        } else {
            StepBound::Unbounded
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, StepBound::Unbounded)
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            StepBound::Finite(v) => Some(*v),
            StepBound::Unbounded => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            StepBound::Finite(v) => v.to_f64_lossy(),
            StepBound::Unbounded => f64::INFINITY,
        }
    }

    pub fn min(self, other: Self) -> Self {
        match (self, other) {
            (StepBound::Finite(a), StepBound::Finite(b)) => StepBound::Finite(a.min(b)),
            (StepBound::Finite(a), StepBound::Unbounded) | (StepBound::Unbounded, StepBound::Finite(a)) => {
                StepBound::Finite(a)
            }
            _ => StepBound::Unbounded,
        }
    }
}

impl<T: Scalar> fmt::Display for StepBound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepBound::Finite(v) => write!(f, "{v}"),
            StepBound::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmaxMode {
    /// Closed-form asymptotic law.
    Asymptotic,
    /// Threshold search on the brute-force mode sum.
    Numeric,
}

fn require_kind<T: Scalar>(report: &RegimeReport<T>, ok: &[SumKind], op: &str) -> Result<()> {
    if ok.contains(&report.kind) {
        Ok(())
    } else {
        Err(Error::Configuration(format!(
            "{op} needs a {} regime report, got {}",
            ok.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" or "),
            report.kind
        )))
    }
}

/// Long-time form of `γ(MΔ)`, scaled by `inputs.c_cal`.
pub fn gamma_asymptotic<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
    m: T,
) -> T {
    let lambda_star = lambda_star.abs();
    let ls2 = lambda_star * lambda_star;
    let p = report.exponent();
    let base = match report.regime {
        Regime::SuperOhmic => ls2 * inputs.delta.powf(-p),
        Regime::Ohmic => ls2 * m.ln(),
        Regime::SubOhmic => ls2 * (inputs.delta * m).powf(p),
        Regime::StrongIr => {
            let d = lambda_star * inputs.delta;
            d * d * geom.ir_ratio().powf(report.zeta - report.boundary) * m * m
        }
    };
    inputs.c_cal * base
}

/// One-point calibration: the `c_cal` that makes [`gamma_asymptotic`] equal
/// `measured` at `m`.
pub fn calibrate_gamma_prefactor<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
    m: T,
    measured: T,
) -> Result<T> {
    let unit = gamma_asymptotic(report, &inputs.with_c_cal(T::one()), lambda_star, geom, m);
    if !(unit > T::zero()) {
        return Err(Error::Domain(format!(
            "asymptotic γ is {unit} at M = {m}; cannot calibrate"
        )));
    }
    Ok(measured / unit)
}

/// Long-time form of `|Σ_{x,y} W_{x,y}(MΔ)|`, proportionality constant 1.
pub fn w_sum_asymptotic<T: Scalar>(
    report: &RegimeReport<T>,
    n_logical: usize,
    geom: &BathGeometry<T>,
    delta: T,
    m: T,
) -> T {
    let n = T::from_count(n_logical as u64);
    let p = report.exponent();
    match report.regime {
        Regime::SuperOhmic => n * delta.powf(-p),
        Regime::Ohmic => n * m.ln(),
        Regime::SubOhmic => n * (delta * m).powf(p),
        Regime::StrongIr => n * delta * geom.ir_ratio().powf(report.zeta - report.z_exp) * m,
    }
}

/// Real-valued asymptotic single-qubit `M_max` before flooring.
fn mmax_single_formula<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
) -> T {
    let lambda_star = lambda_star.abs();
    let crit = inputs.c_cal * inputs.d_crit;
    let z = report.z_exp;
    match report.regime {
        Regime::SuperOhmic => T::infinity(),
        Regime::Ohmic => (crit / (lambda_star * lambda_star)).exp(),
        Regime::SubOhmic => {
            crit.powf(z / report.zeta) * lambda_star.powf(-(z + z) / report.zeta) / inputs.delta
        }
        Regime::StrongIr => {
            geom.ir_ratio().powf(-(report.zeta - report.boundary)) * crit.sqrt()
                / (lambda_star * inputs.delta)
        }
    }
}

/// Steps before an isolated logical qubit's dephasing distance exceeds
/// `D_crit`.
///
/// Asymptotic mode applies the closed-form law per regime with `c_cal` as
/// `c_{D,z}`. Numeric mode searches the brute-force `γ(MΔ)` on `grid` for the
/// first `M` with `D > D_crit` (doubling, then bisection; this assumes `γ`
/// grows monotonically up to the crossing) and returns `M - 1`.
pub fn mmax_single<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
    grid: &ModeGrid<T>,
    mode: MmaxMode,
) -> Result<StepBound<T>> {
    require_kind(report, &[SumKind::SingleDephasing], "mmax_single")?;
    inputs.validate()?;
    if mode == MmaxMode::Numeric && inputs.d_crit >= inputs.sigma_plus_abs {
        return Err(Error::CriterionUnreachable {
            d_crit: inputs.d_crit.to_f64_lossy(),
            sigma_plus: inputs.sigma_plus_abs.to_f64_lossy(),
        });
    }
    if lambda_star == T::zero() {
        return Ok(StepBound::Unbounded);
    }
    let sat = d_sat(grid, lambda_star, inputs.sigma_plus_abs);
    match mode {
        MmaxMode::Asymptotic => {
            if report.regime == Regime::SuperOhmic {
                if inputs.d_crit <= sat.distance {
                    return Err(Error::BelowSaturation {
                        d_crit: inputs.d_crit.to_f64_lossy(),
                        d_sat: sat.distance.to_f64_lossy(),
                    });
                }
                return Ok(StepBound::Unbounded);
            }
            Ok(StepBound::floor_of(mmax_single_formula(report, inputs, lambda_star, geom)))
        }
        MmaxMode::Numeric => {
            // γ ≤ 2γ_∞ on any finite grid.
            let ceiling = trace_distance_single(sat.gamma_inf * T::lit(2.0), inputs.sigma_plus_abs);
            if ceiling <= inputs.d_crit {
                return Ok(StepBound::Unbounded);
            }
            if report.regime == Regime::SuperOhmic && sat.distance < inputs.d_crit {
                return Ok(StepBound::Unbounded);
            }
            let exceeds = |m: u64| {
                let g = gamma(grid, lambda_star, T::from_count(m) * inputs.delta);
                trace_distance_single(g, inputs.sigma_plus_abs) > inputs.d_crit
            };
            let m = first_crossing(exceeds, 1u64 << 52)?;
            Ok(StepBound::Finite(T::from_count(m - 1)))
        }
    }
}

/// Smallest `m ≥ 1` with `exceeds(m)`, assuming a single crossing.
fn first_crossing(exceeds: impl Fn(u64) -> bool, cap: u64) -> Result<u64> {
    if exceeds(1) {
        return Ok(1);
    }
    let (mut lo, mut hi) = (1u64, 2u64);
    while !exceeds(hi) {
        lo = hi;
        hi = hi.checked_mul(2).filter(|&h| h <= cap).ok_or(Error::SearchExhausted { cap })?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if exceeds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// The `c_cal` (as `c_{D,z}`) for which the asymptotic single-qubit bound
/// reproduces `m_reference` steps.
pub fn calibrate_mmax_single<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
    m_reference: T,
) -> Result<T> {
    require_kind(report, &[SumKind::SingleDephasing], "calibrate_mmax_single")?;
    let lambda_star = lambda_star.abs();
    if !(m_reference > T::zero() && lambda_star > T::zero()) {
        return Err(Error::Domain("calibration needs M > 0 and λ* > 0".into()));
    }
    let ls2 = lambda_star * lambda_star;
    let d = inputs.d_crit;
    let c = match report.regime {
        Regime::SuperOhmic => {
            return Err(Error::Domain(
                "the super-Ohmic bound is unbounded; nothing to calibrate".into(),
            ))
        }
        Regime::Ohmic => m_reference.ln() * ls2 / d,
        Regime::SubOhmic => (m_reference * inputs.delta).powf(report.exponent()) * ls2 / d,
        Regime::StrongIr => {
            let s = m_reference
                * lambda_star
                * inputs.delta
                * geom.ir_ratio().powf(report.zeta - report.boundary);
            s * s / d
        }
    };
    Ok(c)
}

/// Steps before the multi-qubit Hilbert–Schmidt bound exceeds `D_crit`, for
/// one bath channel. Combine channels with [`StepBound::min`].
///
/// `λ*` is a signed sum of pair amplitudes; only its magnitude enters.
pub fn mmax_multi<T: Scalar>(
    report: &RegimeReport<T>,
    inputs: &BoundInput<T>,
    lambda_star: T,
    geom: &BathGeometry<T>,
) -> Result<StepBound<T>> {
    require_kind(report, &[SumKind::WSelf, SumKind::WCorrelated], "mmax_multi")?;
    if inputs.n_logical == 0 {
        return Err(Error::Configuration("N must be at least 1".into()));
    }
    inputs.validate()?;
    let lambda_star = lambda_star.abs();
    if lambda_star == T::zero() {
        return Ok(StepBound::Unbounded);
    }
    let n = T::from_count(inputs.n_logical as u64);
    let load = n * lambda_star;
    let v = match report.regime {
        Regime::SuperOhmic => T::infinity(),
        Regime::Ohmic => (inputs.b_cal * inputs.d_crit / load).exp(),
        Regime::SubOhmic => (inputs.d_crit / load).powf(T::one() / report.exponent()) / inputs.delta,
        Regime::StrongIr => {
            geom.ir_ratio().powf(-(report.zeta - report.z_exp)) * inputs.d_crit
                / (load * inputs.delta)
        }
    };
    Ok(StepBound::floor_of(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{build_mode_grid, zeta_and_regime, Axis, BathChannel};

    fn setup(dim: usize, s: f64, kind: SumKind) -> (BathGeometry<f64>, BathChannel<f64>, RegimeReport<f64>) {
        let geom = BathGeometry::new(dim, std::f64::consts::TAU * 100.0, 1.0).unwrap();
        let ch = BathChannel::new(Axis::Z, 1.0, s, 0.1).unwrap();
        let r = zeta_and_regime(&ch, &geom, kind, 1).unwrap();
        (geom, ch, r)
    }

    #[test]
    fn sign_of_coupling_is_irrelevant() {
        let inputs = BoundInput::new(0.05, 0.5, 3, 1.0).unwrap();
        for s in [0.5, 0.25, 0.0] {
            let (geom, _, r) = setup(1, s, SumKind::WSelf);
            assert_eq!(mmax_multi(&r, &inputs, -2e-3, &geom), mmax_multi(&r, &inputs, 2e-3, &geom));
            let (geom, _, r) = setup(1, s, SumKind::SingleDephasing);
            assert_eq!(
                gamma_asymptotic(&r, &inputs, -2e-3, &geom, 50.0),
                gamma_asymptotic(&r, &inputs, 2e-3, &geom, 50.0)
            );
        }
    }

    #[test]
    fn asymptotic_gamma_cases() {
        let inputs = BoundInput::new(0.01, 0.5, 1, 1.0).unwrap();
        let (geom, _, ohmic) = setup(1, 0.5, SumKind::SingleDephasing);
        assert_eq!(gamma_asymptotic(&ohmic, &inputs, 1e-3, &geom, 1.0), 0.0);
        let (geom, _, sub) = setup(1, 0.0, SumKind::SingleDephasing);
        let a = gamma_asymptotic(&sub, &inputs, 1e-3, &geom, 300.0);
        let b = gamma_asymptotic(&sub, &inputs, 1e-3, &geom, 600.0);
        assert!((b / a - 2.0).abs() < 1e-12);
        let scaled = gamma_asymptotic(&sub, &inputs.with_c_cal(3.0), 1e-3, &geom, 300.0);
        assert!((scaled / a - 3.0).abs() < 1e-12);
    }

    #[test]
    fn w_sum_asymptotic_cases() {
        let (geom, _, ohmic) = setup(1, 0.5, SumKind::WSelf);
        assert_eq!(w_sum_asymptotic(&ohmic, 4, &geom, 1.0, 1.0), 0.0);
        let (geom, _, sub) = setup(1, 0.25, SumKind::WSelf);
        let a = w_sum_asymptotic(&sub, 4, &geom, 1.0, 100.0);
        let b = w_sum_asymptotic(&sub, 4, &geom, 1.0, 200.0);
        assert!((b / a - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn multi_qubit_ohmic_example() {
        let (geom, _, r) = setup(1, 0.5, SumKind::WSelf);
        let inputs = BoundInput::new(0.1, 0.5, 10, 1.0).unwrap();
        assert_eq!(mmax_multi(&r, &inputs, 0.01, &geom).unwrap(), StepBound::Finite(2.0));
    }

    #[test]
    fn multi_qubit_edge_cases() {
        let (geom, _, r) = setup(3, 0.0, SumKind::WSelf);
        let inputs = BoundInput::new(0.1, 0.5, 4, 1.0).unwrap();
        assert!(mmax_multi(&r, &inputs, 0.01, &geom).unwrap().is_unbounded());
        let mut zero = inputs;
        zero.n_logical = 0;
        assert!(matches!(mmax_multi(&r, &zero, 0.01, &geom), Err(Error::Configuration(_))));
        let (_, _, single) = setup(1, 0.0, SumKind::SingleDephasing);
        assert!(mmax_multi(&single, &inputs, 0.01, &geom).is_err());
    }

    #[test]
    fn doubling_n_in_subohmic_case() {
        let (geom, _, r) = setup(1, 0.25, SumKind::WSelf);
        let p = r.exponent();
        let mk = |n| BoundInput::new(0.1, 0.5, n, 1.0).unwrap();
        // compare unfloored formulas through large values
        let a = mmax_multi(&r, &mk(2), 1e-6, &geom).unwrap().to_f64();
        let b = mmax_multi(&r, &mk(4), 1e-6, &geom).unwrap().to_f64();
        assert!((b / a - 2f64.powf(-1.0 / p)).abs() < 1e-6);
    }

    #[test]
    fn numeric_requires_reachable_criterion() {
        let (geom, ch, r) = setup(1, 0.0, SumKind::SingleDephasing);
        let grid = build_mode_grid(&geom, &ch).unwrap();
        let inputs = BoundInput::new(0.3, 0.2, 1, 1.0).unwrap();
        assert!(matches!(
            mmax_single(&r, &inputs, 1e-3, &geom, &grid, MmaxMode::Numeric),
            Err(Error::CriterionUnreachable { .. })
        ));
        assert!(mmax_single(&r, &inputs, 0.0, &geom, &grid, MmaxMode::Asymptotic)
            .unwrap()
            .is_unbounded());
    }

    #[test]
    fn single_mode_numeric_matches_closed_form() {
        // L = 2π: two modes with ω = 1; Δ = 10^-3 so the crossing lies in
        // the first half period.
        let geom = BathGeometry::new(1, std::f64::consts::TAU, 1.0).unwrap();
        let ch = BathChannel::new(Axis::Z, 1.0, 0.0, 0.0).unwrap();
        let grid = build_mode_grid(&geom, &ch).unwrap();
        let r = zeta_and_regime(&ch, &geom, SumKind::SingleDephasing, 0).unwrap();
        let delta = 1e-3;
        for &(ls, d_crit) in &[(0.2f64, 0.05f64), (0.3, 0.1), (0.5, 0.2)] {
            let inputs = BoundInput::new(d_crit, 0.5, 1, delta).unwrap();
            let gamma0 = 2.0 * ls * ls;
            let threshold = -(1.0 - d_crit / 0.5f64).ln() / 4.0;
            let theta = (1.0 - threshold / gamma0).acos();
            let expected = (theta / delta).floor();
            let got = mmax_single(&r, &inputs, ls, &geom, &grid, MmaxMode::Numeric).unwrap();
            assert_eq!(got, StepBound::Finite(expected), "λ* = {ls}");
        }
    }

    #[test]
    fn crossing_search() {
        assert_eq!(first_crossing(|m| m >= 1, 1 << 20).unwrap(), 1);
        assert_eq!(first_crossing(|m| m >= 777, 1 << 20).unwrap(), 777);
        assert!(first_crossing(|_| false, 1 << 10).is_err());
    }

    #[test]
    fn calibration_inverts_the_formula() {
        let (geom, _, r) = setup(1, 0.0, SumKind::SingleDephasing);
        let inputs = BoundInput::new(0.01, 0.5, 1, 1.0).unwrap();
        let c = calibrate_mmax_single(&r, &inputs, 1e-3, &geom, 1234.0).unwrap();
        let v = mmax_single_formula(&r, &inputs.with_c_cal(c), 1e-3, &geom);
        assert!((v - 1234.0).abs() < 1e-6);
        let (geom, _, strong) = setup(1, -1.0, SumKind::SingleDephasing);
        let c = calibrate_mmax_single(&strong, &inputs, 1e-3, &geom, 50.0).unwrap();
        let v = mmax_single_formula(&strong, &inputs.with_c_cal(c), 1e-3, &geom);
        assert!((v - 50.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_inputs() {
        assert!(BoundInput::new(0.0f64, 0.5, 1, 1.0).is_err());
        assert!(BoundInput::new(0.1f64, 0.6, 1, 1.0).is_err());
        assert!(BoundInput::new(0.1f64, 0.5, 1, 0.0).is_err());
    }
}
