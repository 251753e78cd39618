//! Decoherence function, single-qubit trace distance and the
//! Hilbert–Schmidt bound built from the W correlation sums.

use num_complex::Complex;

use super::grid::ModeGrid;
use super::layout::{Position, QubitLayout};
use crate::analysis::EffectiveCoupling;
use crate::scalar::Scalar;
use crate::sum::chunked_sum2;

/// `γ(T) = (2π/L)^D λ*² Σ_k (|u_k|²/ω_k²)(1 - cos ω_k T)`.
pub fn gamma<T: Scalar>(grid: &ModeGrid<T>, lambda_star: T, time: T) -> T {
    let half = time / T::lit(2.0);
    // 1 - cos x = 2 sin²(x/2) keeps small-T values accurate.
    let sum = grid.sum_shells(|s| {
        let sn = (s.omega * half).sin();
        T::from_count(s.multiplicity) * s.u2 / (s.omega * s.omega) * T::lit(2.0) * sn * sn
    });
    grid.prefactor() * lambda_star * lambda_star * sum
}

/// `γ` at many times; the shell data is regenerated per call, so callers with
/// long series on big grids should prefer fewer, coarser points.
pub fn gamma_series<T: Scalar>(grid: &ModeGrid<T>, lambda_star: T, times: &[T]) -> Vec<T> {
    times.iter().map(|&t| gamma(grid, lambda_star, t)).collect()
}

/// `D = |<σ+>| (1 - e^{-4γ})`, the exact pure-dephasing trace distance.
pub fn trace_distance_single<T: Scalar>(gamma_val: T, sigma_plus_abs: T) -> T {
    -(-(gamma_val * T::lit(4.0))).exp_m1() * sigma_plus_abs
}

/// Long-time limit of the dephasing distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Saturation<T> {
    /// `(2π/L)^D λ*² Σ |u|²/ω²`: the Cesàro mean of `γ(T)`.
    pub gamma_inf: T,
    pub distance: T,
    /// Set when `ζ ≥ 0`: the static sum is then controlled by the box size
    /// or the cutoff rather than converging to a physical plateau.
    pub cutoff_dominated: bool,
}

/// Saturation distance `D_sat`.
///
/// For a finite grid `γ(T)` is quasi-periodic and has no pointwise limit; the
/// oscillating `cos ω_k T` terms are dropped (their long-time mean is zero).
pub fn d_sat<T: Scalar>(grid: &ModeGrid<T>, lambda_star: T, sigma_plus_abs: T) -> Saturation<T> {
    let gamma_inf = grid.prefactor() * lambda_star * lambda_star * grid.static_sum();
    Saturation {
        gamma_inf,
        distance: trace_distance_single(gamma_inf, sigma_plus_abs),
        cutoff_dominated: grid.zeta_single() >= T::zero(),
    }
}

/// `(1 - e^{-iωT})` as `(re, im)`.
#[inline]
fn retarded_factor<T: Scalar>(omega: T, time: T) -> (T, T) {
    let phase = omega * time;
    let half = (phase / T::lit(2.0)).sin();
    (T::lit(2.0) * half * half, phase.sin())
}

/// `W_{x,y}(T) = (2π/L)^D Σ_k (|u|²/ω²) e^{-ik·(x-y)} (1 - e^{-iω T})`,
/// summed mode by mode.
pub fn w_pair<T: Scalar>(grid: &ModeGrid<T>, x: &Position<T>, y: &Position<T>, time: T) -> Complex<T> {
    let r = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    let sum = grid.sum_modes_complex(|m| {
        let weight = m.u2 / (m.omega * m.omega);
        let (s, c) = m.dot(&r).sin_cos();
        let (a, b) = (c, -s);
        let (fr, fi) = retarded_factor(m.omega, time);
        Complex::new(weight * (a * fr - b * fi), weight * (a * fi + b * fr))
    });
    sum * grid.prefactor()
}

/// Brute-force `Σ_{x,y} W_{x,y}(T)` over all ordered pairs of positions.
pub fn w_double_sum<T: Scalar>(grid: &ModeGrid<T>, positions: &[Position<T>], time: T) -> Complex<T> {
    let mut total = Complex::new(T::zero(), T::zero());
    for x in positions {
        for y in positions {
            total = total + w_pair(grid, x, y, time);
        }
    }
    total
}

/// Spectral form of `Σ_{x,y} W_{x,y}` for a fixed set of positions.
///
/// `Σ_{x,y} e^{-ik·(x-y)} = |Σ_x e^{-ik·x}|²` is even in `k`, so each mode
/// pair `±k` collapses to one entry `(ω_k, 2 |u|²/ω² S(k))`. Evaluating the
/// sum at a new `T` is then a single pass over the entries.
#[derive(Debug, Clone)]
pub struct PairSpectrum<T> {
    prefactor: T,
    entries: Vec<(T, T)>,
}

impl<T: Scalar> PairSpectrum<T> {
    pub fn new(grid: &ModeGrid<T>, positions: &[Position<T>]) -> Self {
        let two = T::lit(2.0);
        let entries = grid.map_half_modes(|m| {
            let (mut re, mut im) = (T::zero(), T::zero());
            for x in positions {
                let (s, c) = m.dot(x).sin_cos();
                re = re + c;
                im = im - s;
            }
            let structure = re * re + im * im;
            (m.omega, two * m.u2 / (m.omega * m.omega) * structure)
        });
        Self {
            prefactor: grid.prefactor(),
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_{x,y} W_{x,y}(T)`.
    pub fn total(&self, time: T) -> Complex<T> {
        let (re, im) = chunked_sum2(self.entries.len(), 16384, |i| {
            let (omega, w) = self.entries[i];
            let (fr, fi) = retarded_factor(omega, time);
            (w * fr, w * fi)
        });
        Complex::new(re, im) * self.prefactor
    }
}

/// `D_HS` evaluator for a fixed layout; reuse it for time series.
#[derive(Debug, Clone)]
pub struct HsEvaluator<T> {
    terms: Vec<(T, PairSpectrum<T>)>,
    proportionality: T,
}

impl<T: Scalar> HsEvaluator<T> {
    pub fn new(
        grids: &[&ModeGrid<T>],
        couplings: &EffectiveCoupling<T>,
        layout: &QubitLayout<T>,
        proportionality: T,
    ) -> Self {
        let n = T::from_count(layout.n_logical() as u64);
        let max_ls = grids
            .iter()
            .map(|g| couplings.get(g.axis()).abs())
            .fold(T::zero(), |a, b| a.max(b));
        if max_ls * max_ls * n > T::lit(0.1) {
            log::warn!(
                "λ*²N = {} is not small; the perturbative bound assumes λ*²N ≪ 1",
                max_ls * max_ls * n
            );
        }
        let terms = grids
            .iter()
            .map(|g| {
                (
                    couplings.get(g.axis()),
                    PairSpectrum::new(g, &layout.logical_positions),
                )
            })
            .collect();
        Self {
            terms,
            proportionality,
        }
    }

    /// `D_HS(T) = c sqrt(Σ_α λ*_α² |Σ_{x,y} W^α_{x,y}(T)|²)`.
    pub fn distance(&self, time: T) -> T {
        let mut acc = T::zero();
        for (ls, spectrum) in &self.terms {
            if *ls == T::zero() {
                continue;
            }
            acc = acc + *ls * *ls * spectrum.total(time).norm_sqr();
        }
        self.proportionality * acc.sqrt()
    }
}

/// Hilbert–Schmidt distance bound at one time.
pub fn hs_distance<T: Scalar>(
    grids: &[&ModeGrid<T>],
    couplings: &EffectiveCoupling<T>,
    layout: &QubitLayout<T>,
    time: T,
    proportionality: T,
) -> T {
    HsEvaluator::new(grids, couplings, layout, proportionality).distance(time)
}

/// `2^{N/2} D_HS`, the trace-distance upper bound from the HS norm.
pub fn trace_distance_upper<T: Scalar>(d_hs: T, n_logical: usize) -> T {
    T::lit(2.0).powf(T::from_count(n_logical as u64) / T::lit(2.0)) * d_hs
}
