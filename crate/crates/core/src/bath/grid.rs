use num_complex::Complex;

use super::channel::{Axis, BathChannel, BathGeometry};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sum::{chunk_partials, chunked_sum, chunked_sum2, pairwise_sum, NeumaierSum};

/// Default cap on the number of lattice modes in one grid.
pub const DEFAULT_MODE_BUDGET: u64 = 10_000_000;

/// One lattice momentum `k = (2π/L)·n`, `n ≠ 0`. Unused components are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode<T> {
    pub n: [i64; 3],
    pub k: [T; 3],
    pub k_abs: T,
    pub omega: T,
    pub u2: T,
}

impl<T: Scalar> Mode<T> {
    #[inline]
    pub fn dot(&self, x: &[T; 3]) -> T {
        self.k[0] * x[0] + self.k[1] * x[1] + self.k[2] * x[2]
    }
}

/// All modes sharing `|n|² = n_sq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell<T> {
    pub n_sq: u64,
    pub multiplicity: u64,
    pub k_abs: T,
    pub omega: T,
    pub u2: T,
}

#[derive(Debug, Clone, PartialEq)]
enum Shells {
    /// D = 1: shell `i` is `n = ±(i+1)`.
    Line { n_max: u64 },
    /// D ≥ 2: `(n², multiplicity)` in increasing `n²`.
    Table(Vec<(u64, u64)>),
}

/// The discrete momentum lattice of one bath channel inside a cutoff sphere.
///
/// Modes are all integer vectors `n ≠ 0` with `ω((2π/L)|n|) ≤ ω_c`; the set
/// is closed under `n → -n`. Only the radial shell structure is stored.
/// Individual momentum vectors are regenerated on demand in a fixed order
/// (lexicographic in `n`), which keeps 3D grids with 10^7+ modes cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid<T> {
    axis: Axis,
    dim: usize,
    length: T,
    omega_c: T,
    z_exp: T,
    s_exp: T,
    k_unit: T,
    prefactor: T,
    n_max: i64,
    n_sq_max: u64,
    shells: Shells,
    mode_count: u64,
}

/// Builds the grid for `ch` with the default mode budget.
pub fn build_mode_grid<T: Scalar>(geom: &BathGeometry<T>, ch: &BathChannel<T>) -> Result<ModeGrid<T>> {
    ModeGrid::build(geom, ch, DEFAULT_MODE_BUDGET)
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

impl<T: Scalar> ModeGrid<T> {
    pub fn build(geom: &BathGeometry<T>, ch: &BathChannel<T>, budget: u64) -> Result<Self> {
        geom.validate()?;
        ch.validate()?;
        geom.check_channel(ch)?;

        // |n|² ≤ (L/2π)² ω_c^(2/z), with a small relative slack so that modes
        // sitting exactly on the cutoff are kept.
        let radius = geom.ir_ratio().to_f64_lossy()
            * geom.omega_c.to_f64_lossy().powf(1.0 / ch.z_exp.to_f64_lossy());
        let bound = radius * radius * (1.0 + 1e-12);
        if !bound.is_finite() || bound > 1e18 {
            return Err(Error::ModeBudget {
                length: geom.length.to_f64_lossy(),
                omega_c: geom.omega_c.to_f64_lossy(),
                modes: u64::MAX,
                budget,
            });
        }
        let n_sq_max = bound.floor() as u64;
        let n_max = isqrt(n_sq_max);
        if n_sq_max == 0 {
            return Err(Error::Degenerate("mode grid is empty".into()));
        }

        let estimate = match geom.dim {
            1 => 2.0 * n_max as f64,
            2 => std::f64::consts::PI * n_sq_max as f64,
            _ => 4.0 / 3.0 * std::f64::consts::PI * (n_sq_max as f64).powf(1.5),
        };
        let budget_error = |modes: u64| Error::ModeBudget {
            length: geom.length.to_f64_lossy(),
            omega_c: geom.omega_c.to_f64_lossy(),
            modes,
            budget,
        };
        // Lattice counts deviate from the volume by a surface term; only
        // reject outright when clearly over budget.
        if estimate > 1.1 * budget as f64 + 100.0 {
            return Err(budget_error(estimate as u64));
        }

        let (shells, mode_count) = if geom.dim == 1 {
            (Shells::Line { n_max }, 2 * n_max)
        } else {
            let table = shell_table(geom.dim, n_max as i64, n_sq_max);
            let count = table.iter().map(|s| s.1).sum();
            (Shells::Table(table), count)
        };
        if mode_count > budget {
            return Err(budget_error(mode_count));
        }

        Ok(Self {
            axis: ch.axis,
            dim: geom.dim,
            length: geom.length,
            omega_c: geom.omega_c,
            z_exp: ch.z_exp,
            s_exp: ch.s_exp,
            k_unit: geom.k_min(),
            prefactor: geom.prefactor(),
            n_max: n_max as i64,
            n_sq_max,
            shells,
            mode_count,
        })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn omega_c(&self) -> T {
        self.omega_c
    }

    pub fn z_exp(&self) -> T {
        self.z_exp
    }

    pub fn s_exp(&self) -> T {
        self.s_exp
    }

    /// `(2π/L)^D`.
    pub fn prefactor(&self) -> T {
        self.prefactor
    }

    pub fn mode_count(&self) -> u64 {
        self.mode_count
    }

    /// Largest `|n|²` inside the cutoff.
    pub fn n_sq_max(&self) -> u64 {
        self.n_sq_max
    }

    pub fn shell_count(&self) -> usize {
        match &self.shells {
            Shells::Line { n_max } => *n_max as usize,
            Shells::Table(t) => t.len(),
        }
    }

    /// `ζ = 2(z - s) - D` for this channel.
    pub fn zeta_single(&self) -> T {
        (self.z_exp - self.s_exp) * T::lit(2.0) - T::from_count(self.dim as u64)
    }

    fn shell_from(&self, n_sq: u64, multiplicity: u64) -> Shell<T> {
        let k_abs = T::from_count(n_sq).sqrt() * self.k_unit;
        Shell {
            n_sq,
            multiplicity,
            k_abs,
            omega: k_abs.powf(self.z_exp),
            u2: k_abs.powf(self.s_exp + self.s_exp),
        }
    }

    pub fn shell(&self, index: usize) -> Shell<T> {
        match &self.shells {
            Shells::Line { .. } => {
                let n = index as u64 + 1;
                self.shell_from(n * n, 2)
            }
            Shells::Table(t) => {
                let (n_sq, m) = t[index];
                self.shell_from(n_sq, m)
            }
        }
    }

    pub fn shells(&self) -> impl Iterator<Item = Shell<T>> + '_ {
        (0..self.shell_count()).map(move |i| self.shell(i))
    }

    /// Sums `f` over shells (`f` is responsible for the multiplicity).
    pub fn sum_shells<F>(&self, f: F) -> T
    where
        F: Fn(&Shell<T>) -> T + Sync,
    {
        chunked_sum(self.shell_count(), 4096, |i| f(&self.shell(i)))
    }

    /// `Σ_k |u_k|²/ω_k²`, the static part of the decoherence sums.
    pub fn static_sum(&self) -> T {
        self.sum_shells(|s| T::from_count(s.multiplicity) * s.u2 / (s.omega * s.omega))
    }

    fn mode_at(&self, n: [i64; 3]) -> Mode<T> {
        let n_sq = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) as u64;
        let s = self.shell_from(n_sq, 1);
        Mode {
            n,
            k: [
                T::from_i64(n[0]).unwrap() * self.k_unit,
                T::from_i64(n[1]).unwrap() * self.k_unit,
                T::from_i64(n[2]).unwrap() * self.k_unit,
            ],
            k_abs: s.k_abs,
            omega: s.omega,
            u2: s.u2,
        }
    }

    fn row_block(&self) -> usize {
        match self.dim {
            1 => 8192,
            2 => 16,
            _ => 1,
        }
    }

    /// Visits the modes whose first index is `n1`, optionally only those in
    /// the half space (first non-zero index positive).
    fn for_each_in_row(&self, n1: i64, half: bool, f: &mut impl FnMut(&Mode<T>)) {
        let max = self.n_sq_max as i64;
        let rem1 = max - n1 * n1;
        if rem1 < 0 {
            return;
        }
        match self.dim {
            1 => {
                if n1 != 0 {
                    f(&self.mode_at([n1, 0, 0]));
                }
            }
            2 => {
                let r = isqrt(rem1 as u64) as i64;
                let lo = if half && n1 == 0 { 1 } else { -r };
                for n2 in lo..=r {
                    if n1 != 0 || n2 != 0 {
                        f(&self.mode_at([n1, n2, 0]));
                    }
                }
            }
            _ => {
                let r2 = isqrt(rem1 as u64) as i64;
                let lo2 = if half && n1 == 0 { 0 } else { -r2 };
                for n2 in lo2..=r2 {
                    let rem2 = rem1 - n2 * n2;
                    let r3 = isqrt(rem2 as u64) as i64;
                    let lo3 = if half && n1 == 0 && n2 == 0 { 1 } else { -r3 };
                    for n3 in lo3..=r3 {
                        if n1 != 0 || n2 != 0 || n3 != 0 {
                            f(&self.mode_at([n1, n2, n3]));
                        }
                    }
                }
            }
        }
    }

    fn rows(&self, half: bool) -> (i64, usize) {
        if half {
            (0, self.n_max as usize + 1)
        } else {
            (-self.n_max, 2 * self.n_max as usize + 1)
        }
    }

    /// Every mode, in lexicographic order of `n`.
    pub fn modes(&self) -> Vec<Mode<T>> {
        let mut out = Vec::with_capacity(self.mode_count as usize);
        let (start, rows) = self.rows(false);
        for r in 0..rows {
            self.for_each_in_row(start + r as i64, false, &mut |m| out.push(*m));
        }
        out
    }

    /// Sums `f` over every mode.
    pub fn sum_modes<F>(&self, f: F) -> T
    where
        F: Fn(&Mode<T>) -> T + Sync,
    {
        self.sum_modes_multi(1, |m, acc| acc[0] = f(m))[0]
    }

    /// Complex sum of `f` over every mode.
    pub fn sum_modes_complex<F>(&self, f: F) -> Complex<T>
    where
        F: Fn(&Mode<T>) -> Complex<T> + Sync,
    {
        let v = self.sum_modes_multi(2, |m, acc| {
            let c = f(m);
            acc[0] = c.re;
            acc[1] = c.im;
        });
        Complex::new(v[0], v[1])
    }

    /// Sums a vector-valued function over every mode. `f` writes the
    /// `width` summands of one mode into its output slice.
    pub fn sum_modes_multi<F>(&self, width: usize, f: F) -> Vec<T>
    where
        F: Fn(&Mode<T>, &mut [T]) + Sync,
    {
        self.reduce_rows(false, width, f)
    }

    /// Like [`Self::sum_modes_multi`] restricted to the half space; for
    /// summands even under `k → -k` the full sum is twice this.
    pub fn sum_half_modes_multi<F>(&self, width: usize, f: F) -> Vec<T>
    where
        F: Fn(&Mode<T>, &mut [T]) + Sync,
    {
        self.reduce_rows(true, width, f)
    }

    fn reduce_rows<F>(&self, half: bool, width: usize, f: F) -> Vec<T>
    where
        F: Fn(&Mode<T>, &mut [T]) + Sync,
    {
        let (start, rows) = self.rows(half);
        let partials = chunk_partials(rows, self.row_block(), |range| {
            let mut acc = vec![NeumaierSum::<T>::new(); width];
            let mut buf = vec![T::zero(); width];
            for r in range {
                self.for_each_in_row(start + r as i64, half, &mut |m| {
                    buf.iter_mut().for_each(|b| *b = T::zero());
                    f(m, &mut buf);
                    for (a, &b) in acc.iter_mut().zip(&buf) {
                        a.add(b);
                    }
                });
            }
            acc.into_iter().map(|a| a.value()).collect::<Vec<T>>()
        });
        (0..width)
            .map(|c| {
                let column: Vec<T> = partials.iter().map(|p| p[c]).collect();
                pairwise_sum(&column)
            })
            .collect()
    }

    /// Collects `g(mode)` for every half-space mode, in enumeration order.
    pub fn map_half_modes<R, G>(&self, g: G) -> Vec<R>
    where
        R: Send,
        G: Fn(&Mode<T>) -> R + Sync,
    {
        let (start, rows) = self.rows(true);
        chunk_partials(rows, self.row_block(), |range| {
            let mut out = Vec::new();
            for r in range {
                self.for_each_in_row(start + r as i64, true, &mut |m| out.push(g(m)));
            }
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Sum over shells of a pair of values; used for oscillatory sums where
    /// the summand depends on `|k|` only.
    pub fn sum_shells2<F>(&self, f: F) -> (T, T)
    where
        F: Fn(&Shell<T>) -> (T, T) + Sync,
    {
        chunked_sum2(self.shell_count(), 4096, |i| f(&self.shell(i)))
    }
}

/// Counts lattice vectors per `|n|²` inside the ball `|n|² ≤ n_sq_max`.
fn shell_table(dim: usize, n_max: i64, n_sq_max: u64) -> Vec<(u64, u64)> {
    let mut counts = vec![0u64; n_sq_max as usize + 1];
    let max = n_sq_max as i64;
    for a in -n_max..=n_max {
        let ra = max - a * a;
        if ra < 0 {
            continue;
        }
        let rb = isqrt(ra as u64) as i64;
        for b in -rb..=rb {
            let sab = a * a + b * b;
            if dim == 2 {
                counts[sab as usize] += 1;
                continue;
            }
            let rc = isqrt((max - sab) as u64) as i64;
            for c in -rc..=rc {
                counts[(sab + c * c) as usize] += 1;
            }
        }
    }
    counts[0] = 0;
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(n_sq, c)| (n_sq as u64, c))
        .collect()
}
