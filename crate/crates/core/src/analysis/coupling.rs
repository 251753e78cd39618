use super::eta::EtaTable;
use crate::bath::{Axis, BathChannel, ModeGrid, QubitLayout};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative tolerance on the imaginary residual of an a-matrix entry.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// Pair amplitudes `a_{αij}` of one channel over the code qubits of a logical
/// qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct AMatrix<T> {
    pub axis: Axis,
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> AMatrix<T> {
    pub fn zeros(axis: Axis, n: usize) -> Self {
        Self {
            axis,
            n,
            values: vec![T::zero(); n * n],
        }
    }

    /// Every entry equal to `value`.
    pub fn uniform(axis: Axis, n: usize, value: T) -> Self {
        Self {
            axis,
            n,
            values: vec![value; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.n + j]
    }

    fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.values[i * self.n + j] = v;
        self.values[j * self.n + i] = v;
    }
}

/// `a_{αij} = (λ_α Δ)² (2π/L)^D Σ_k |u_k|² e^{-ik·(x_i - x_j)}`.
///
/// The `k`-sum pairs `±k`, so each entry is real; the imaginary part is
/// still summed and must vanish to [`IMAGINARY_TOLERANCE`] relative to the
/// on-site sum.
pub fn a_matrix<T: Scalar>(
    grid: &ModeGrid<T>,
    layout: &QubitLayout<T>,
    channel: &BathChannel<T>,
    delta: T,
) -> Result<AMatrix<T>> {
    if grid.axis() != channel.axis {
        return Err(Error::Configuration(format!(
            "grid is for channel {} but the coupling is for channel {}",
            grid.axis(),
            channel.axis
        )));
    }
    if grid.mode_count() == 0 {
        return Err(Error::Degenerate("empty mode grid".into()));
    }
    let pos = &layout.physical_offsets;
    let n = pos.len();
    let pairs: Vec<(usize, usize, [T; 3])> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                i,
                j,
                [pos[i][0] - pos[j][0], pos[i][1] - pos[j][1], pos[i][2] - pos[j][2]],
            )
        })
        .collect();
    let p = pairs.len();
    let sums = grid.sum_modes_multi(2 * p, |m, out| {
        for (slot, (_, _, r)) in pairs.iter().enumerate() {
            let (s, c) = m.dot(r).sin_cos();
            out[slot] = m.u2 * c;
            out[p + slot] = -m.u2 * s;
        }
    });
    let onsite = grid.sum_modes(|m| m.u2);
    let scale = channel.lambda * delta * channel.lambda * delta * grid.prefactor();
    let mut a = AMatrix::zeros(channel.axis, n);
    for (slot, &(i, j, _)) in pairs.iter().enumerate() {
        let residual = (sums[p + slot] / onsite).abs();
        if residual > T::lit(IMAGINARY_TOLERANCE) {
            return Err(Error::NonReal {
                residual: residual.to_f64_lossy(),
            });
        }
        a.set_sym(i, j, scale * sums[slot]);
    }
    Ok(a)
}

/// Renormalized logical couplings `λ*_x`, `λ*_z` (units of `ω₀`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EffectiveCoupling<T> {
    pub x: T,
    pub z: T,
}

impl<T: Scalar> EffectiveCoupling<T> {
    pub fn uniform(v: T) -> Self {
        Self { x: v, z: v }
    }

    pub fn get(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.x,
            Axis::Z => self.z,
        }
    }

    pub fn max(&self) -> T {
        self.x.max(self.z)
    }
}

/// `λ*_α = λ_α Σ_{β,i,j,k} η^{αβ}_{ijk} a_{βjk}`.
///
/// Each table entry contributes once: the non-zero η coefficients are
/// exactly the stored `j < k` entries. A channel absent from `couplings` has
/// `λ = 0`.
pub fn lambda_star<T: Scalar>(
    couplings: &[BathChannel<T>],
    eta: &EtaTable,
    a: &[AMatrix<T>],
) -> Result<EffectiveCoupling<T>> {
    let lambda_of = |axis: Axis| {
        couplings
            .iter()
            .find(|c| c.axis == axis)
            .map_or(T::zero(), |c| c.lambda)
    };
    let mut out = EffectiveCoupling::default();
    for alpha in Axis::ALL {
        let lambda = lambda_of(alpha);
        let mut total = T::zero();
        for e in eta.entries().iter().filter(|e| e.alpha == alpha) {
            let am = a.iter().find(|m| m.axis == e.beta).ok_or_else(|| {
                Error::Configuration(format!(
                    "η table needs a-matrix for channel {} but none was supplied",
                    e.beta
                ))
            })?;
            if am.n() != eta.num_qubits() {
                return Err(Error::Configuration(format!(
                    "a-matrix for channel {} is {}x{}, code has {} qubits",
                    am.axis,
                    am.n(),
                    am.n(),
                    eta.num_qubits()
                )));
            }
            total = total + am.get(e.j, e.k);
        }
        let v = lambda * total;
        match alpha {
            Axis::X => out.x = v,
            Axis::Z => out.z = v,
        }
    }
    Ok(out)
}
