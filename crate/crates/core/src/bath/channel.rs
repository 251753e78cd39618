use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Bath channel direction: which Pauli the bath field couples to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 2] = [Axis::X, Axis::Z];

    pub fn as_str(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Configuration(format!("unknown axis {other:?}, expected x or z"))),
        }
    }
}

/// One bosonic bath coupled along `axis`.
///
/// Dimensionless units with `ω₀ = k₀ = κ₀ = 1`: the dispersion is
/// `ω(k) = |k|^z_exp` and the coupling weight `|u_k|² = |k|^(2 s_exp)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathChannel<T> {
    pub axis: Axis,
    pub z_exp: T,
    pub s_exp: T,
    pub lambda: T,
}

impl<T: Scalar> BathChannel<T> {
    pub fn new(axis: Axis, z_exp: T, s_exp: T, lambda: T) -> Result<Self> {
        let ch = Self {
            axis,
            z_exp,
            s_exp,
            lambda,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_exp.is_finite() && self.z_exp > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "z_exp",
                reason: format!("must be finite and > 0, got {}", self.z_exp),
            });
        }
        if !self.s_exp.is_finite() {
            return Err(Error::InvalidParameter {
                name: "s_exp",
                reason: "must be finite".into(),
            });
        }
        if !(self.lambda.is_finite() && self.lambda >= T::zero()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("must be finite and >= 0, got {}", self.lambda),
            });
        }
        Ok(())
    }

    /// `ω(|k|)`.
    #[inline]
    pub fn omega(&self, k_abs: T) -> T {
        k_abs.powf(self.z_exp)
    }

    /// `|u_k|²`.
    #[inline]
    pub fn coupling_weight(&self, k_abs: T) -> T {
        k_abs.powf(self.s_exp + self.s_exp)
    }

    pub fn with_lambda(mut self, lambda: T) -> Self {
        self.lambda = lambda;
        self
    }
}

/// Periodic box of side `length` in `dim` dimensions with a sharp frequency
/// cutoff `omega_c`. The smallest momentum is `2π/length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathGeometry<T> {
    pub dim: usize,
    pub length: T,
    pub omega_c: T,
}

impl<T: Scalar> BathGeometry<T> {
    pub fn new(dim: usize, length: T, omega_c: T) -> Result<Self> {
        let g = Self {
            dim,
            length,
            omega_c,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::InvalidParameter {
                name: "D",
                reason: format!("spatial dimension must be 1, 2 or 3, got {}", self.dim),
            });
        }
        if !(self.length.is_finite() && self.length > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "L",
                reason: format!("must be finite and > 0, got {}", self.length),
            });
        }
        if !(self.omega_c.is_finite() && self.omega_c > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                reason: format!("must be finite and > 0, got {}", self.omega_c),
            });
        }
        Ok(())
    }

    /// `2π/L`.
    pub fn k_min(&self) -> T {
        T::TAU() / self.length
    }

    /// `(2π/L)^D`.
    pub fn prefactor(&self) -> T {
        self.k_min().powi(self.dim as i32)
    }

    /// `k₀L/2π` in dimensionless units.
    pub fn ir_ratio(&self) -> T {
        self.length / T::TAU()
    }

    /// Checks that the lowest mode of `ch` is not above the cutoff, i.e.
    /// that the grid has at least one mode.
    pub fn check_channel(&self, ch: &BathChannel<T>) -> Result<()> {
        let lowest = ch.omega(self.k_min());
        if lowest > self.omega_c * (T::one() + T::lit(1e-12)) {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                reason: format!(
                    "cutoff {} is below the lowest mode frequency {} (L = {})",
                    self.omega_c, lowest, self.length
                ),
            });
        }
        Ok(())
    }
}
