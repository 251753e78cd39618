use std::fmt;

use super::channel::{BathChannel, BathGeometry};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which mode sum a ζ exponent describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    /// Single-qubit dephasing `γ(T)`; regime boundary `2z`.
    SingleDephasing,
    /// Diagonal `W_{x,x}` terms; boundary `z`.
    WSelf,
    /// Off-diagonal `W_{x,y}` terms, with the array dimension entering ζ.
    WCorrelated,
}

impl SumKind {
    pub const ALL: [SumKind; 3] = [SumKind::SingleDephasing, SumKind::WSelf, SumKind::WCorrelated];

    pub fn as_str(self) -> &'static str {
        match self {
            SumKind::SingleDephasing => "single_dephasing",
            SumKind::WSelf => "w_self",
            SumKind::WCorrelated => "w_correlated",
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// ζ < 0: sums saturate.
    SuperOhmic,
    /// ζ = 0: logarithmic growth.
    Ohmic,
    /// 0 < ζ < boundary: power-law growth `M^{ζ/z}`.
    SubOhmic,
    /// ζ ≥ boundary: infrared dominated, grows with the box size.
    StrongIr,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SuperOhmic => "SuperOhmic",
            Regime::Ohmic => "Ohmic",
            Regime::SubOhmic => "SubOhmic",
            Regime::StrongIr => "StrongIR",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerance for classifying ζ as exactly marginal.
pub const ZETA_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport<T> {
    pub kind: SumKind,
    pub zeta: T,
    pub z_exp: T,
    pub boundary: T,
    pub regime: Regime,
}

impl<T: Scalar> RegimeReport<T> {
    /// Growth exponent `ζ/z` of the power-law cases.
    pub fn exponent(&self) -> T {
        self.zeta / self.z_exp
    }
}

/// Classifies `ζ` against `boundary`. Values within [`ZETA_TOLERANCE`] of
/// 0 are Ohmic; `ζ = boundary` counts as strong-IR.
pub fn classify_zeta<T: Scalar>(zeta: T, boundary: T) -> Regime {
    let tol = T::lit(ZETA_TOLERANCE);
    if zeta.abs() <= tol {
        Regime::Ohmic
    } else if zeta < T::zero() {
        Regime::SuperOhmic
    } else if zeta < boundary - tol {
        Regime::SubOhmic
    } else {
        Regime::StrongIr
    }
}

/// `ζ = 2(z - s) - D` (plus `D_x` for correlated sums) and its regime.
pub fn zeta_and_regime<T: Scalar>(
    ch: &BathChannel<T>,
    geom: &BathGeometry<T>,
    kind: SumKind,
    dim_x: usize,
) -> Result<RegimeReport<T>> {
    if kind == SumKind::WCorrelated && dim_x > geom.dim {
        return Err(Error::Configuration(format!(
            "array dimension D_x = {dim_x} exceeds environment dimension D = {}",
            geom.dim
        )));
    }
    let base = (ch.z_exp - ch.s_exp) * T::lit(2.0) - T::from_count(geom.dim as u64);
    let (zeta, boundary) = match kind {
        SumKind::SingleDephasing => (base, ch.z_exp * T::lit(2.0)),
        SumKind::WSelf => (base, ch.z_exp),
        SumKind::WCorrelated => (base + T::from_count(dim_x as u64), ch.z_exp),
    };
    Ok(RegimeReport {
        kind,
        zeta,
        z_exp: ch.z_exp,
        boundary,
        regime: classify_zeta(zeta, boundary),
    })
}
