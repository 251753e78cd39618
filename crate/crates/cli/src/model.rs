//! Everything a subcommand needs, derived once from a validated config.

use qecbound::analysis::{a_matrix, enumerate_eta, lambda_star, AMatrix, EffectiveCoupling, EtaTable};
use qecbound::bath::{Axis, BathGeometry, BoundInput, ModeGrid, QubitLayout};
use qecbound::pauli::{five_qubit_code, StabilizerCode};

use crate::config::RunConfig;

pub struct Model {
    pub cfg: RunConfig,
    pub geom: BathGeometry<f64>,
    pub layout: QubitLayout<f64>,
    pub code: StabilizerCode,
    pub eta: EtaTable,
    grids: Vec<ModeGrid<f64>>,
    /// One matrix per axis, zero for unconfigured channels.
    pub a: Vec<AMatrix<f64>>,
    pub lambda_star: EffectiveCoupling<f64>,
}

pub fn code_by_name(name: &str) -> anyhow::Result<StabilizerCode> {
    match name {
        "five-qubit" => Ok(five_qubit_code()),
        other => anyhow::bail!("unknown code {other:?}"),
    }
}

impl Model {
    /// `lambda_star_override` replaces the computed `λ*_α` of every
    /// configured channel.
    pub fn build(cfg: RunConfig, lambda_star_override: Option<f64>) -> anyhow::Result<Self> {
        let geom = cfg.geometry();
        let code = code_by_name(&cfg.code.name)?;
        let l = &cfg.layout;
        let layout = QubitLayout::regular(l.n, code.num_qubits(), l.dim_x, cfg.bath.dim, l.xi, l.big_xi)?;
        let eta = enumerate_eta(&code)?;
        let channels = cfg.channels();
        let grids = channels
            .iter()
            .map(|ch| ModeGrid::build(&geom, ch, cfg.budget.max_modes))
            .collect::<Result<Vec<_>, _>>()?;
        let a = Axis::ALL
            .iter()
            .map(|&axis| match channels.iter().zip(&grids).find(|(c, _)| c.axis == axis) {
                Some((ch, grid)) => a_matrix(grid, &layout, ch, cfg.qec.delta),
                None => Ok(AMatrix::zeros(axis, code.num_qubits())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut ls = lambda_star(&channels, &eta, &a)?;
        if let Some(v) = lambda_star_override {
            anyhow::ensure!(v.is_finite() && v >= 0.0, "--lambda-star must be finite and >= 0, got {v}");
            for ch in &channels {
                match ch.axis {
                    Axis::X => ls.x = v,
                    Axis::Z => ls.z = v,
                }
            }
        }
        Ok(Self {
            cfg,
            geom,
            layout,
            code,
            eta,
            grids,
            a,
            lambda_star: ls,
        })
    }

    pub fn grid(&self, axis: Axis) -> Option<&ModeGrid<f64>> {
        self.grids.iter().find(|g| g.axis() == axis)
    }

    pub fn grids(&self) -> &[ModeGrid<f64>] {
        &self.grids
    }

    pub fn a_matrix(&self, axis: Axis) -> &AMatrix<f64> {
        self.a.iter().find(|m| m.axis == axis).expect("one matrix per axis")
    }

    pub fn bound_input(&self) -> anyhow::Result<BoundInput<f64>> {
        let c = &self.cfg;
        Ok(BoundInput::new(c.criteria.d_crit, c.criteria.sigma_plus_abs, c.layout.n, c.qec.delta)?
            .with_c_cal(c.calibration.c_cal)
            .with_b_cal(c.calibration.b_cal))
    }
}
