use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Position<T> = [T; 3];

/// Physical placement of logical qubits and of the code qubits inside each.
///
/// Logical qubits sit on a `dim_x`-dimensional square array with spacing
/// `big_xi`, filled in lexicographic order. The five (or `n_physical`) code
/// qubits of a logical qubit are offsets around its centre with spacing `xi`:
/// a line along the first axis when `dim_x ≤ 1`, otherwise a plus shape in the
/// first two axes (centre first, then ±axis 1, ±axis 2) for five qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitLayout<T> {
    pub dim_x: usize,
    pub xi: T,
    pub big_xi: T,
    pub logical_positions: Vec<Position<T>>,
    pub physical_offsets: Vec<Position<T>>,
}

impl<T: Scalar> QubitLayout<T> {
    pub fn regular(
        n_logical: usize,
        n_physical: usize,
        dim_x: usize,
        env_dim: usize,
        xi: T,
        big_xi: T,
    ) -> Result<Self> {
        if n_logical == 0 {
            return Err(Error::Configuration("layout needs at least one logical qubit".into()));
        }
        if dim_x > env_dim {
            return Err(Error::Configuration(format!(
                "array dimension D_x = {dim_x} exceeds environment dimension D = {env_dim}"
            )));
        }
        if dim_x == 0 && n_logical > 1 {
            return Err(Error::Configuration(
                "a 0-dimensional array holds a single logical qubit".into(),
            ));
        }
        if !(xi.is_finite() && xi > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "xi",
                reason: format!("must be finite and > 0, got {xi}"),
            });
        }
        if !(big_xi.is_finite() && big_xi > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "Xi",
                reason: format!("must be finite and > 0, got {big_xi}"),
            });
        }

        let side = if dim_x == 0 {
            1
        } else {
            let mut s = 1usize;
            while s.pow(dim_x as u32) < n_logical {
                s += 1;
            }
            s
        };
        let logical_positions = (0..n_logical)
            .map(|idx| {
                let mut p = [T::zero(); 3];
                let mut rest = idx;
                for axis in (0..dim_x).rev() {
                    p[axis] = T::from_count((rest % side) as u64) * big_xi;
                    rest /= side;
                }
                p
            })
            .collect();

        let physical_offsets = if dim_x >= 2 && n_physical == 5 {
            let z = T::zero();
            vec![[z, z, z], [xi, z, z], [-xi, z, z], [z, xi, z], [z, -xi, z]]
        } else {
            let centre = T::from_count(n_physical.saturating_sub(1) as u64) / T::lit(2.0);
            (0..n_physical)
                .map(|q| [(T::from_count(q as u64) - centre) * xi, T::zero(), T::zero()])
                .collect()
        };

        let layout = Self {
            dim_x,
            xi,
            big_xi,
            logical_positions,
            physical_offsets,
        };
        for w in layout.warnings() {
            log::warn!("{w}");
        }
        Ok(layout)
    }

    /// A layout with explicit logical positions (physical offsets on a line).
    pub fn from_positions(positions: Vec<Position<T>>, n_physical: usize, xi: T) -> Self {
        let centre = T::from_count(n_physical.saturating_sub(1) as u64) / T::lit(2.0);
        Self {
            dim_x: 1,
            xi,
            big_xi: T::infinity(),
            logical_positions: positions,
            physical_offsets: (0..n_physical)
                .map(|q| [(T::from_count(q as u64) - centre) * xi, T::zero(), T::zero()])
                .collect(),
        }
    }

    pub fn n_logical(&self) -> usize {
        self.logical_positions.len()
    }

    /// Shifts every logical position by `shift`.
    pub fn translated(&self, shift: Position<T>) -> Self {
        let mut out = self.clone();
        for p in &mut out.logical_positions {
            for a in 0..3 {
                p[a] = p[a] + shift[a];
            }
        }
        out
    }

    /// Soft-constraint violations (`ξ ≪ Ξ` is assumed when several logical
    /// qubits are present).
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n_logical() > 1 && self.big_xi.is_finite() && self.xi * T::lit(10.0) > self.big_xi {
            out.push(format!(
                "intra-logical spacing xi = {} is not small compared with Xi = {}",
                self.xi, self.big_xi
            ));
        }
        out
    }
}
