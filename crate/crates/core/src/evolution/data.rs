use std::f64::consts::PI;

use super::state::FieldState;
use crate::error::{Error, Result};
use crate::radial::{RadialGrid, ScalarField};

/// Initial-data families.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `F = A r^3 e^{-r^2}`, `dF/dt = 0`.
    Degree0GaussianCubed { amplitude: f64 },
    /// `F = S + A (r/rho)^3 e^{-(r - rho)^2}`, `dF/dt = 0`. The bump is
    /// normalized so that `A` is roughly its peak height.
    Degree1PerturbedSkyrmion { amplitude: f64, rho: f64 },
    /// `F = S`, `dF/dt = A (r/rho) e^{-(r/rho)^2}`.
    Degree1KickedSkyrmion { amplitude: f64, rho: f64 },
    /// Tabulated `F` and `dF/dt` on the evolution grid.
    Custom { f: Vec<f64>, fdot: Vec<f64>, degree: u32 },
}

impl InitialData {
    pub fn degree(&self) -> u32 {
        match self {
            InitialData::Degree0GaussianCubed { .. } => 0,
            InitialData::Degree1PerturbedSkyrmion { .. } | InitialData::Degree1KickedSkyrmion { .. } => 1,
            InitialData::Custom { degree, .. } => *degree,
        }
    }

    /// Radius outside which the data coincide with the static background
    /// to below 1e-16.
    pub fn support_radius(&self) -> f64 {
        match self {
            InitialData::Degree0GaussianCubed { .. } => 6.5,
            InitialData::Degree1PerturbedSkyrmion { rho, .. } => rho + 6.5,
            InitialData::Degree1KickedSkyrmion { rho, .. } => 6.5 * rho,
            InitialData::Custom { .. } => 0.0,
        }
    }
}

/// Sample a family on `grid`. Degree-one families are built on `background`,
/// the soliton on the same grid; passing its discrete equilibrium keeps the
/// unperturbed part exactly static.
pub fn make_initial_data(
    data: &InitialData,
    grid: &RadialGrid,
    background: Option<&ScalarField>,
) -> Result<FieldState> {
    let n = grid.len();
    let need_profile = || -> Result<Vec<f64>> {
        let b = background.ok_or_else(|| Error::invalid("degree-one data need the static background"))?;
        if b.grid() != grid {
            return Err(Error::invalid("background must live on the data grid"));
        }
        Ok(b.values().to_vec())
    };
    let (f, fdot): (Vec<f64>, Vec<f64>) = match data {
        InitialData::Degree0GaussianCubed { amplitude } => {
            (grid.points().map(|r| amplitude * r.powi(3) * (-r * r).exp()).collect(), vec![0.0; n])
        }
        InitialData::Degree1PerturbedSkyrmion { amplitude, rho } => {
            if !(*rho > 0.0) {
                return Err(Error::invalid("rho must be positive"));
            }
            let s = need_profile()?;
            let f = grid
                .points()
                .zip(s)
                .map(|(r, s)| s + amplitude * (r / rho).powi(3) * (-(r - rho).powi(2)).exp())
                .collect();
            (f, vec![0.0; n])
        }
        InitialData::Degree1KickedSkyrmion { amplitude, rho } => {
            if !(*rho > 0.0) {
                return Err(Error::invalid("rho must be positive"));
            }
            let s = need_profile()?;
            let fdot = grid.points().map(|r| amplitude * (r / rho) * (-(r / rho).powi(2)).exp()).collect();
            (s, fdot)
        }
        InitialData::Custom { f, fdot, .. } => {
            if f.len() != n || fdot.len() != n {
                return Err(Error::invalid(format!(
                    "custom table has {} / {} samples, grid has {n}",
                    f.len(),
                    fdot.len()
                )));
            }
            (f.clone(), fdot.clone())
        }
    };
    let limit = data.degree() as f64 * PI;
    let tail = f[n - 1];
    if (tail - limit).abs() > 1e-2 {
        return Err(Error::invalid(format!(
            "data end at F = {tail}, expected {limit} for degree {}",
            data.degree()
        )));
    }
    if f[0] != 0.0 {
        return Err(Error::invalid("regularity requires F(0) = 0"));
    }
    let p = grid
        .points()
        .zip(f.iter().zip(&fdot))
        .map(|(r, (f, fd))| (r * r + 2.0 * f.sin().powi(2)) * fd)
        .collect();
    FieldState::new(*grid, f, p, 0.0)
}
