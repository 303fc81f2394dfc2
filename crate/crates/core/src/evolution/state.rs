use crate::error::{Error, Result};
use crate::radial::quadrature::extended_closed;
use crate::radial::stencil::d1_at;
use crate::radial::{OriginPlacement, Parity, RadialGrid, ScalarField};

/// Field `F` and momentum `P = w dF/dt` at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    f: ScalarField,
    p: ScalarField,
    pub t: f64,
}

impl FieldState {
    /// Both fields odd through the origin; `F(0)` must vanish.
    pub fn new(grid: RadialGrid, f: Vec<f64>, p: Vec<f64>, t: f64) -> Result<Self> {
        if grid.origin() != OriginPlacement::Vertex {
            return Err(Error::invalid("evolution grids must contain the origin"));
        }
        if f.first().copied() != Some(0.0) {
            return Err(Error::invalid("regularity requires F(t, 0) = 0"));
        }
        if !t.is_finite() {
            return Err(Error::invalid("time must be finite"));
        }
        let f = ScalarField::new(grid, f, Parity::Odd)?;
        let mut p = p;
        if let Some(p0) = p.first_mut() {
            *p0 = 0.0;
        }
        let p = ScalarField::new(grid, p, Parity::Odd)?;
        Ok(Self { f, p, t })
    }

    pub fn vacuum(grid: RadialGrid) -> Self {
        Self { f: ScalarField::zeros(grid, Parity::Odd), p: ScalarField::zeros(grid, Parity::Odd), t: 0.0 }
    }

    pub fn grid(&self) -> &RadialGrid {
        self.f.grid()
    }

    pub fn f(&self) -> &ScalarField {
        &self.f
    }

    pub fn p(&self) -> &ScalarField {
        &self.p
    }

    /// Stacked `[F..., P...]`.
    pub(crate) fn stacked(&self) -> Vec<f64> {
        let mut y = self.f.values().to_vec();
        y.extend_from_slice(self.p.values());
        y
    }

    pub(crate) fn from_stacked(grid: RadialGrid, y: &[f64], t: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, y[..n].to_vec(), y[n..].to_vec(), t)
    }
}

/// `sin F / r`, with its limit `F'(0)` at the origin.
#[inline]
pub(crate) fn sin_over_r(grid: &RadialGrid, f: &[f64], i: usize, sin_f: f64) -> f64 {
    if i == 0 {
        d1_at(grid, f, Parity::Odd, 0)
    } else {
        sin_f / grid.r(i)
    }
}

/// Energy split into the sigma-model and Skyrme parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub e_sigma: f64,
    pub e_skyrme: f64,
}

impl EnergyBreakdown {
    pub fn total(&self) -> f64 {
        self.e_sigma + self.e_skyrme
    }
}

/// `E_sigma = 1/2 int [r^2 (Fdot^2 + F'^2) + 2 sin^2 F]` and
/// `E_S = 1/2 int [2 sin^2 F (Fdot^2 + F'^2) + sin^4 F / r^2]`, with
/// `Fdot = P / w`, over the whole grid.
pub fn energy(state: &FieldState) -> Result<EnergyBreakdown> {
    let grid = *state.grid();
    let f = state.f.values();
    let p = state.p.values();
    let n = grid.len();
    let mut sigma = vec![0.0; n];
    let mut skyrme = vec![0.0; n];
    for i in 0..n {
        let r = grid.r(i);
        let s = f[i].sin();
        let s2 = s * s;
        let w = r * r + 2.0 * s2;
        let fdot = if i == 0 { 0.0 } else { p[i] / w };
        let fp = d1_at(&grid, f, Parity::Odd, i);
        let kin = fdot * fdot + fp * fp;
        let a = sin_over_r(&grid, f, i, s);
        sigma[i] = 0.5 * (r * r * kin + 2.0 * s2);
        skyrme[i] = 0.5 * (2.0 * s2 * kin + s2 * a * a);
    }
    if let Some(i) = sigma.iter().chain(&skyrme).position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "energy density", index: i % n, r: grid.r(i % n) });
    }
    Ok(EnergyBreakdown { e_sigma: extended_closed(&sigma, grid.h()), e_skyrme: extended_closed(&skyrme, grid.h()) })
}
