use super::run::{check_config, march, EvolveConfig, Sampler};
use crate::error::{Error, Result};
use crate::radial::stencil::{d2_at, ko_at};
use crate::radial::{interpolate_values, OriginPlacement, Parity, RadialGrid, TimeSeries};
use crate::spectrum::PotentialTable;

/// Initial data `(v, dv/dt)` of the linear l = 1 problem. Both vanish at
/// the origin and continue evenly through it (`v ~ r^2`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearData {
    pub grid: RadialGrid,
    pub v: Vec<f64>,
    pub vdot: Vec<f64>,
}

impl LinearData {
    pub fn from_fn(grid: RadialGrid, v: impl Fn(f64) -> f64, vdot: impl Fn(f64) -> f64) -> Result<Self> {
        if grid.origin() != OriginPlacement::Vertex {
            return Err(Error::invalid("evolution grids must contain the origin"));
        }
        let mut v: Vec<f64> = grid.points().map(v).collect();
        let mut vdot: Vec<f64> = grid.points().map(vdot).collect();
        if v[0].abs() > 1e-14 || vdot[0].abs() > 1e-14 {
            return Err(Error::invalid("l = 1 data must vanish at the origin"));
        }
        v[0] = 0.0;
        vdot[0] = 0.0;
        if let Some(i) = v.iter().chain(&vdot).position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { what: "linear data", index: i % grid.len(), r: 0.0 });
        }
        Ok(Self { grid, v, vdot })
    }
}

/// Evolve `v_tt = v'' - (2/r^2 + V) v` and record `v` at `radius`.
/// Without a potential the free l = 1 equation is solved.
pub fn evolve_linear(
    potential: Option<&PotentialTable>,
    data: &LinearData,
    cfg: &EvolveConfig,
    radius: f64,
    cadence: f64,
) -> Result<TimeSeries> {
    let grid = data.grid;
    let n = grid.len();
    check_config(&grid, cfg, &[radius], &[cadence])?;
    let coupling: Vec<f64> = grid
        .points()
        .map(|r| if r == 0.0 { 0.0 } else { 2.0 / (r * r) + potential.map_or(0.0, |p| p.value(r)) })
        .collect();
    let mut y = data.v.clone();
    y.extend_from_slice(&data.vdot);
    let mut out = TimeSeries::new();
    out.push(0.0, interpolate_values(&grid, &y[..n], Parity::Even, radius)?)?;
    let mut sampler = Sampler::new(cadence, cfg.t_max);
    let sigma = cfg.dissipation;
    march(
        &grid,
        cfg,
        radius,
        y,
        |active, y, d| {
            let (v, pi) = y.split_at(n);
            let (dv, dpi) = d.split_at_mut(n);
            let v = &v[..active];
            dv[0] = 0.0;
            dpi[0] = 0.0;
            for i in 1..active - 2 {
                dv[i] = pi[i];
                dpi[i] = d2_at(&grid, v, Parity::Even, i) - coupling[i] * v[i];
            }
            for i in active - 2..active {
                dv[i] = 0.0;
                dpi[i] = 0.0;
            }
            if sigma > 0.0 {
                let pi = &pi[..active];
                for i in 1..active - 3 {
                    dv[i] += sigma * ko_at(&grid, v, Parity::Even, i);
                    dpi[i] += sigma * ko_at(&grid, pi, Parity::Even, i);
                }
            }
        },
        |t0, t1, prev, y| {
            if sampler.due(t1) {
                let a = interpolate_values(&grid, &prev[..n], Parity::Even, radius)?;
                let b = interpolate_values(&grid, &y[..n], Parity::Even, radius)?;
                sampler.drain(t0, t1, a, b, &mut out)?;
            }
            Ok(())
        },
    )?;
    Ok(out)
}
