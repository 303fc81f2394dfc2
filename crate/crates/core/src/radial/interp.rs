use super::grid::{Parity, RadialGrid, ScalarField};
use crate::error::{Error, Result};

const POINTS: usize = 6;

/// Six-point Lagrange interpolation of grid values at radius `r`, using
/// parity ghosts below the origin.
pub fn interpolate_values(grid: &RadialGrid, values: &[f64], parity: Parity, r: f64) -> Result<f64> {
    if !r.is_finite() || !grid.contains(r) {
        return Err(Error::OutOfDomain(format!(
            "r = {r} outside [0, {}]",
            grid.r_max()
        )));
    }
    let x = grid.fractional_index(r);
    let nearest = x.round();
    if (x - nearest).abs() < 1e-12 && nearest >= 0.0 {
        return Ok(values[(nearest as usize).min(values.len() - 1)]);
    }
    let n = values.len() as isize;
    let mut start = x.floor() as isize - 2;
    if start + POINTS as isize > n {
        start = n - POINTS as isize;
    }
    let mut acc = 0.0;
    for j in 0..POINTS as isize {
        let xj = (start + j) as f64;
        let mut weight = 1.0;
        for m in 0..POINTS as isize {
            if m != j {
                let xm = (start + m) as f64;
                weight *= (x - xm) / (xj - xm);
            }
        }
        acc += weight * grid.fetch(values, start + j, parity);
    }
    Ok(acc)
}

/// Interpolated value of a field at `r`.
pub fn interpolate(f: &ScalarField, r: f64) -> Result<f64> {
    interpolate_values(f.grid(), f.values(), f.parity(), r)
}
