//! Fourth-order finite differences on a uniform radial grid.
//!
//! Centred five-point stencils everywhere; ghost points below the origin are
//! filled by parity reflection, and the last two points use one-sided
//! stencils of the same order.

use super::grid::{Parity, RadialGrid, ScalarField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

#[inline(always)]
fn centred_d1(fm2: f64, fm1: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
}

#[inline(always)]
fn centred_d2(fm2: f64, fm1: f64, f0: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
}

/// First derivative at index `i`.
#[inline]
pub fn d1_at(grid: &RadialGrid, f: &[f64], parity: Parity, i: usize) -> f64 {
    let n = f.len();
    let h = grid.h();
    if i >= 2 && i + 2 < n {
        return centred_d1(f[i - 2], f[i - 1], f[i + 1], f[i + 2], h);
    }
    if i + 2 < n {
        let ii = i as isize;
        return centred_d1(
            grid.fetch(f, ii - 2, parity),
            grid.fetch(f, ii - 1, parity),
            f[i + 1],
            f[i + 2],
            h,
        );
    }
    if i + 1 == n {
        (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4])
            / (12.0 * h)
    } else {
        (3.0 * f[i + 1] + 10.0 * f[i] - 18.0 * f[i - 1] + 6.0 * f[i - 2] - f[i - 3]) / (12.0 * h)
    }
}

/// Second derivative at index `i`.
#[inline]
pub fn d2_at(grid: &RadialGrid, f: &[f64], parity: Parity, i: usize) -> f64 {
    let n = f.len();
    let h = grid.h();
    if i >= 2 && i + 2 < n {
        return centred_d2(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2], h);
    }
    if i + 2 < n {
        let ii = i as isize;
        return centred_d2(
            grid.fetch(f, ii - 2, parity),
            grid.fetch(f, ii - 1, parity),
            f[i],
            f[i + 1],
            f[i + 2],
            h,
        );
    }
    let h2 = 12.0 * h * h;
    if i + 1 == n {
        (45.0 * f[i] - 154.0 * f[i - 1] + 214.0 * f[i - 2] - 156.0 * f[i - 3] + 61.0 * f[i - 4]
            - 10.0 * f[i - 5])
            / h2
    } else {
        (10.0 * f[i + 1] - 15.0 * f[i] - 4.0 * f[i - 1] + 14.0 * f[i - 2] - 6.0 * f[i - 3]
            + f[i - 4])
            / h2
    }
}

/// Sixth-difference Kreiss-Oliger operator scaled so that adding
/// `sigma * ko_at(..)` damps the grid-scale mode at rate `sigma / h`.
/// Returns zero within three points of the outer end.
#[inline]
pub fn ko_at(grid: &RadialGrid, f: &[f64], parity: Parity, i: usize) -> f64 {
    let n = f.len();
    if i + 3 >= n {
        return 0.0;
    }
    let s = if i >= 3 {
        f[i - 3] - 6.0 * f[i - 2] + 15.0 * f[i - 1] - 20.0 * f[i] + 15.0 * f[i + 1]
            - 6.0 * f[i + 2]
            + f[i + 3]
    } else {
        let ii = i as isize;
        grid.fetch(f, ii - 3, parity) - 6.0 * grid.fetch(f, ii - 2, parity)
            + 15.0 * grid.fetch(f, ii - 1, parity)
            - 20.0 * f[i]
            + 15.0 * f[i + 1]
            - 6.0 * f[i + 2]
            + f[i + 3]
    };
    s / (64.0 * grid.h())
}

fn check_finite(f: &ScalarField) -> Result<()> {
    match f.values().iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { what: "derivative input", index, r: f.grid().r(index) }),
        None => Ok(()),
    }
}

/// Fourth-order derivative of a field. The result carries the parity of the
/// derivative (flipped for first derivatives).
pub fn spatial_derivative(f: &ScalarField, order: DerivativeOrder) -> Result<ScalarField> {
    check_finite(f)?;
    let grid = *f.grid();
    let vals = f.values();
    let parity = f.parity();
    let (values, out_parity): (Vec<f64>, Parity) = match order {
        DerivativeOrder::First => {
            ((0..vals.len()).map(|i| d1_at(&grid, vals, parity, i)).collect(), parity.derivative())
        }
        DerivativeOrder::Second => {
            ((0..vals.len()).map(|i| d2_at(&grid, vals, parity, i)).collect(), parity)
        }
    };
    ScalarField::new(grid, values, out_parity)
}
