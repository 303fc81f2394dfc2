use super::state::FieldState;
use crate::error::{Error, Result};
use crate::radial::stencil::{d1_at, d2_at, ko_at};
use crate::radial::{Parity, RadialGrid, ScalarField};

/// Time derivatives on the first `active` points. The origin and the last
/// two active points are held fixed; points beyond `active` are untouched
/// (left frozen). `sigma > 0` adds sixth-difference dissipation.
pub(crate) fn fill_nonlinear(
    grid: &RadialGrid,
    f: &[f64],
    p: &[f64],
    active: usize,
    sigma: f64,
    df: &mut [f64],
    dp: &mut [f64],
) {
    let f = &f[..active];
    let p = &p[..active];
    df[0] = 0.0;
    dp[0] = 0.0;
    let h = grid.h();
    let (c1, c2) = (1.0 / (12.0 * h), 1.0 / (12.0 * h * h));
    let point = |i: usize, fp: f64, fpp: f64| -> (f64, f64) {
        let r = i as f64 * h;
        let (s, c) = f[i].sin_cos();
        let sin2f = 2.0 * s * c;
        let w = r * r + 2.0 * s * s;
        let wp = 2.0 * r + 2.0 * sin2f * fp;
        let a = s / r;
        let fdot = p[i] / w;
        (fdot, w * fpp + wp * fp - sin2f * (1.0 + a * a + fp * fp - fdot * fdot))
    };
    let end = active.saturating_sub(2);
    for i in 1..end.min(2) {
        let (a, b) = point(i, d1_at(grid, f, Parity::Odd, i), d2_at(grid, f, Parity::Odd, i));
        df[i] = a;
        dp[i] = b;
    }
    for i in 2..end {
        let (m2, m1, z, p1, p2) = (f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2]);
        let fp = (m2 - 8.0 * m1 + 8.0 * p1 - p2) * c1;
        let fpp = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) * c2;
        let (a, b) = point(i, fp, fpp);
        df[i] = a;
        dp[i] = b;
    }
    for i in active.saturating_sub(2).max(1)..active {
        df[i] = 0.0;
        dp[i] = 0.0;
    }
    if sigma > 0.0 {
        for i in 1..active.saturating_sub(3) {
            df[i] += sigma * ko_at(grid, f, Parity::Odd, i);
            dp[i] += sigma * ko_at(grid, p, Parity::Odd, i);
        }
    }
}

/// Largest accepted `|dP/dt| / (1 + r^2)` of a background taken as static.
pub(crate) const BACKGROUND_TOLERANCE: f64 = 1e-6;

/// Static background `S` with its stencil derivatives, for advancing
/// `F - S` instead of `F`. The discrete residual of `S` is dropped, so `S`
/// is exactly static: near `F = pi` the residual is rounding in `w S''` that
/// would otherwise act as a source of size `~1e-12 r^2` everywhere.
pub(crate) struct Background {
    s: Vec<f64>,
    s1: Vec<f64>,
    s2: Vec<f64>,
    residual: f64,
}

impl Background {
    pub(crate) fn new(grid: &RadialGrid, s: &[f64]) -> Self {
        let n = s.len();
        let (mut s1, mut s2) = (vec![0.0; n], vec![0.0; n]);
        for i in 1..n.saturating_sub(2) {
            s1[i] = d1_at(grid, s, Parity::Odd, i);
            s2[i] = d2_at(grid, s, Parity::Odd, i);
        }
        let (mut df, mut dp) = (vec![0.0; n], vec![0.0; n]);
        fill_nonlinear(grid, s, &vec![0.0; n], n, 0.0, &mut df, &mut dp);
        let residual = dp.iter().zip(grid.points()).map(|(v, r)| v.abs() / (1.0 + r * r)).fold(0.0, f64::max);
        Self { s: s.to_vec(), s1, s2, residual }
    }

    /// Largest scaled residual `|dP/dt| / (1 + r^2)` of the background.
    pub(crate) fn residual(&self) -> f64 {
        self.residual
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.s
    }
}

/// Same equations as [`fill_nonlinear`] written for `d = F - S`, minus the
/// residual of `S`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fill_deviation(
    grid: &RadialGrid,
    bg: &Background,
    d: &[f64],
    p: &[f64],
    active: usize,
    sigma: f64,
    dd: &mut [f64],
    dp: &mut [f64],
) {
    let d = &d[..active];
    let p = &p[..active];
    dd[0] = 0.0;
    dp[0] = 0.0;
    let h = grid.h();
    let (c1, c2) = (1.0 / (12.0 * h), 1.0 / (12.0 * h * h));
    let point = |i: usize, dpr: f64, dpp: f64| -> (f64, f64) {
        let r = i as f64 * h;
        let (s, s1, s2) = (bg.s[i], bg.s1[i], bg.s2[i]);
        let (sd, _) = d[i].sin_cos();
        let (sm, cm) = (2.0 * s + d[i]).sin_cos();
        let (ss, cs) = s.sin_cos();
        // sin^2 F - sin^2 S and sin 2F - sin 2S
        let dsin2 = sd * sm;
        let dsin2f = 2.0 * cm * sd;
        let w = r * r + 2.0 * ss * ss + 2.0 * dsin2;
        let fdot = p[i] / w;
        let fp = s1 + dpr;
        let sf2 = ss * ss + dsin2;
        let q = fp * fp - 1.0 - sf2 / (r * r) + fdot * fdot;
        let dq = dpr * (2.0 * s1 + dpr) - dsin2 / (r * r) + fdot * fdot;
        let g = w * dpp + 2.0 * dsin2 * s2 + 2.0 * r * dpr + dsin2f * q + 2.0 * ss * cs * dq;
        (fdot, g)
    };
    let end = active.saturating_sub(2);
    for i in 1..end.min(2) {
        let (a, b) = point(i, d1_at(grid, d, Parity::Odd, i), d2_at(grid, d, Parity::Odd, i));
        dd[i] = a;
        dp[i] = b;
    }
    for i in 2..end {
        let (m2, m1, z, p1, p2) = (d[i - 2], d[i - 1], d[i], d[i + 1], d[i + 2]);
        let fp = (m2 - 8.0 * m1 + 8.0 * p1 - p2) * c1;
        let fpp = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) * c2;
        let (a, b) = point(i, fp, fpp);
        dd[i] = a;
        dp[i] = b;
    }
    for i in active.saturating_sub(2).max(1)..active {
        dd[i] = 0.0;
        dp[i] = 0.0;
    }
    if sigma > 0.0 {
        for i in 1..active.saturating_sub(3) {
            dd[i] += sigma * ko_at(grid, d, Parity::Odd, i);
            dp[i] += sigma * ko_at(grid, p, Parity::Odd, i);
        }
    }
}

/// `(dF/dt, dP/dt)` of the field equation: `dF/dt = P/w` and
/// `dP/dt = (w F')' - sin 2F (1 + sin^2 F / r^2 + F'^2 - (P/w)^2)`, with
/// `w = r^2 + 2 sin^2 F`. Zero at the origin and at the two outermost points.
pub fn nonlinear_rhs(state: &FieldState) -> Result<(ScalarField, ScalarField)> {
    let grid = *state.grid();
    let n = grid.len();
    let (mut df, mut dp) = (vec![0.0; n], vec![0.0; n]);
    fill_nonlinear(&grid, state.f().values(), state.p().values(), n, 0.0, &mut df, &mut dp);
    for (what, v) in [("dF/dt", &df), ("dP/dt", &dp)] {
        if let Some(index) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { what, index, r: grid.r(index) });
        }
    }
    Ok((ScalarField::new(grid, df, Parity::Odd)?, ScalarField::new(grid, dp, Parity::Odd)?))
}
