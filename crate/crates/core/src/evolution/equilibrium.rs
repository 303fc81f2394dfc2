use super::rhs::fill_nonlinear;
use crate::error::{Error, Result};
use crate::radial::{Parity, RadialGrid, ScalarField};
use crate::skyrmion::StaticProfile;

const BAND: usize = 2;

/// Static solution of the discretized field equation on `grid`, obtained by
/// Newton iteration from the sampled continuum profile. The origin and the
/// last two points keep their sampled values, as they do in the evolution.
///
/// Evolving this state stays static to rounding, which is what `F - S`
/// observers need once the tail sits below the truncation error. On long
/// grids the residual stalls at the rounding level of `w F''`; the iteration
/// stops there.
pub fn discrete_equilibrium(profile: &StaticProfile, grid: &RadialGrid) -> Result<ScalarField> {
    let n = grid.len();
    let mut f = profile.sample(*grid)?.into_values();
    let p = vec![0.0; n];
    let unknowns = 1..n - 2;
    let m = unknowns.len();
    let mut res = vec![0.0; n];
    let mut probe = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let residual = |f: &[f64], out: &mut [f64], scratch: &mut [f64]| {
        fill_nonlinear(grid, f, &p, n, 0.0, scratch, out);
    };
    let mut last = f64::INFINITY;
    for _ in 0..30 {
        residual(&f, &mut res, &mut scratch);
        let norm = res[1..n - 2].iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if !norm.is_finite() {
            return Err(Error::NonFinite { what: "static residual", index: 0, r: 0.0 });
        }
        // banded Jacobian by probing five interleaved colours at once
        let mut band = vec![[0.0_f64; 2 * BAND + 1]; m];
        for colour in 0..=2 * BAND {
            let mut g = f.clone();
            let mut steps = vec![0.0; n];
            for j in (1 + colour..n - 2).step_by(2 * BAND + 1) {
                let e = 1e-7 * f[j].abs().max(1.0);
                g[j] += e;
                steps[j] = e;
            }
            residual(&g, &mut probe, &mut scratch);
            for j in (1 + colour..n - 2).step_by(2 * BAND + 1) {
                for i in j.saturating_sub(BAND).max(1)..(j + BAND + 1).min(n - 2) {
                    band[i - 1][j + BAND - i] = (probe[i] - res[i]) / steps[j];
                }
            }
        }
        let mut rhs: Vec<f64> = res[1..n - 2].iter().map(|v| -v).collect();
        solve_banded(&mut band, &mut rhs)?;
        let step = rhs.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        for (k, d) in rhs.iter().enumerate() {
            f[k + 1] += d;
        }
        if step < 1e-14 || (norm > 0.5 * last && step < 1e-9) {
            return ScalarField::new(*grid, f, Parity::Odd);
        }
        last = norm;
    }
    Err(Error::NoConvergence("discrete static equilibrium: Newton did not settle".into()))
}

/// In-place LU without pivoting for a matrix with two sub- and
/// super-diagonals; `band[i][j - i + 2]` holds `A[i][j]`.
fn solve_banded(band: &mut [[f64; 2 * BAND + 1]], b: &mut [f64]) -> Result<()> {
    let m = b.len();
    let at = |i: usize, j: usize| j + BAND - i;
    for k in 0..m {
        let piv = band[k][BAND];
        if piv == 0.0 || !piv.is_finite() {
            return Err(Error::Singular { what: "banded static Jacobian", r: k as f64 });
        }
        for i in k + 1..(k + BAND + 1).min(m) {
            let l = band[i][at(i, k)] / piv;
            for j in k + 1..(k + BAND + 1).min(m) {
                let v = band[k][at(k, j)];
                band[i][at(i, j)] -= l * v;
            }
            b[i] -= l * b[k];
        }
    }
    for k in (0..m).rev() {
        let mut s = b[k];
        for j in k + 1..(k + BAND + 1).min(m) {
            s -= band[k][at(k, j)] * b[j];
        }
        b[k] = s / band[k][BAND];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn banded_solver_matches_dense() {
        let m = 9;
        let mut dense = vec![vec![0.0; m]; m];
        let mut band = vec![[0.0; 5]; m];
        for i in 0..m {
            for j in i.saturating_sub(2)..(i + 3).min(m) {
                let v = if i == j { 6.0 + i as f64 } else { 1.0 / (1.0 + (i + 2 * j) as f64) };
                dense[i][j] = v;
                band[i][j + 2 - i] = v;
            }
        }
        let x: Vec<f64> = (0..m).map(|i| (i as f64 * 0.7).sin()).collect();
        let mut b: Vec<f64> = (0..m).map(|i| (0..m).map(|j| dense[i][j] * x[j]).sum()).collect();
        solve_banded(&mut band, &mut b).unwrap();
        for i in 0..m {
            assert!((b[i] - x[i]).abs() < 1e-13);
        }
    }
}
