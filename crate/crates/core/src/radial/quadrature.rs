//! Quadrature on grids and of closures.

use super::grid::ScalarField;
use super::interp::interpolate;
use crate::error::{Error, Result};

/// 3-point Gauss-Legendre nodes and weights on [-1, 1].
const GL3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

/// Integral of a field over `[r_lo, r_hi]`, fourth order in `h`.
///
/// Node-aligned bounds use the extended closed formula with end weights
/// 3/8, 7/6, 23/24; other bounds fall back to Gauss-Legendre over the
/// six-point interpolant, cell by cell.
pub fn definite_integral(f: &ScalarField, r_lo: f64, r_hi: f64) -> Result<f64> {
    let grid = f.grid();
    if !(r_lo < r_hi) {
        return Err(Error::invalid(format!("empty integration range [{r_lo}, {r_hi}]")));
    }
    if !grid.contains(r_lo) || !grid.contains(r_hi) {
        return Err(Error::OutOfDomain(format!(
            "integration range [{r_lo}, {r_hi}] outside grid [0, {}]",
            grid.r_max()
        )));
    }
    let x_lo = grid.fractional_index(r_lo);
    let x_hi = grid.fractional_index(r_hi);
    let aligned = |x: f64| x >= -1e-12 && (x - x.round()).abs() < 1e-10;
    if aligned(x_lo) && aligned(x_hi) {
        let lo = x_lo.round() as usize;
        let hi = (x_hi.round() as usize).min(grid.len() - 1);
        if hi - lo >= 6 {
            return Ok(extended_closed(&f.values()[lo..=hi], grid.h()));
        }
    }
    let mut total = 0.0;
    let mut a = r_lo;
    while a < r_hi {
        let cell_end = ((grid.fractional_index(a) + 1e-12).floor() + 1.0).max(0.0);
        let b = grid.r(cell_end as usize).min(r_hi);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, w) in GL3 {
            total += w * half * interpolate(f, mid + half * x)?;
        }
        a = b;
    }
    Ok(total)
}

/// Extended closed rule, O(h^4), for at least seven samples.
pub fn extended_closed(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 7);
    const END: [f64; 3] = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
    let mut sum: f64 = values[3..n - 3].iter().sum();
    for k in 0..3 {
        sum += END[k] * (values[k] + values[n - 1 - k]);
    }
    sum * h
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = hl * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * hl, ((k - g) * hl).abs())
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Globally adaptive Gauss-Kronrod integration. Stops when the summed error
/// estimate drops below `max(abs_tol, rel_tol * |value|)`.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(64);
    let (v, e) = gk15(&mut f, a, b);
    panels.push((a, b, v, e));
    let mut evaluations = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if !value.is_finite() {
            return Err(Error::NonFinite { what: "quadrature", index: evaluations, r: a });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Quadrature { value, error, evaluations });
        }
        if panels.len() >= max_panels {
            return Err(Error::NoConvergence(format!(
                "adaptive quadrature on [{a}, {b}] reached {max_panels} panels with error {error:e}"
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&mut f, pa, mid);
        let (v2, e2) = gk15(&mut f, mid, pb);
        evaluations += 30;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::grid::{OriginPlacement, Parity, RadialGrid};

    fn field(h: f64, r_max: f64, f: impl Fn(f64) -> f64) -> ScalarField {
        let g = RadialGrid::covering(h, r_max).unwrap();
        ScalarField::from_fn(g, Parity::Even, f).unwrap()
    }

    #[test]
    fn zero_integrates_to_zero() {
        let f = field(0.01, 2.0, |_| 0.0);
        assert_eq!(definite_integral(&f, 0.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn square_on_unit_interval() {
        let f = field(1e-3, 1.0, |r| r * r);
        let v = definite_integral(&f, 0.0, 1.0).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn gaussian_half_line() {
        // sqrt(pi)/2 to 20 digits: 0.88622692545275801364
        let f = field(0.01, 8.0, |r| (-r * r).exp());
        let v = definite_integral(&f, 0.0, 8.0).unwrap();
        assert!((v - 0.886_226_925_452_758).abs() < 1e-8, "{v}");
    }

    #[test]
    fn off_grid_bounds_use_interpolant() {
        let f = field(0.01, 3.0, |r| r.cos());
        let v = definite_integral(&f, 0.123, 2.345).unwrap();
        let e = 2.345_f64.sin() - 0.123_f64.sin();
        assert!((v - e).abs() < 1e-10, "{v} vs {e}");
    }

    #[test]
    fn bounds_outside_grid_are_rejected() {
        let f = field(0.01, 1.0, |r| r);
        assert!(definite_integral(&f, 0.0, 1.5).is_err());
        assert!(definite_integral(&f, 0.5, 0.5).is_err());
        let g = RadialGrid::new(0.1, 20, OriginPlacement::Vertex).unwrap();
        let f = ScalarField::from_fn(g, Parity::Even, |r| r).unwrap();
        assert!(definite_integral(&f, -0.1, 1.0).is_err());
    }

    #[test]
    fn adaptive_gk_handles_peaked_integrand() {
        let q = adaptive(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12, 500).unwrap();
        let e = 2.0 * 100.0 * (100.0_f64).atan();
        assert!((q.value - e).abs() < 1e-8 * e);
    }
}
