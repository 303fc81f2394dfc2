use nalgebra::{Matrix4, Vector4};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::radial::TimeSeries;

/// `A e^{-Gamma t} sin(Omega t + delta)` fitted over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingdownFit {
    pub amplitude: f64,
    pub gamma: f64,
    pub omega: f64,
    pub phase: f64,
    pub window: (f64, f64),
    /// RMS of the residual over the window.
    pub residual: f64,
}

impl RingdownFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (-self.gamma * t).exp() * (self.omega * t + self.phase).sin()
    }
}

fn zero_crossings(t: &[f64], v: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 1..v.len() {
        if v[i - 1] != 0.0 && v[i - 1].signum() != v[i].signum() {
            let s = v[i - 1] / (v[i - 1] - v[i]);
            out.push(t[i - 1] + s * (t[i] - t[i - 1]));
        }
    }
    out
}

/// Linear least squares for `y = sum_j c_j x_j`, solved through a QR
/// factorization of the design matrix.
pub(crate) fn linear_fit<const K: usize>(rows: impl Iterator<Item = ([f64; K], f64)>) -> Option<[f64; K]> {
    let (xs, ys): (Vec<[f64; K]>, Vec<f64>) = rows.unzip();
    if xs.len() < K {
        return None;
    }
    let a = nalgebra::DMatrix::from_fn(xs.len(), K, |i, j| xs[i][j]);
    let qr = a.qr();
    let qtb = qr.q().transpose() * nalgebra::DVector::from_vec(ys);
    let r = qr.r();
    let scale = r.diagonal().amax();
    if !(scale > 0.0) || r.diagonal().iter().any(|d| d.abs() <= 1e-13 * scale) {
        return None;
    }
    let sol = r.solve_upper_triangular(&qtb)?;
    let mut out = [0.0; K];
    out.copy_from_slice(sol.as_slice());
    Some(out)
}

/// Initial `(A, Gamma, Omega, delta)` from zero-crossing spacing and the
/// slope of the log of the half-cycle peaks.
fn initial_guess(t: &[f64], v: &[f64], crossings: &[f64]) -> Result<[f64; 4]> {
    let span = crossings.last().unwrap() - crossings[0];
    let omega = PI * (crossings.len() - 1) as f64 / span;
    let mut peaks = Vec::new();
    let mut lo = 0;
    for &z in crossings.iter().chain(std::iter::once(&f64::INFINITY)) {
        let hi = t.partition_point(|&x| x < z);
        if let Some((i, _)) = v[lo..hi].iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())) {
            if hi - lo >= 3 && v[lo + i] != 0.0 {
                peaks.push((t[lo + i], v[lo + i].abs().ln()));
            }
        }
        lo = hi;
    }
    let gamma = if peaks.len() >= 2 {
        let [_, slope] = linear_fit(peaks.iter().map(|&(t, l)| ([1.0, t], l)))
            .ok_or_else(|| Error::Fit("degenerate envelope".into()))?;
        -slope
    } else {
        0.0
    };
    let [alpha, beta] = linear_fit(t.iter().zip(v).map(|(&t, &v)| {
        let e = (-gamma * t).exp();
        ([e * (omega * t).sin(), e * (omega * t).cos()], v)
    }))
    .ok_or_else(|| Error::Fit("degenerate amplitude fit".into()))?;
    Ok([alpha.hypot(beta), gamma, omega, beta.atan2(alpha)])
}

/// Damped-sinusoid fit to the raw samples in `window` by Levenberg-Marquardt.
pub fn fit_ringdown(series: &TimeSeries, window: (f64, f64)) -> Result<RingdownFit> {
    let (t1, t2) = window;
    if !(t1 < t2) {
        return Err(Error::invalid(format!("empty fit window ({t1}, {t2})")));
    }
    let w = series.window(t1, t2);
    let (t, v) = (w.times(), w.values());
    let crossings = zero_crossings(t, v);
    if crossings.len() < 2 {
        return Err(Error::Fit(format!(
            "{} sign changes in ({t1}, {t2}); need at least 2 to fit an oscillation",
            crossings.len()
        )));
    }
    let mut p = Vector4::from(initial_guess(t, v, &crossings)?);
    let residuals = |p: &Vector4<f64>| -> Vec<f64> {
        t.iter()
            .zip(v)
            .map(|(&t, &v)| p[0] * (-p[1] * t).exp() * (p[2] * t + p[3]).sin() - v)
            .collect()
    };
    let cost = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
    let mut r = residuals(&p);
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        let mut jtj = Matrix4::<f64>::zeros();
        let mut jtr = Vector4::<f64>::zeros();
        for (k, &tk) in t.iter().enumerate() {
            let e = (-p[1] * tk).exp();
            let (s, co) = (p[2] * tk + p[3]).sin_cos();
            let j = Vector4::new(e * s, -tk * p[0] * e * s, tk * p[0] * e * co, p[0] * e * co);
            jtj += j * j.transpose();
            jtr += j * r[k];
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj;
            for d in 0..4 {
                a[(d, d)] *= 1.0 + lambda;
            }
            let Some(step) = a.lu().solve(&(-jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = p + step;
            let rt = residuals(&trial);
            let ct = cost(&rt);
            if ct.is_finite() && ct <= c {
                let done = step.iter().zip(trial.iter()).all(|(s, x)| s.abs() <= 1e-13 * x.abs().max(1e-3));
                p = trial;
                r = rt;
                let rel = (c - ct) / c.max(f64::MIN_POSITIVE);
                c = ct;
                lambda = (lambda / 10.0).max(1e-15);
                improved = true;
                if done || rel < 1e-26 {
                    return finish(p, window, c, t.len());
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    finish(p, window, c, t.len())
}

fn finish(p: Vector4<f64>, window: (f64, f64), cost: f64, n: usize) -> Result<RingdownFit> {
    let (mut amplitude, gamma, omega, mut phase) = (p[0], p[1], p[2], p[3]);
    if !(gamma > 0.0) {
        return Err(Error::Fit(format!("fitted decay rate {gamma} is not positive")));
    }
    if amplitude < 0.0 {
        amplitude = -amplitude;
        phase += PI;
    }
    let (mut omega, mut phase) = (omega, phase);
    if omega < 0.0 {
        omega = -omega;
        phase = PI - phase;
    }
    phase = (phase + PI).rem_euclid(2.0 * PI) - PI;
    Ok(RingdownFit { amplitude, gamma, omega, phase, window, residual: (cost / n as f64).sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(noise: impl Fn(usize) -> f64) -> TimeSeries {
        let t: Vec<f64> = (0..=1000).map(|i| i as f64 * 0.1).collect();
        let v = t
            .iter()
            .enumerate()
            .map(|(i, &t)| (-0.26 * t).exp() * (0.61 * t + 0.3).sin() * (1.0 + noise(i)))
            .collect();
        TimeSeries::from_pairs(t, v).unwrap()
    }

    #[test]
    fn own_model_is_recovered() {
        let fit = fit_ringdown(&synthetic(|_| 0.0), (20.0, 60.0)).unwrap();
        assert!((fit.amplitude - 1.0).abs() < 1e-8, "{fit:?}");
        assert!((fit.gamma - 0.26).abs() < 1e-8);
        assert!((fit.omega - 0.61).abs() < 1e-8);
        assert!((fit.phase - 0.3).abs() < 1e-8);
    }

    #[test]
    fn one_percent_noise_moves_the_mode_little() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let normal = Normal::new(0.0, 0.01).unwrap();
        for _ in 0..100 {
            let noise: Vec<f64> = (0..=1000).map(|_| normal.sample(&mut rng)).collect();
            let fit = fit_ringdown(&synthetic(|i| noise[i]), (20.0, 60.0)).unwrap();
            assert!((fit.omega / 0.61 - 1.0).abs() < 0.005, "{fit:?}");
            assert!((fit.gamma / 0.26 - 1.0).abs() < 0.02, "{fit:?}");
        }
    }

    #[test]
    fn monotone_window_is_rejected() {
        let s = TimeSeries::from_fn((0..100).map(|i| i as f64), |t| (-t).exp()).unwrap();
        assert!(matches!(fit_ringdown(&s, (0.0, 99.0)), Err(Error::Fit(_))));
    }
}
