use super::ringdown::linear_fit;
use crate::error::{Error, Result};
use crate::radial::TimeSeries;

/// `ln|v| = a - b ln t + c/t` over a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub offset: f64,
    pub exponent: f64,
    pub correction: f64,
    pub window: (f64, f64),
    /// RMS residual in `ln|v|`.
    pub residual: f64,
    pub samples: usize,
}

impl PowerLawFit {
    /// `exp(a - b ln t + c/t)`.
    pub fn magnitude(&self, t: f64) -> f64 {
        (self.offset - self.exponent * t.ln() + self.correction / t).exp()
    }
}

/// Samples smaller than this are dropped from tail fits: a thousand times
/// the rounding floor `1e-13 max|v|` of the whole series.
pub fn floor_threshold(series: &TimeSeries) -> f64 {
    let max = series.values().iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    1e3 * 1e-13 * max
}

/// Linear least squares of the logarithm of `|v|` against `1, -ln t, 1/t`.
pub fn fit_power_law(series: &TimeSeries, window: (f64, f64)) -> Result<PowerLawFit> {
    let (t1, t2) = window;
    if !(t1 > 0.0 && t2 >= 3.0 * t1) {
        return Err(Error::invalid(format!("window ({t1}, {t2}) must start after 0 and span a factor 3")));
    }
    let floor = floor_threshold(series);
    let w = series.window(t1, t2);
    let v = w.values();
    if let Some(i) = (1..v.len()).find(|&i| v[i].signum() != v[i - 1].signum() || v[i] == 0.0) {
        return Err(Error::Fit(format!(
            "sign change at t = {} inside ({t1}, {t2}); ringing not yet over",
            w.times()[i]
        )));
    }
    let kept: Vec<(f64, f64)> = w.iter().filter(|(_, v)| v.abs() >= floor).map(|(t, v)| (t, v.abs().ln())).collect();
    if kept.len() < 10 {
        return Err(Error::Fit(format!(
            "only {} samples above the rounding floor {floor:e} in ({t1}, {t2})",
            kept.len()
        )));
    }
    let [a, minus_b, c] = linear_fit(kept.iter().map(|&(t, l)| ([1.0, t.ln(), 1.0 / t], l)))
        .ok_or_else(|| Error::Fit("degenerate power-law design".into()))?;
    let b = -minus_b;
    let ss: f64 = kept.iter().map(|&(t, l)| (a - b * t.ln() + c / t - l).powi(2)).sum();
    if !(b > 0.0) {
        return Err(Error::Fit(format!("fitted exponent {b} is not a decay")));
    }
    Ok(PowerLawFit {
        offset: a,
        exponent: b,
        correction: c,
        window,
        residual: (ss / kept.len() as f64).sqrt(),
        samples: kept.len(),
    })
}

/// Least-squares slope `b` of `ln|v| = a - b ln t` over a window, without
/// the correction term or the rounding-floor guard. Meant for series whose
/// noise floor is known to sit far below the window, such as linear runs.
pub fn log_log_slope(series: &TimeSeries, window: (f64, f64)) -> Result<f64> {
    let (t1, t2) = window;
    if !(t1 > 0.0 && t2 > t1) {
        return Err(Error::invalid(format!("window ({t1}, {t2}) must start after 0 and be increasing")));
    }
    let w = series.window(t1, t2);
    let v = w.values();
    if v.len() < 10 {
        return Err(Error::Fit(format!("only {} samples in ({t1}, {t2})", v.len())));
    }
    if let Some(i) = (1..v.len()).find(|&i| v[i].signum() != v[i - 1].signum() || v[i] == 0.0) {
        return Err(Error::Fit(format!("sign change at t = {} inside ({t1}, {t2})", w.times()[i])));
    }
    let [_, minus_b] = linear_fit(w.iter().map(|(t, v)| ([1.0, t.ln()], v.abs().ln())))
        .ok_or_else(|| Error::Fit("degenerate log-log design".into()))?;
    Ok(-minus_b)
}

/// Tail window rule: the start is the first sample after the last sign
/// change from which `|v|` decreases for 50 consecutive samples; the end is
/// the last sample above the rounding floor.
pub fn suggest_tail_window(series: &TimeSeries) -> Result<(f64, f64)> {
    const RUN: usize = 50;
    let (t, v) = (series.times(), series.values());
    let floor = floor_threshold(series);
    let end = v.iter().rposition(|x| x.abs() >= floor).ok_or_else(|| Error::Fit("series is empty".into()))?;
    let last_flip = (1..=end).rev().find(|&i| v[i].signum() != v[i - 1].signum() || v[i] == 0.0).unwrap_or(0);
    let start = (last_flip..=end.saturating_sub(RUN))
        .find(|&i| (i + 1..=i + RUN).all(|k| v[k].abs() < v[k - 1].abs()))
        .ok_or_else(|| Error::Fit(format!("no monotone run of {RUN} samples before the rounding floor")))?;
    Ok((t[start], t[end]))
}

/// Median of `v t^p / r0` over a window, with lower and upper quartiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCoefficient {
    pub median: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn estimate_tail_coefficient(
    series: &TimeSeries,
    window: (f64, f64),
    r0: f64,
    exponent: f64,
) -> Result<TailCoefficient> {
    if !(r0 > 0.0) {
        return Err(Error::invalid("observer radius must be positive"));
    }
    let w = series.window(window.0, window.1);
    let v = w.values();
    if v.len() < 3 {
        return Err(Error::Fit("fewer than three samples in the tail window".into()));
    }
    let falling = v.windows(2).all(|p| p[1].abs() <= p[0].abs());
    let rising = v.windows(2).all(|p| p[1].abs() >= p[0].abs());
    if !(falling || rising) {
        return Err(Error::Fit(format!("|v| is not monotone over ({}, {})", window.0, window.1)));
    }
    let mut scaled: Vec<f64> = w.iter().map(|(t, v)| v * t.powf(exponent) / r0).collect();
    scaled.sort_by(f64::total_cmp);
    let q = |x: f64| {
        let pos = x * (scaled.len() - 1) as f64;
        let (i, f) = (pos.floor() as usize, pos.fract());
        if i + 1 < scaled.len() {
            scaled[i] * (1.0 - f) + scaled[i + 1] * f
        } else {
            scaled[i]
        }
    };
    Ok(TailCoefficient { median: q(0.5), lower: q(0.25), upper: q(0.75) })
}
