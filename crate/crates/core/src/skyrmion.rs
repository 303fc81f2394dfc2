//! Degree-one static soliton by shooting from the origin.
//!
//! The static field equation `(w S')' = sin 2S (1 + sin^2 S / r^2 + S'^2)`,
//! `w = r^2 + 2 sin^2 S`, is integrated outward from `S ~ b r`. Too steep a
//! launch carries `S` past `pi`; too shallow a launch turns back before
//! reaching it. Bisection on `b` pins the separatrix.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::radial::{OriginPlacement, Parity, RadialGrid, Rk4, ScalarField};

/// `S''` from the static equation. Undefined at the origin.
pub fn static_rhs(r: f64, s: f64, sp: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!(
            "static equation is singular at r = {r}; launch from the series instead"
        )));
    }
    Ok(static_rhs_unchecked(r, s, sp))
}

#[inline]
fn static_rhs_unchecked(r: f64, s: f64, sp: f64) -> f64 {
    let (sin_s, cos_s) = s.sin_cos();
    let sin_2s = 2.0 * sin_s * cos_s;
    let w = r * r + 2.0 * sin_s * sin_s;
    debug_assert!(w > 0.0);
    let sr = sin_s / r;
    (sin_2s * (1.0 + sr * sr + sp * sp) - (2.0 * r + 2.0 * sin_2s * sp) * sp) / w
}

/// Integration settings for a single shot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Launch radius for the linear series `S = b r`.
    pub r_min: f64,
    /// Uniform output spacing of the recorded profile.
    pub step: f64,
    /// Outer end of the integration.
    pub r_max: f64,
    /// `|pi - S|` and `|S'|` must fall below this at `r_max` for a shot to count as converged.
    pub far_tolerance: f64,
    /// Substep ratio `dr / r` near the origin.
    pub origin_ratio: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self { r_min: 1e-4, step: 1e-3, r_max: 60.0, far_tolerance: 1e-3, origin_ratio: 0.05 }
    }
}

impl ShootingConfig {
    fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.step) {
            return Err(Error::invalid("launch radius must lie inside the first output cell"));
        }
        if !(self.step > 0.0 && self.r_max > 100.0 * self.step) {
            return Err(Error::invalid("output step too coarse for the requested outer radius"));
        }
        if !(self.origin_ratio > 0.0 && self.origin_ratio <= 0.5) {
            return Err(Error::invalid("origin substep ratio must be in (0, 0.5]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lean {
    Over,
    Under,
}

/// Raw result of one outward integration.
#[derive(Debug, Clone)]
struct Shot {
    lean: Lean,
    /// Radius at which the verdict became certain (or `r_max`).
    stop_r: f64,
    reached_end: bool,
    s: Vec<f64>,
    sp: Vec<f64>,
}

/// Classification of a trial launch slope.
#[derive(Debug, Clone)]
pub enum ShotOutcome {
    /// `S` crossed `pi` while still increasing, at radius `r`.
    Overshoot { r: f64 },
    /// `S'` turned negative below `pi`, at radius `r`.
    Undershoot { r: f64 },
    /// The trajectory hugged `pi` all the way to the outer radius.
    Converged(Box<StaticProfile>),
}

impl ShotOutcome {
    pub fn is_overshoot(&self) -> bool {
        matches!(self, ShotOutcome::Overshoot { .. })
    }

    pub fn is_undershoot(&self) -> bool {
        matches!(self, ShotOutcome::Undershoot { .. })
    }
}

fn fire(b: f64, cfg: &ShootingConfig) -> Result<Shot> {
    let ds = cfg.step;
    let cells = (cfg.r_max / ds).round() as usize;
    let mut s = Vec::with_capacity(cells + 1);
    let mut sp = Vec::with_capacity(cells + 1);
    s.push(0.0);
    sp.push(b);

    let rhs = |r: f64, y: &[f64; 2], d: &mut [f64; 2]| -> Result<()> {
        d[0] = y[1];
        d[1] = static_rhs_unchecked(r, y[0], y[1]);
        Ok(())
    };

    let mut y = [b * cfg.r_min, b];
    let mut rk = Rk4::new(&y);
    let mut r = cfg.r_min;
    // geometric substeps inside the first cell
    while r < ds {
        let dr = (cfg.origin_ratio * r).min(ds - r);
        rk.step(r, &mut y, dr, rhs).map_err(|e| failure(e, r))?;
        r += dr;
        if ds - r < 1e-3 * cfg.origin_ratio * r {
            r = ds;
        }
    }
    s.push(y[0]);
    sp.push(y[1]);

    for j in 1..cells {
        let r0 = j as f64 * ds;
        let m = ((1.0 / (cfg.origin_ratio * j as f64)).ceil() as usize).max(1);
        let dr = ds / m as f64;
        for k in 0..m {
            rk.step(r0 + k as f64 * dr, &mut y, dr, rhs).map_err(|e| failure(e, r0))?;
        }
        let r1 = (j + 1) as f64 * ds;
        s.push(y[0]);
        sp.push(y[1]);
        if y[0] > PI {
            return Ok(Shot { lean: Lean::Over, stop_r: r1, reached_end: false, s, sp });
        }
        if y[1] < 0.0 {
            return Ok(Shot { lean: Lean::Under, stop_r: r1, reached_end: false, s, sp });
        }
    }
    // Undecided at the outer radius: the sign of d/dr[(pi - S) r^2] tells
    // which way the growing far-field mode is pulling.
    let r_end = cells as f64 * ds;
    let drift = 2.0 * (PI - y[0]) - r_end * y[1];
    let lean = if drift > 0.0 { Lean::Under } else { Lean::Over };
    Ok(Shot { lean, stop_r: r_end, reached_end: true, s, sp })
}

fn failure(e: Error, r: f64) -> Error {
    match e {
        Error::NonFinite { what, index, .. } => Error::NonFinite { what, index, r },
        other => other,
    }
}

/// Integrate outward from slope `b_trial` and classify the result.
pub fn shoot(b_trial: f64, cfg: &ShootingConfig) -> Result<ShotOutcome> {
    if !(b_trial > 0.0) {
        return Err(Error::invalid(format!("trial slope must be positive, got {b_trial}")));
    }
    cfg.validate()?;
    let shot = fire(b_trial, cfg)?;
    let last = shot.s.len() - 1;
    let near_pi = PI - shot.s[last] < cfg.far_tolerance && shot.sp[last].abs() < cfg.far_tolerance;
    Ok(match (shot.reached_end, shot.lean) {
        (true, _) if near_pi => {
            let profile = StaticProfile::from_table(b_trial, cfg.step, shot.s, shot.sp, None)?;
            ShotOutcome::Converged(Box::new(profile))
        }
        (_, Lean::Over) => ShotOutcome::Overshoot { r: shot.stop_r },
        (_, Lean::Under) => ShotOutcome::Undershoot { r: shot.stop_r },
    })
}

/// Bisection settings for [`solve_skyrmion_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub shooting: ShootingConfig,
    /// Initial bracket `(undershoot, overshoot)`.
    pub bracket: (f64, f64),
    /// Inner end of the far-field fit region.
    pub r_far: f64,
    /// Maximum separation of the final bracket trajectories still counted as resolved.
    pub trust_tolerance: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            shooting: ShootingConfig::default(),
            bracket: (0.1, 10.0),
            r_far: 20.0,
            trust_tolerance: 1e-10,
        }
    }
}

/// Skyrmion with default settings.
pub fn solve_skyrmion(tolerance: f64) -> Result<StaticProfile> {
    solve_skyrmion_with(tolerance, &SolveConfig::default())
}

/// Bisect on the launch slope until the bracket is narrower than
/// `tolerance`, then keep halving to the rounding limit so the recorded
/// trajectory stays on the separatrix as far out as possible.
pub fn solve_skyrmion_with(tolerance: f64, cfg: &SolveConfig) -> Result<StaticProfile> {
    if !(tolerance > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    let sc = &cfg.shooting;
    sc.validate()?;
    let (mut lo, mut hi) = cfg.bracket;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Bracket(format!("bracket ({lo}, {hi}) is not ordered and positive")));
    }
    let mut shot_lo = fire(lo, sc)?;
    let mut shot_hi = fire(hi, sc)?;
    if shot_lo.lean != Lean::Under || shot_hi.lean != Lean::Over {
        return Err(Error::Bracket(format!(
            "no sign change: b = {lo} gives {:?} at r = {}, b = {hi} gives {:?} at r = {}",
            shot_lo.lean, shot_lo.stop_r, shot_hi.lean, shot_hi.stop_r
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let shot = fire(mid, sc)?;
        match shot.lean {
            Lean::Under => {
                lo = mid;
                shot_lo = shot;
            }
            Lean::Over => {
                hi = mid;
                shot_hi = shot;
            }
        }
    }
    if hi - lo >= tolerance {
        return Err(Error::NoConvergence(format!(
            "bisection stalled with bracket width {:e}",
            hi - lo
        )));
    }
    // trajectories agree up to the radius where the two bracket ends separate
    let common = shot_lo.s.len().min(shot_hi.s.len());
    let split = (0..common)
        .find(|&j| (shot_lo.s[j] - shot_hi.s[j]).abs() > cfg.trust_tolerance)
        .unwrap_or(common);
    let keep = split.min(common);
    let b = 0.5 * (lo + hi);
    let s: Vec<f64> = (0..keep).map(|j| 0.5 * (shot_lo.s[j] + shot_hi.s[j])).collect();
    let sp: Vec<f64> = (0..keep).map(|j| 0.5 * (shot_lo.sp[j] + shot_hi.sp[j])).collect();
    let mut profile = StaticProfile::from_table(b, sc.step, s, sp, None)?;
    let c = extract_far_coefficient_from(&profile, cfg.r_far)?;
    profile.c = c;
    profile.bracket_width = hi - lo;
    Ok(profile)
}

/// The static soliton: a tabulated core joined to its far-field expansion
/// `pi - c/r^2 + c^3/(21 r^6)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticProfile {
    /// Launch slope, `S ~ b r` at the origin.
    pub b: f64,
    /// Far-field coefficient, `S ~ pi - c/r^2`.
    pub c: f64,
    step: f64,
    s: Vec<f64>,
    sp: Vec<f64>,
    /// Final bisection bracket width.
    pub bracket_width: f64,
}

impl StaticProfile {
    fn from_table(b: f64, step: f64, s: Vec<f64>, sp: Vec<f64>, c: Option<f64>) -> Result<Self> {
        if s.len() < 16 || s.len() != sp.len() {
            return Err(Error::invalid("static profile table too short"));
        }
        let mut p = Self { b, c: c.unwrap_or(f64::NAN), step, s, sp, bracket_width: 0.0 };
        if c.is_none() {
            if let Ok(c) = extract_far_coefficient_from(&p, 0.5 * p.table_end()) {
                p.c = c;
            }
        }
        Ok(p)
    }

    /// Tabulated profile with an explicit far-field coefficient.
    pub fn from_samples(b: f64, c: f64, step: f64, s: Vec<f64>, sp: Vec<f64>) -> Result<Self> {
        Self::from_table(b, step, s, sp, Some(c))
    }

    /// Outer end of the tabulated (integrated) region.
    pub fn table_end(&self) -> f64 {
        (self.s.len() - 1) as f64 * self.step
    }

    pub fn table_step(&self) -> f64 {
        self.step
    }

    /// Integrated samples `(r, S, S')` of the tabulated core.
    pub fn table(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.s.iter().zip(&self.sp).enumerate().map(move |(j, (&s, &sp))| (j as f64 * self.step, s, sp))
    }

    /// `(S, S', S'')` at any `r >= 0`.
    pub fn eval(&self, r: f64) -> (f64, f64, f64) {
        let r = r.abs();
        if r > self.table_end() {
            return far_field(self.c, r);
        }
        let x = r / self.step;
        let j = (x.floor() as usize).min(self.s.len() - 2);
        let t = x - j as f64;
        let second = |k: usize| {
            if k == 0 {
                0.0
            } else {
                static_rhs_unchecked(k as f64 * self.step, self.s[k], self.sp[k])
            }
        };
        let (p0, d0, a0) = (self.s[j], self.sp[j], second(j));
        let (p1, d1, a1) = (self.s[j + 1], self.sp[j + 1], second(j + 1));
        quintic_hermite(t, self.step, [p0, d0, a0], [p1, d1, a1])
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }

    /// `S` sampled on a grid, odd through the origin.
    pub fn sample(&self, grid: RadialGrid) -> Result<ScalarField> {
        ScalarField::from_fn(grid, Parity::Odd, |r| self.value(r))
    }

    /// `S'` sampled on a grid, even through the origin.
    pub fn sample_derivative(&self, grid: RadialGrid) -> Result<ScalarField> {
        ScalarField::from_fn(grid, Parity::Even, |r| self.eval(r).1)
    }

    /// Grid on which the tabulated core lives.
    pub fn table_grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.step, self.s.len(), OriginPlacement::Vertex)
    }
}

fn far_field(c: f64, r: f64) -> (f64, f64, f64) {
    let r2 = r * r;
    let c3 = c * c * c;
    let s = PI - c / r2 + c3 / (21.0 * r2 * r2 * r2);
    let sp = 2.0 * c / (r2 * r) - 6.0 * c3 / (21.0 * r2 * r2 * r2 * r);
    let spp = -6.0 * c / (r2 * r2) + 2.0 * c3 / (r2 * r2 * r2 * r2);
    (s, sp, spp)
}

/// Quintic Hermite interpolation on `[x0, x0 + h]` from value, slope and
/// curvature at both ends; returns value, slope and curvature.
pub(crate) fn quintic_hermite(t: f64, h: f64, left: [f64; 3], right: [f64; 3]) -> (f64, f64, f64) {
    let (p0, d0, a0) = (left[0], left[1] * h, left[2] * h * h);
    let (p1, d1, a1) = (right[0], right[1] * h, right[2] * h * h);
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h20 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h21 = 0.5 * (t3 - 2.0 * t4 + t5);
    let v = h00 * p0 + h10 * d0 + h20 * a0 + h01 * p1 + h11 * d1 + h21 * a1;

    let dh00 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let dh10 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let dh20 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    let dh01 = -dh00;
    let dh11 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let dh21 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);
    let dv = (dh00 * p0 + dh10 * d0 + dh20 * a0 + dh01 * p1 + dh11 * d1 + dh21 * a1) / h;

    let ddh00 = -60.0 * t + 180.0 * t2 - 120.0 * t3;
    let ddh10 = -36.0 * t + 96.0 * t2 - 60.0 * t3;
    let ddh20 = 0.5 * (2.0 - 18.0 * t + 36.0 * t2 - 20.0 * t3);
    let ddh01 = -ddh00;
    let ddh11 = -24.0 * t + 84.0 * t2 - 60.0 * t3;
    let ddh21 = 0.5 * (6.0 * t - 24.0 * t2 + 20.0 * t3);
    let ddv =
        (ddh00 * p0 + ddh10 * d0 + ddh20 * a0 + ddh01 * p1 + ddh11 * d1 + ddh21 * a1) / (h * h);
    (v, dv, ddv)
}

/// Least-squares fit of `(pi - S) r^2 = c + d / r^2` over the tabulated
/// region beyond `r_far`.
pub fn extract_far_coefficient(profile: &StaticProfile) -> Result<f64> {
    extract_far_coefficient_from(profile, 20.0)
}

pub fn extract_far_coefficient_from(profile: &StaticProfile, r_far: f64) -> Result<f64> {
    let samples: Vec<(f64, f64)> = profile
        .table()
        .filter(|&(r, _, _)| r >= r_far && r > 0.0)
        .map(|(r, s, _)| (r, s))
        .collect();
    fit_inverse_square(&samples)
}

/// Fit `(pi - S) r^2 = c + d / r^2` to `(r, S)` samples; returns `c`.
pub fn fit_inverse_square(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 10 {
        return Err(Error::invalid(format!(
            "far-field region has {} samples, need at least 10",
            samples.len()
        )));
    }
    let (mut sxx, mut sx, mut sy, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let n = samples.len() as f64;
    for &(r, s) in samples {
        let x = 1.0 / (r * r);
        let y = (PI - s) * r * r;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    let det = n * sxx - sx * sx;
    if det.abs() < f64::EPSILON * n * sxx {
        return Err(Error::invalid("far-field region too narrow to separate c from the correction"));
    }
    Ok((sxx * sy - sx * sxy) / det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_and_pi_are_static() {
        for r in [0.1, 1.0, 7.0] {
            assert_eq!(static_rhs(r, 0.0, 0.0).unwrap(), 0.0);
            assert!(static_rhs(r, PI, 0.0).unwrap().abs() < 1e-12);
        }
        assert!(static_rhs(1.0, PI / 2.0, 0.0).unwrap().abs() < 1e-15);
        assert!(static_rhs(0.0, 0.1, 1.0).is_err());
    }

    #[test]
    fn steep_and_shallow_launches_are_classified() {
        let cfg = ShootingConfig::default();
        assert!(shoot(10.0, &cfg).unwrap().is_overshoot());
        assert!(shoot(0.1, &cfg).unwrap().is_undershoot());
        assert!(shoot(-1.0, &cfg).is_err());
    }

    #[test]
    fn synthetic_far_field_is_fitted_exactly() {
        let samples: Vec<(f64, f64)> =
            (0..200).map(|i| 20.0 + 0.2 * i as f64).map(|r| (r, PI - 2.5 / (r * r))).collect();
        assert!((fit_inverse_square(&samples).unwrap() - 2.5).abs() < 1e-10);
        let samples: Vec<(f64, f64)> = (0..200)
            .map(|i| 20.0 + 0.2 * i as f64)
            .map(|r| (r, PI - 2.5 / (r * r) + 1.0 / r.powi(4)))
            .collect();
        assert!((fit_inverse_square(&samples).unwrap() - 2.5).abs() < 1e-3);
        assert!(fit_inverse_square(&samples[..5]).is_err());
    }

    #[test]
    fn launch_at_the_solved_slope_follows_pi_outward() {
        let p = solve_skyrmion(1e-8).unwrap();
        let cfg = ShootingConfig::default();
        match shoot(p.b, &cfg).unwrap() {
            ShotOutcome::Converged(q) => assert!((q.b - p.b).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        // four decimals are not enough to stay on the separatrix out to r = 60
        match shoot(2.0075, &cfg).unwrap() {
            ShotOutcome::Undershoot { r } | ShotOutcome::Overshoot { r } => assert!(r > 15.0, "{r}"),
            ShotOutcome::Converged(_) => {}
        }
    }

    /// `(w S')' - sin 2S (1 + sin^2 S / r^2 + S'^2)` from fourth-order
    /// central differences of `S` alone.
    fn fd_residual(p: &StaticProfile, h: f64, r_end: f64) -> f64 {
        let s = |r: f64| p.value(r);
        let mut worst = 0.0_f64;
        let mut r = 0.1;
        while r < r_end {
            let (sm2, sm1, s0, sp1, sp2) = (s(r - 2.0 * h), s(r - h), s(r), s(r + h), s(r + 2.0 * h));
            let d1 = (sm2 - 8.0 * sm1 + 8.0 * sp1 - sp2) / (12.0 * h);
            let d2 = (-sm2 + 16.0 * sm1 - 30.0 * s0 + 16.0 * sp1 - sp2) / (12.0 * h * h);
            let w = r * r + 2.0 * s0.sin().powi(2);
            let dw = 2.0 * r + 2.0 * (2.0 * s0).sin() * d1;
            let source = (2.0 * s0).sin() * (1.0 + (s0.sin() / r).powi(2) + d1 * d1);
            worst = worst.max((w * d2 + dw * d1 - source).abs());
            r += 0.37;
        }
        worst
    }

    #[test]
    fn profile_satisfies_the_static_equation() {
        let p = solve_skyrmion(1e-8).unwrap();
        let res = fd_residual(&p, 0.01, 40.0);
        assert!(res < 1e-6, "{res:e}");
        assert!(p.table_end() >= 50.0 || p.eval(60.0).0 > PI - 1e-3);
    }

    #[test]
    fn profile_is_monotone_between_zero_and_pi() {
        let p = solve_skyrmion(1e-8).unwrap();
        assert_eq!(p.value(0.0), 0.0);
        let mut prev = 0.0;
        for k in 1..=6000 {
            let s = p.value(k as f64 * 0.01);
            assert!(s > prev && s < PI, "r = {}", k as f64 * 0.01);
            prev = s;
        }
        assert!(PI - p.value(60.0) < 1e-3);
        // S - b r = O(r^3) near the origin
        let ratio = (p.value(0.02) - p.b * 0.02) / (p.value(0.01) - p.b * 0.01);
        assert!((ratio - 8.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn slope_scan_changes_outcome_once() {
        let cfg = ShootingConfig { r_max: 30.0, ..ShootingConfig::default() };
        let outcomes: Vec<bool> = (0..24)
            .map(|k| 0.2 + 0.4 * k as f64)
            .map(|b| shoot(b, &cfg).unwrap().is_overshoot())
            .collect();
        let flips = outcomes.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(flips, 1, "{outcomes:?}");
        assert!(!outcomes[0] && outcomes[23]);
    }

    #[test]
    fn halving_the_launch_radius_leaves_the_slope() {
        let base = SolveConfig::default();
        let mut half = base;
        half.shooting.r_min *= 0.5;
        let a = solve_skyrmion_with(1e-8, &base).unwrap();
        let b = solve_skyrmion_with(1e-8, &half).unwrap();
        assert!((a.b - b.b).abs() < 1e-8, "{:e}", a.b - b.b);
    }

    #[test]
    fn slope_converges_at_fourth_order() {
        let solve = |step: f64| {
            let mut cfg = SolveConfig::default();
            cfg.shooting.step = step;
            solve_skyrmion_with(1e-8, &cfg).unwrap().b
        };
        let (b1, b2, b4) = (solve(0.01), solve(0.02), solve(0.04));
        let ratio = (b4 - b2) / (b2 - b1);
        assert!(ratio > 12.0 && ratio < 20.0, "{ratio} from {b4} {b2} {b1}");
    }

    #[test]
    fn hermite_reproduces_quintic() {
        let f = |x: f64| (x.powi(5) - 2.0 * x.powi(3) + x, 5.0 * x.powi(4) - 6.0 * x * x + 1.0, 20.0 * x.powi(3) - 12.0 * x);
        let (x0, h) = (0.3, 0.2);
        let (a, b) = (f(x0), f(x0 + h));
        let (v, d, dd) = quintic_hermite(0.37, h, [a.0, a.1, a.2], [b.0, b.1, b.2]);
        let e = f(x0 + 0.37 * h);
        assert!((v - e.0).abs() < 1e-14 && (d - e.1).abs() < 1e-12 && (dd - e.2).abs() < 1e-10);
    }
}
