use super::energy;
use super::rhs::{fill_deviation, fill_nonlinear, Background, BACKGROUND_TOLERANCE};
use super::state::{EnergyBreakdown, FieldState};
use crate::error::{Error, Result};
use crate::radial::{interpolate_values, Parity, RadialGrid, Rk4, ScalarField, TimeSeries};

/// What an observer records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    F,
    P,
    /// `F - S` with `S` the configured attractor.
    FMinusAttractor,
}

/// Pointwise observer sampled at a fixed cadence, linearly interpolated in
/// time between steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObserverSpec {
    pub radius: f64,
    pub cadence: f64,
    pub quantity: Quantity,
}

impl ObserverSpec {
    pub fn new(quantity: Quantity, radius: f64) -> Self {
        Self { radius, cadence: 0.1, quantity }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveConfig {
    pub t_max: f64,
    pub dt: f64,
    /// Largest admissible `dt / h`.
    pub courant_limit: f64,
    /// Strength of sixth-difference dissipation; 0 disables it.
    pub dissipation: f64,
    /// Radius beyond which the initial data are static.
    pub support_radius: f64,
    pub energy_cadence: Option<f64>,
    pub snapshot_times: Vec<f64>,
    /// When set, only points that can still influence an observer before
    /// `t_max` are advanced, plus this margin. Energy and snapshots then
    /// describe the active region only.
    pub shrink_margin: Option<f64>,
    /// Static background subtracted by `FMinusAttractor` observers. When set,
    /// the run advances `F - S` rather than `F` and treats `S` as an exact
    /// static solution, so it must be one on this grid up to rounding (see
    /// `discrete_equilibrium`).
    pub attractor: Option<ScalarField>,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            t_max: 100.0,
            dt: 0.005,
            courant_limit: 0.5,
            dissipation: 0.0,
            support_radius: 0.0,
            energy_cadence: None,
            snapshot_times: Vec::new(),
            shrink_margin: None,
            attractor: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    /// One series per observer, in the order given.
    pub series: Vec<TimeSeries>,
    pub energy: Vec<(f64, EnergyBreakdown)>,
    pub snapshots: Vec<FieldState>,
    pub final_state: FieldState,
}

pub(crate) fn check_config(grid: &RadialGrid, cfg: &EvolveConfig, radii: &[f64], cadences: &[f64]) -> Result<()> {
    if !(cfg.t_max > 0.0 && cfg.t_max.is_finite()) {
        return Err(Error::invalid(format!("t_max must be positive, got {}", cfg.t_max)));
    }
    if !(cfg.dt > 0.0) {
        return Err(Error::invalid(format!("dt must be positive, got {}", cfg.dt)));
    }
    if !(cfg.courant_limit > 0.0 && cfg.courant_limit <= 0.5) {
        return Err(Error::invalid(format!("courant limit must lie in (0, 0.5], got {}", cfg.courant_limit)));
    }
    if cfg.dt > cfg.courant_limit * grid.h() * (1.0 + 1e-12) {
        return Err(Error::invalid(format!(
            "CFL violated: dt = {} exceeds {} h = {}",
            cfg.dt,
            cfg.courant_limit,
            cfg.courant_limit * grid.h()
        )));
    }
    if !(cfg.dissipation >= 0.0) {
        return Err(Error::invalid("dissipation must be non-negative"));
    }
    let r_obs = radii.iter().copied().fold(0.0, f64::max);
    let needed = cfg.t_max + r_obs + cfg.support_radius;
    if grid.r_max() < needed {
        return Err(Error::invalid(format!(
            "grid ends at {} but causal isolation needs R_max >= t_max + r_obs + support = {needed}",
            grid.r_max()
        )));
    }
    for (&r, &c) in radii.iter().zip(cadences) {
        if !grid.contains(r) {
            return Err(Error::invalid(format!("observer radius {r} outside the grid")));
        }
        if !(c >= cfg.dt) {
            return Err(Error::invalid(format!("observer cadence {c} below dt = {}", cfg.dt)));
        }
    }
    if let Some(c) = cfg.energy_cadence {
        if !(c >= cfg.dt) {
            return Err(Error::invalid(format!("energy cadence {c} below dt = {}", cfg.dt)));
        }
    }
    Ok(())
}

/// RK4 march of a stacked two-field state. `rhs(active, y, dydt)` fills the
/// derivative; `after(t_prev, t, y_prev, y)` sees every completed step.
pub(crate) fn march<R, A>(
    grid: &RadialGrid,
    cfg: &EvolveConfig,
    r_obs: f64,
    mut y: Vec<f64>,
    mut rhs: R,
    mut after: A,
) -> Result<Vec<f64>>
where
    R: FnMut(usize, &[f64], &mut [f64]),
    A: FnMut(f64, f64, &[f64], &[f64]) -> Result<()>,
{
    let n = grid.len();
    let steps = (cfg.t_max / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    let dt = cfg.t_max / steps as f64;
    let mut rk = Rk4::new(&y);
    let mut prev = y.clone();
    for s in 0..steps {
        let t0 = s as f64 * dt;
        let active = match cfg.shrink_margin {
            Some(m) => {
                let reach = r_obs + (cfg.t_max - t0) + m;
                ((reach / grid.h()).ceil() as usize + 4).clamp(16, n)
            }
            None => n,
        };
        prev.copy_from_slice(&y);
        rk.step(t0, &mut y, dt, |_, y, d| {
            rhs(active, y, d);
            Ok(())
        })
        .map_err(|e| match e {
            Error::NonFinite { index, .. } => Error::Blowup { t: t0, r: grid.r(index % n) },
            other => other,
        })?;
        after(t0, (s + 1) as f64 * dt, &prev, &y)?;
    }
    Ok(y)
}

/// Linear interpolation between the last two steps for every pending sample
/// time in `(t0, t1]`.
pub(crate) struct Sampler {
    count: u64,
    next: f64,
    cadence: f64,
    t_max: f64,
}

impl Sampler {
    pub(crate) fn new(cadence: f64, t_max: f64) -> Self {
        Self { count: 1, next: cadence, cadence, t_max }
    }

    pub(crate) fn due(&self, t1: f64) -> bool {
        self.next <= t1 + 1e-9 * self.cadence
    }

    pub(crate) fn drain(&mut self, t0: f64, t1: f64, v0: f64, v1: f64, out: &mut TimeSeries) -> Result<()> {
        let tol = 1e-9 * self.cadence;
        while self.next <= t1 + tol && self.next <= self.t_max + tol {
            let theta = ((self.next - t0) / (t1 - t0)).clamp(0.0, 1.0);
            out.push(self.next, v0 + theta * (v1 - v0))?;
            self.count += 1;
            self.next = self.count as f64 * self.cadence;
        }
        Ok(())
    }
}

/// Method-of-lines evolution of the nonlinear field equation.
pub fn evolve(initial: FieldState, cfg: &EvolveConfig, observers: &[ObserverSpec]) -> Result<Evolution> {
    let grid = *initial.grid();
    let n = grid.len();
    let radii: Vec<f64> = observers.iter().map(|o| o.radius).collect();
    let cadences: Vec<f64> = observers.iter().map(|o| o.cadence).collect();
    check_config(&grid, cfg, &radii, &cadences)?;
    let attractor = match &cfg.attractor {
        Some(a) if a.grid() != &grid => {
            return Err(Error::invalid("attractor must live on the evolution grid"));
        }
        Some(a) => Some(a.values()),
        None => None,
    };
    if attractor.is_none() && observers.iter().any(|o| o.quantity == Quantity::FMinusAttractor) {
        return Err(Error::invalid("F - S observers need an attractor"));
    }
    let background = attractor.map(|a| Background::new(&grid, a));
    if let Some(bg) = &background {
        if !(bg.residual() <= BACKGROUND_TOLERANCE) {
            return Err(Error::invalid(format!(
                "attractor is not a static solution on this grid (scaled residual {:e})",
                bg.residual()
            )));
        }
    }
    // the stacked state holds F, or F - S when a background is set
    let full = |y: &[f64], t: f64| -> Result<FieldState> {
        match &background {
            Some(bg) => {
                let mut z = y.to_vec();
                z[..n].iter_mut().zip(bg.values()).for_each(|(v, s)| *v += s);
                FieldState::from_stacked(grid, &z, t)
            }
            None => FieldState::from_stacked(grid, y, t),
        }
    };
    let observe = |y: &[f64], o: &ObserverSpec| -> Result<f64> {
        let (f, p) = y.split_at(n);
        let at = |v: &[f64]| interpolate_values(&grid, v, Parity::Odd, o.radius);
        Ok(match (o.quantity, &background) {
            (Quantity::P, _) => at(p)?,
            (Quantity::F, None) => at(f)?,
            (Quantity::F, Some(bg)) => at(f)? + at(bg.values())?,
            (Quantity::FMinusAttractor, Some(_)) => at(f)?,
            (Quantity::FMinusAttractor, None) => unreachable!(),
        })
    };

    let mut y0 = initial.stacked();
    if let Some(bg) = &background {
        y0[..n].iter_mut().zip(bg.values()).for_each(|(v, s)| *v -= s);
    }
    let mut series = Vec::with_capacity(observers.len());
    for o in observers {
        let mut s = TimeSeries::new();
        s.push(0.0, observe(&y0, o)?)?;
        series.push(s);
    }
    let mut samplers: Vec<Sampler> = observers.iter().map(|o| Sampler::new(o.cadence, cfg.t_max)).collect();
    let mut energies = Vec::new();
    if cfg.energy_cadence.is_some() {
        energies.push((0.0, energy(&initial)?));
    }
    let mut next_energy = cfg.energy_cadence.unwrap_or(f64::INFINITY);
    let mut pending: Vec<f64> = cfg.snapshot_times.clone();
    pending.sort_by(f64::total_cmp);
    pending.reverse();
    let mut snapshots = Vec::new();
    while pending.last().is_some_and(|&t| t <= 0.0) {
        pending.pop();
        snapshots.push(initial.clone());
    }

    let sigma = cfg.dissipation;
    let y = march(
        &grid,
        cfg,
        radii.iter().copied().fold(0.0, f64::max),
        y0,
        |active, y, d| {
            let (f, p) = y.split_at(n);
            let (df, dp) = d.split_at_mut(n);
            match &background {
                Some(bg) => fill_deviation(&grid, bg, f, p, active, sigma, df, dp),
                None => fill_nonlinear(&grid, f, p, active, sigma, df, dp),
            }
        },
        |t0, t1, prev, y| {
            for ((o, s), out) in observers.iter().zip(&mut samplers).zip(&mut series) {
                if s.due(t1) {
                    s.drain(t0, t1, observe(prev, o)?, observe(y, o)?, out)?;
                }
            }
            let eps = 1e-9 * cfg.dt;
            if t1 + eps >= next_energy {
                energies.push((t1, energy(&full(y, t1)?)?));
                let c = cfg.energy_cadence.unwrap();
                while next_energy <= t1 + eps {
                    next_energy += c;
                }
            }
            while pending.last().is_some_and(|&t| t <= t1 + eps) {
                pending.pop();
                snapshots.push(full(y, t1)?);
            }
            Ok(())
        },
    )?;
    Ok(Evolution { series, energy: energies, snapshots, final_state: full(&y, cfg.t_max)? })
}
