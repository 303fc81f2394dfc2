use std::path::{Path, PathBuf};

use super::config::RunConfig;
use super::output::{fmt, read_series, write_csv, Verdict};
use super::reference::reference;
use crate::error::{Error, Result};
use crate::evolution::{
    discrete_equilibrium, evolve, make_initial_data, EvolveConfig, Evolution, FieldState, InitialData, ObserverSpec,
    Quantity,
};
use crate::fit::{estimate_tail_coefficient, fit_power_law, fit_ringdown, suggest_tail_window};
use crate::perturbative::{
    asymptotic_coefficient, green_convolve, invert_initial_data, ConvolveOptions, GeneratingFunction,
};
use crate::radial::{interpolate_values, OriginPlacement, Parity, RadialGrid, ScalarField, TimeSeries};
use crate::skyrmion::solve_skyrmion;
use crate::spectrum::{effective_potential_with, find_qnm, OutgoingSeed, QnmConfig};

/// What a subcommand hands back to the report.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub headlines: Vec<(String, f64)>,
    pub verdicts: Vec<Verdict>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub(crate) fn headline(&mut self, name: &str, v: f64) {
        self.headlines.push((name.to_string(), v));
    }
}

pub(crate) fn out_path(cfg: &RunConfig, name: &str) -> PathBuf {
    cfg.out_dir.join(name)
}

/// Resolved parameters plus extra lines, for CSV headers.
pub(crate) fn meta(cfg: &RunConfig, extra: &[(&str, f64)]) -> Vec<(String, String)> {
    let mut m = vec![("subcommand".to_string(), cfg.subcommand.clone())];
    m.extend(cfg.resolved());
    m.extend(extra.iter().map(|(k, v)| (k.to_string(), fmt(*v))));
    m
}

pub(crate) fn run_static(cfg: &RunConfig) -> Result<Outcome> {
    let tol = cfg.positive("tolerance", 1e-8)?;
    cfg.finish()?;
    let p = solve_skyrmion(tol)?;
    let mut o = Outcome::default();
    o.headline("b", p.b);
    o.headline("c", p.c);
    o.headline("bracket_width", p.bracket_width);
    o.verdicts.push(reference("b").verdict(p.b));
    o.verdicts.push(reference("c").verdict(p.c));
    let path = out_path(cfg, "static.csv");
    write_csv(&path, &meta(cfg, &[("b", p.b), ("c", p.c)]), &["r", "S", "S_prime"], p.table().map(|(r, s, sp)| vec![r, s, sp]))?;
    o.files.push(path);
    Ok(o)
}

pub(crate) fn run_qnm(cfg: &RunConfig) -> Result<Outcome> {
    let guess = cfg.pair("guess", (0.6, 0.3))?;
    let static_tol = cfg.positive("static_tolerance", 1e-8)?;
    let tol = cfg.positive("tolerance", 1e-9)?;
    let defaults = QnmConfig::default();
    let seed = match cfg.string("seed", "asymptotic").as_str() {
        "asymptotic" => OutgoingSeed::Asymptotic,
        "hankel" => OutgoingSeed::FreeHankel,
        other => return Err(Error::config("seed", format!("expected asymptotic or hankel, got `{other}`"))),
    };
    let q = QnmConfig {
        r0: cfg.positive("r0", defaults.r0)?,
        big_r: cfg.positive("R", defaults.big_r)?,
        step: cfg.positive("step", defaults.step)?,
        seed,
        ..defaults
    };
    let r_switch = cfg.positive("r_switch", crate::spectrum::potential::DEFAULT_R_SWITCH)?;
    // (r0, R) pairs flattened: r0,R,r0,R,...
    let sweep = cfg.list("sweep", &[10.0, 60.0, 6.0, 30.0])?;
    if sweep.len() % 2 != 0 {
        return Err(Error::config("sweep", "expected r0,R pairs"));
    }
    cfg.finish()?;
    let profile = solve_skyrmion(static_tol)?;
    let pot = effective_potential_with(&profile, r_switch, profile.table_step())?;
    let mode = find_qnm(&pot, guess, tol, &q)?;
    let mut rows = Vec::new();
    let mut spread: f64 = 0.0;
    for pair in sweep.chunks(2) {
        let m = find_qnm(&pot, (mode.omega, mode.gamma), tol, &QnmConfig { r0: pair[0], big_r: pair[1], ..q })?;
        spread = spread.max((m.omega - mode.omega).abs()).max((m.gamma - mode.gamma).abs());
        rows.push(vec![m.r0, m.big_r, m.omega, m.gamma, m.residual]);
    }
    let mut o = Outcome::default();
    o.headline("omega", mode.omega);
    o.headline("gamma", mode.gamma);
    o.headline("residual", mode.residual);
    if !rows.is_empty() {
        o.headline("sweep_spread", spread);
        let path = out_path(cfg, "qnm_sweep.csv");
        write_csv(&path, &meta(cfg, &[]), &["r0", "R", "omega", "gamma", "residual"], rows)?;
        o.files.push(path);
    }
    o.verdicts.push(reference("qnm_omega").verdict(mode.omega));
    o.verdicts.push(reference("qnm_gamma").verdict(mode.gamma));
    let path = out_path(cfg, "qnm.csv");
    write_csv(
        &path,
        &meta(cfg, &[]),
        &["omega", "gamma", "residual", "r0", "R", "iterations"],
        [vec![mode.omega, mode.gamma, mode.residual, mode.r0, mode.big_r, mode.iterations as f64]],
    )?;
    o.files.push(path);
    Ok(o)
}

/// Initial data named by `family` and its parameters.
pub(crate) struct DataSpec {
    pub family: String,
    data: Family,
}

enum Family {
    Builtin(InitialData),
    Table { grid: RadialGrid, f: Vec<f64>, fdot: Vec<f64>, degree: u32 },
}

impl DataSpec {
    pub(crate) fn degree(&self) -> u32 {
        match &self.data {
            Family::Builtin(d) => d.degree(),
            Family::Table { degree, .. } => *degree,
        }
    }

    pub(crate) fn support_radius(&self) -> f64 {
        match &self.data {
            Family::Builtin(d) => d.support_radius(),
            Family::Table { grid, .. } => grid.r_max(),
        }
    }
}

pub(crate) fn data_spec(cfg: &RunConfig, family: &str, amplitude: f64, rho: f64) -> Result<DataSpec> {
    let family = cfg.string("family", family);
    let data = match family.as_str() {
        "degree0_gaussian_cubed" => Family::Builtin(InitialData::Degree0GaussianCubed { amplitude: cfg.f64("A", amplitude)? }),
        "degree1_perturbed_skyrmion" => Family::Builtin(InitialData::Degree1PerturbedSkyrmion {
            amplitude: cfg.f64("A", amplitude)?,
            rho: cfg.positive("rho", rho)?,
        }),
        "degree1_kicked_skyrmion" => Family::Builtin(InitialData::Degree1KickedSkyrmion {
            amplitude: cfg.f64("A", amplitude)?,
            rho: cfg.positive("rho", rho)?,
        }),
        "custom" => {
            let path = cfg.required_string("table")?;
            let degree = cfg.f64("degree", 0.0)?;
            if degree != 0.0 && degree != 1.0 {
                return Err(Error::config("degree", "custom data must have degree 0 or 1"));
            }
            let (grid, f, fdot) = read_table(Path::new(&path))?;
            Family::Table { grid, f, fdot, degree: degree as u32 }
        }
        other => return Err(Error::config("family", format!("unknown family `{other}`"))),
    };
    Ok(DataSpec { family, data })
}

/// Columns `r, F, Fdot` on a uniform grid starting at `r = 0`.
fn read_table(path: &Path) -> Result<(RadialGrid, Vec<f64>, Vec<f64>)> {
    let f = read_series(path, Some("F"))?;
    let fdot = read_series(path, Some("Fdot"))?;
    let r = f.times();
    if r.len() < 16 || r[0] != 0.0 {
        return Err(Error::config("table", "need at least 16 rows starting at r = 0"));
    }
    let h = r[1];
    if r.iter().enumerate().any(|(i, &x)| (x - i as f64 * h).abs() > 1e-9 * h.max(1.0)) {
        return Err(Error::config("table", "radii must be uniformly spaced"));
    }
    let grid = RadialGrid::new(h, r.len(), OriginPlacement::Vertex)?;
    Ok((grid, f.values().to_vec(), fdot.values().to_vec()))
}

/// Everything an evolution needs on a concrete grid.
pub(crate) struct Prepared {
    pub state: FieldState,
    pub attractor: Option<ScalarField>,
}

pub(crate) fn prepare(spec: &DataSpec, grid: RadialGrid, static_tolerance: f64) -> Result<Prepared> {
    let attractor = if spec.degree() == 1 {
        Some(discrete_equilibrium(&solve_skyrmion(static_tolerance)?, &grid)?)
    } else {
        None
    };
    let data = match &spec.data {
        Family::Builtin(d) => d.clone(),
        Family::Table { grid: tg, f, fdot, degree } => {
            let at = |v: &[f64], r: f64, beyond: f64| -> Result<f64> {
                if r <= tg.r_max() {
                    interpolate_values(tg, v, Parity::Odd, r)
                } else {
                    Ok(beyond)
                }
            };
            let bg = |i: usize| attractor.as_ref().map_or(0.0, |a| a.values()[i]);
            let mut fv = Vec::with_capacity(grid.len());
            let mut dv = Vec::with_capacity(grid.len());
            for (i, r) in grid.points().enumerate() {
                fv.push(at(f, r, bg(i))?);
                dv.push(at(fdot, r, 0.0)?);
            }
            InitialData::Custom { f: fv, fdot: dv, degree: *degree }
        }
    };
    let state = make_initial_data(&data, &grid, attractor.as_ref())?;
    Ok(Prepared { state, attractor })
}

fn parse_observers(cfg: &RunConfig, default: &str) -> Result<Vec<ObserverSpec>> {
    let text = cfg.string("observers", default);
    let cadence = cfg.positive("cadence", 0.1)?;
    text.split(',')
        .map(|item| {
            let (q, r) = item
                .trim()
                .split_once('@')
                .ok_or_else(|| Error::config("observers", format!("`{item}` is not quantity@radius")))?;
            let quantity = match q {
                "F" => Quantity::F,
                "P" => Quantity::P,
                "F-S" => Quantity::FMinusAttractor,
                other => return Err(Error::config("observers", format!("unknown quantity `{other}`"))),
            };
            let radius: f64 =
                r.parse().map_err(|_| Error::config("observers", format!("radius `{r}` is not a number")))?;
            Ok(ObserverSpec { radius, cadence, quantity })
        })
        .collect()
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::F => "F",
        Quantity::P => "P",
        Quantity::FMinusAttractor => "F-S",
    }
}

/// Grid, time and dissipation keys shared by every evolving subcommand.
pub(crate) struct EvolutionKeys {
    pub h: f64,
    pub r_max: f64,
    pub cfg: EvolveConfig,
    pub static_tolerance: f64,
}

pub(crate) fn evolution_keys(
    cfg: &RunConfig,
    spec: &DataSpec,
    r_obs: f64,
    defaults: (f64, f64),
) -> Result<EvolutionKeys> {
    let h = cfg.positive("h", defaults.0)?;
    let t_max = cfg.positive("t_max", defaults.1)?;
    let dt = cfg.positive("dt", 0.5 * h)?;
    let support = spec.support_radius();
    let r_max = cfg.positive("R_max", t_max + r_obs + support + 1.0)?;
    let dissipation = cfg.f64("dissipation", 0.0)?;
    let shrink_margin = cfg.optional_f64("shrink")?;
    let static_tolerance = cfg.positive("static_tolerance", 1e-8)?;
    let cfg = EvolveConfig {
        t_max,
        dt,
        dissipation,
        support_radius: support,
        shrink_margin,
        ..EvolveConfig::default()
    };
    Ok(EvolutionKeys { h, r_max, cfg, static_tolerance })
}

pub(crate) fn run_evolution(
    spec: &DataSpec,
    keys: EvolutionKeys,
    observers: &[ObserverSpec],
) -> Result<(Evolution, Option<ScalarField>)> {
    let grid = RadialGrid::covering(keys.h, keys.r_max)?;
    let prep = prepare(spec, grid, keys.static_tolerance)?;
    let cfg = EvolveConfig { attractor: prep.attractor.clone(), ..keys.cfg };
    Ok((evolve(prep.state, &cfg, observers)?, prep.attractor))
}

pub(crate) fn run_evolve(cfg: &RunConfig) -> Result<Outcome> {
    let spec = data_spec(cfg, "degree1_perturbed_skyrmion", 0.5, 3.0)?;
    let observers = parse_observers(cfg, "P@10")?;
    let r_obs = observers.iter().map(|o| o.radius).fold(0.0, f64::max);
    let mut keys = evolution_keys(cfg, &spec, r_obs, (0.01, 100.0))?;
    keys.cfg.energy_cadence = cfg.optional_f64("energy_cadence")?;
    keys.cfg.snapshot_times = cfg.list("snapshots", &[])?;
    cfg.finish()?;
    let (ev, _) = run_evolution(&spec, keys, &observers)?;
    let m = meta(cfg, &[]);
    let mut o = Outcome::default();
    for (obs, s) in observers.iter().zip(&ev.series) {
        let name = quantity_name(obs.quantity);
        let path = out_path(cfg, &format!("observer_{}_r{}.csv", name.replace('-', "_minus_"), obs.radius));
        write_csv(&path, &m, &["t", name], s.iter().map(|(t, v)| vec![t, v]))?;
        o.files.push(path);
    }
    if !ev.energy.is_empty() {
        let path = out_path(cfg, "energy.csv");
        write_csv(
            &path,
            &m,
            &["t", "E_sigma", "E_S", "E_total"],
            ev.energy.iter().map(|(t, e)| vec![*t, e.e_sigma, e.e_skyrme, e.total()]),
        )?;
        o.files.push(path);
        let e0 = ev.energy[0].1.total();
        let drift = ev.energy.iter().map(|(_, e)| ((e.total() - e0) / e0).abs()).fold(0.0, f64::max);
        o.headline("energy_drift", drift);
    }
    for snap in &ev.snapshots {
        let path = out_path(cfg, &format!("snapshot_t{}.csv", snap.t));
        let grid = snap.grid();
        write_csv(
            &path,
            &meta(cfg, &[("t", snap.t)]),
            &["r", "F", "P"],
            (0..grid.len()).map(|i| vec![grid.r(i), snap.f().values()[i], snap.p().values()[i]]),
        )?;
        o.files.push(path);
    }
    o.headline("t_final", ev.final_state.t);
    Ok(o)
}

fn input_series(cfg: &RunConfig) -> Result<TimeSeries> {
    let input = cfg.required_string("input")?;
    let column = cfg.has("column").then(|| cfg.string("column", ""));
    read_series(Path::new(&input), column.as_deref())
}

pub(crate) fn run_ringdown_fit(cfg: &RunConfig) -> Result<Outcome> {
    let series = input_series(cfg)?;
    let window = cfg.pair("window", (20.0, 60.0))?;
    cfg.finish()?;
    let f = fit_ringdown(&series, window)?;
    let mut o = Outcome::default();
    for (k, v) in [("amplitude", f.amplitude), ("gamma", f.gamma), ("omega", f.omega), ("phase", f.phase), ("residual", f.residual)] {
        o.headline(k, v);
    }
    o.verdicts.push(reference("ringdown_omega").verdict(f.omega));
    o.verdicts.push(reference("ringdown_gamma").verdict(f.gamma));
    let path = out_path(cfg, "ringdown_fit.csv");
    write_csv(
        &path,
        &meta(cfg, &[]),
        &["amplitude", "gamma", "omega", "phase", "t1", "t2", "residual"],
        [vec![f.amplitude, f.gamma, f.omega, f.phase, f.window.0, f.window.1, f.residual]],
    )?;
    o.files.push(path);
    Ok(o)
}

/// `window=auto` (the default) or `window=t1,t2`.
pub(crate) fn tail_window(cfg: &RunConfig) -> Result<Option<(f64, f64)>> {
    match cfg.string("window", "auto").as_str() {
        "auto" => Ok(None),
        _ => cfg.pair("window", (0.0, 0.0)).map(Some),
    }
}

pub(crate) fn resolve_window(choice: Option<(f64, f64)>, series: &TimeSeries) -> Result<(f64, f64)> {
    match choice {
        Some(w) => Ok(w),
        None => suggest_tail_window(series),
    }
}

pub(crate) fn run_tail_fit(cfg: &RunConfig) -> Result<Outcome> {
    let series = input_series(cfg)?;
    let window = resolve_window(tail_window(cfg)?, &series)?;
    cfg.finish()?;
    let f = fit_power_law(&series, window)?;
    let mut o = Outcome::default();
    for (k, v) in [("offset", f.offset), ("exponent", f.exponent), ("correction", f.correction), ("residual", f.residual)] {
        o.headline(k, v);
    }
    let path = out_path(cfg, "tail_fit.csv");
    write_csv(
        &path,
        &meta(cfg, &[]),
        &["offset", "exponent", "correction", "t1", "t2", "residual", "samples"],
        [vec![f.offset, f.exponent, f.correction, f.window.0, f.window.1, f.residual, f.samples as f64]],
    )?;
    o.files.push(path);
    Ok(o)
}

/// Generating function of degree-zero data with `F_t = 0`.
pub(crate) fn generating_function(spec: &DataSpec) -> Result<GeneratingFunction> {
    match &spec.data {
        Family::Builtin(InitialData::Degree0GaussianCubed { amplitude }) => {
            Ok(invert_initial_data(|r: f64| r.powi(3) * (-r * r).exp())?.scaled(*amplitude))
        }
        Family::Table { grid, f, fdot, degree: 0 } => {
            if fdot.iter().any(|&v| v != 0.0) {
                return Err(Error::config("table", "the perturbative tail needs Fdot = 0"));
            }
            invert_initial_data(|r: f64| {
                if r <= grid.r_max() {
                    interpolate_values(grid, f, Parity::Odd, r).unwrap_or(0.0)
                } else {
                    0.0
                }
            })
        }
        _ => Err(Error::config("family", format!("`{}` is not degree-zero data", spec.family))),
    }
}

pub(crate) fn run_tail_predict(cfg: &RunConfig) -> Result<Outcome> {
    let spec = data_spec(cfg, "degree0_gaussian_cubed", 1.0, 0.0)?;
    let r0 = cfg.positive("r0", 10.0)?;
    let range = if cfg.has("t_range") { Some(cfg.pair("t_range", (0.0, 0.0))?) } else { None };
    let t_step = cfg.positive("t_step", 1.0)?;
    let include_h = cfg.bool("include_h", false)?;
    cfg.finish()?;
    let a = generating_function(&spec)?;
    let pred = asymptotic_coefficient(&a);
    let mut o = Outcome::default();
    o.headline("c", pred.c);
    let path = out_path(cfg, "tail_predict.csv");
    write_csv(&path, &meta(cfg, &[]), &["c", "u_max"], [vec![pred.c, a.u_max()]])?;
    o.files.push(path);
    if let Some((t1, t2)) = range {
        if !(t2 > t1) {
            return Err(Error::config("t_range", "needs t1 < t2"));
        }
        let opts = ConvolveOptions { include_h, ..ConvolveOptions::default() };
        let n = ((t2 - t1) / t_step).floor() as usize;
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let t = t1 + i as f64 * t_step;
            rows.push(vec![t, green_convolve(&a, t, r0, &opts)?, pred.at(t, r0)]);
        }
        let path = out_path(cfg, "tail_predict_series.csv");
        write_csv(&path, &meta(cfg, &[("c", pred.c)]), &["t", "F3", "asymptotic"], rows)?;
        o.files.push(path);
    }
    Ok(o)
}

/// Degree-zero evolution against the perturbative tail.
pub(crate) struct Comparison {
    pub series: TimeSeries,
    pub c: f64,
    pub a: GeneratingFunction,
    pub r0: f64,
    pub window: (f64, f64),
    pub coefficient: f64,
    pub relative_error: f64,
}

pub(crate) fn compare_degree0(cfg: &RunConfig, defaults: (f64, f64)) -> Result<Comparison> {
    let spec = data_spec(cfg, "degree0_gaussian_cubed", 1.0, 0.0)?;
    if spec.degree() != 0 {
        return Err(Error::config("family", "the comparison needs degree-zero data"));
    }
    let r0 = cfg.positive("r0", 10.0)?;
    let keys = evolution_keys(cfg, &spec, r0, defaults)?;
    let t_max = keys.cfg.t_max;
    let window = cfg.pair("window", (0.5 * t_max, t_max))?;
    cfg.finish()?;
    let a = generating_function(&spec)?;
    let c = asymptotic_coefficient(&a).c;
    let (ev, _) = run_evolution(&spec, keys, &[ObserverSpec::new(Quantity::F, r0)])?;
    let series = ev.series.into_iter().next().unwrap();
    let coefficient = if c == 0.0 { 0.0 } else { estimate_tail_coefficient(&series, window, r0, 5.0)?.median };
    let relative_error = if c == 0.0 { 0.0 } else { (coefficient / c - 1.0).abs() };
    Ok(Comparison { series, c, a, r0, window, coefficient, relative_error })
}

pub(crate) fn run_compare(cfg: &RunConfig) -> Result<Outcome> {
    let overlay_step = cfg.positive("overlay_step", 1.0)?;
    let cmp = compare_degree0(cfg, (0.02, 300.0))?;
    let mut o = Outcome::default();
    o.headline("c_prediction", cmp.c);
    o.headline("c_evolution", cmp.coefficient);
    o.headline("relative_error", cmp.relative_error);
    o.verdicts.push(reference("compare_relative_error").verdict(cmp.relative_error));
    let opts = ConvolveOptions::default();
    let mut rows = Vec::new();
    for (t, v) in cmp.series.iter() {
        if ((t / overlay_step).round() * overlay_step - t).abs() < 1e-9 * overlay_step.max(1.0) {
            let f3 = if t > cmp.r0 { green_convolve(&cmp.a, t, cmp.r0, &opts)? } else { f64::NAN };
            rows.push(vec![t, v, cmp.c * cmp.r0 * t.powi(-5), f3]);
        }
    }
    let path = out_path(cfg, "compare.csv");
    write_csv(
        &path,
        &meta(cfg, &[("c", cmp.c), ("relative_error", cmp.relative_error), ("t1", cmp.window.0), ("t2", cmp.window.1)]),
        &["t", "F", "asymptotic", "F3"],
        rows,
    )?;
    o.files.push(path);
    Ok(o)
}
