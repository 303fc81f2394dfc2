use super::commands::{
    compare_degree0, data_spec, evolution_keys, meta, out_path, resolve_window, run_evolution, tail_window, Outcome,
};
use super::config::RunConfig;
use super::output::write_csv;
use super::reference::reference;
use crate::error::{Error, Result};
use crate::evolution::{ObserverSpec, Quantity};
use crate::fit::{fit_power_law, fit_ringdown};

pub(crate) fn run_figure(cfg: &RunConfig) -> Result<Outcome> {
    let which = cfg.f64("figure", 0.0)?;
    match which as i64 {
        1 if which == 1.0 => snapshots(cfg),
        2 if which == 2.0 => ringing(cfg),
        3 if which == 3.0 => tail(cfg),
        4 if which == 4.0 => degree_zero(cfg),
        _ => Err(Error::config("figure", format!("expected 1, 2, 3 or 4, got {which}"))),
    }
}

/// Field profiles at a few times next to the soliton.
fn snapshots(cfg: &RunConfig) -> Result<Outcome> {
    let spec = data_spec(cfg, "degree1_perturbed_skyrmion", 0.5, 3.0)?;
    let times = cfg.list("snapshots", &[0.0, 5.0, 10.0, 20.0, 40.0])?;
    let r_plot = cfg.positive("r_plot", 30.0)?;
    let t_last = times.iter().copied().fold(0.0, f64::max);
    let mut keys = evolution_keys(cfg, &spec, r_plot, (0.02, t_last.max(1.0)))?;
    keys.cfg.snapshot_times = times;
    cfg.finish()?;
    if spec.degree() != 1 {
        return Err(Error::config("family", "figure 1 shows degree-one data"));
    }
    let (ev, attractor) = run_evolution(&spec, keys, &[])?;
    let s = attractor.expect("degree-one runs carry the soliton");
    let mut o = Outcome::default();
    for snap in &ev.snapshots {
        let grid = snap.grid();
        let rows = (0..grid.len())
            .take_while(|&i| grid.r(i) <= r_plot)
            .map(|i| vec![grid.r(i), snap.f().values()[i], s.values()[i]]);
        let path = out_path(cfg, &format!("fig1_t{}.csv", snap.t));
        write_csv(&path, &meta(cfg, &[("t", snap.t)]), &["r", "F", "S"], rows)?;
        o.files.push(path);
    }
    Ok(o)
}

/// `ln|P(t, r0)|` with the fitted damped oscillation.
fn ringing(cfg: &RunConfig) -> Result<Outcome> {
    let spec = data_spec(cfg, "degree1_perturbed_skyrmion", 0.05, 3.0)?;
    let r0 = cfg.positive("r0", 10.0)?;
    let window = cfg.pair("window", (20.0, 60.0))?;
    let keys = evolution_keys(cfg, &spec, r0, (0.01, 100.0))?;
    cfg.finish()?;
    let (ev, _) = run_evolution(&spec, keys, &[ObserverSpec::new(Quantity::P, r0)])?;
    let p = &ev.series[0];
    let fit = fit_ringdown(p, window)?;
    let mut o = Outcome::default();
    o.headline("omega", fit.omega);
    o.headline("gamma", fit.gamma);
    o.verdicts.push(reference("ringdown_omega").verdict(fit.omega));
    o.verdicts.push(reference("ringdown_gamma").verdict(fit.gamma));
    let path = out_path(cfg, "fig2.csv");
    write_csv(
        &path,
        &meta(cfg, &[("omega", fit.omega), ("gamma", fit.gamma), ("amplitude", fit.amplitude), ("phase", fit.phase)]),
        &["t", "ln_abs_P", "fit"],
        p.iter().filter(|&(t, _)| t > 0.0).map(|(t, v)| vec![t, v.abs().ln(), fit.eval(t).abs().ln()]),
    )?;
    o.files.push(path);
    Ok(o)
}

/// Log-log view of the degree-one tail with the power-law fit.
fn tail(cfg: &RunConfig) -> Result<Outcome> {
    let spec = data_spec(cfg, "degree1_perturbed_skyrmion", 2.0, 3.0)?;
    let r0 = cfg.positive("r0", 10.0)?;
    let mut keys = evolution_keys(cfg, &spec, r0, (0.02, 400.0))?;
    if !cfg.has("shrink") {
        keys.cfg.shrink_margin = Some(5.0);
    }
    let choice = tail_window(cfg)?;
    cfg.finish()?;
    let (ev, _) = run_evolution(&spec, keys, &[ObserverSpec::new(Quantity::P, r0)])?;
    let p = &ev.series[0];
    let window = resolve_window(choice, p)?;
    let fit = fit_power_law(p, window)?;
    let mut o = Outcome::default();
    o.headline("b", fit.exponent);
    o.verdicts.push(reference("tail_exponent_p").verdict(fit.exponent));
    let path = out_path(cfg, "fig3.csv");
    write_csv(
        &path,
        &meta(cfg, &[("b", fit.exponent), ("a", fit.offset), ("c_correction", fit.correction), ("t1", window.0), ("t2", window.1)]),
        &["ln_t", "ln_abs_P", "fit"],
        p.iter().filter(|&(t, _)| t > 0.0).map(|(t, v)| vec![t.ln(), v.abs().ln(), fit.magnitude(t).ln()]),
    )?;
    o.files.push(path);
    Ok(o)
}

/// Degree-zero solution against the predicted tail `c r t^-5`.
fn degree_zero(cfg: &RunConfig) -> Result<Outcome> {
    let cmp = compare_degree0(cfg, (0.02, 300.0))?;
    let mut o = Outcome::default();
    o.headline("c_prediction", cmp.c);
    o.headline("relative_error", cmp.relative_error);
    let path = out_path(cfg, "fig4.csv");
    write_csv(
        &path,
        &meta(cfg, &[("c", cmp.c), ("relative_error", cmp.relative_error)]),
        &["t", "abs_F", "abs_prediction"],
        cmp.series
            .iter()
            .filter(|&(t, _)| t > 0.0)
            .map(|(t, v)| vec![t, v.abs(), (cmp.c * cmp.r0 * t.powi(-5)).abs()]),
    )?;
    o.files.push(path);
    Ok(o)
}
