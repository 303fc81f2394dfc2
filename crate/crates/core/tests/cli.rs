use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn skyrme(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skyrme"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Header row and numeric rows of a written CSV.
fn table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn headline(out: &str, name: &str) -> f64 {
    let prefix = format!("{name} = ");
    out.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{name}` in\n{out}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn static_reports_both_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["static"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS b")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS c")), "{out}");
    let (header, rows) = table(&dir.path().join("static.csv"));
    assert_eq!(header, ["r", "S", "S_prime"]);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[0][1], 0.0);
    assert!((rows[0][2] - headline(&out, "b")).abs() < 1e-12);
    assert!(dir.path().join("static_report.csv").exists());
}

#[test]
fn config_file_values_are_echoed_and_overridable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# solver\ntolerance = 1e-6\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = skyrme(dir.path(), &["--config", cfg, "static"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("param tolerance = 1e-6"), "{}", stdout(&o));
    let text = fs::read_to_string(dir.path().join("static.csv")).unwrap();
    assert!(text.contains("# tolerance = 1e-6"), "{text}");

    let o = skyrme(dir.path(), &["--config", cfg, "static", "tolerance=1e-9"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("param tolerance = 1e-9"));
}

#[test]
fn bad_parameters_exit_with_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["static", "tolerence=1e-8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tolerence"), "{}", stderr(&o));

    let o = skyrme(dir.path(), &["qnm", "guess=0.6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("guess"));

    let o = skyrme(dir.path(), &["evolve", "h=-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("h"));

    let o = skyrme(dir.path(), &["figure", "figure=7"]);
    assert_eq!(o.status.code(), Some(1));

    let o = skyrme(dir.path(), &["--config", "/nonexistent/run.cfg", "static"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn qnm_lands_in_its_bands() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["qnm"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS qnm_omega") && out.contains("PASS qnm_gamma"), "{out}");
    assert!((headline(&out, "omega") - 0.6098).abs() < 1e-3);
    let (header, rows) = table(&dir.path().join("qnm.csv"));
    assert_eq!(header[..2], ["omega", "gamma"]);
    assert_eq!(rows.len(), 1);
    assert!(headline(&out, "sweep_spread") < 1e-3);
    let (header, rows) = table(&dir.path().join("qnm_sweep.csv"));
    assert_eq!(header, ["r0", "R", "omega", "gamma", "residual"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn evolution_output_is_deterministic() {
    let args = [
        "evolve",
        "family=degree0_gaussian_cubed",
        "A=1",
        "h=0.05",
        "t_max=20",
        "observers=F@5,P@5",
        "energy_cadence=1",
        "snapshots=10",
    ];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let oa = skyrme(a.path(), &args);
    let ob = skyrme(b.path(), &args);
    assert!(oa.status.success(), "{}", stderr(&oa));
    assert!(ob.status.success());
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 4, "{names:?}");
    for name in &names {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name:?} differs between identical runs");
    }
    let obs = names.iter().find(|n| n.to_string_lossy().starts_with("observer_F_")).unwrap();
    let text = fs::read_to_string(a.path().join(obs)).unwrap();
    assert!(text.contains("# h = 0.05"), "{text}");
    let (header, rows) = table(&a.path().join(obs));
    assert_eq!(header, ["t", "F"]);
    assert_eq!(rows[0][0], 0.0);
    assert!((rows.last().unwrap()[0] - 20.0).abs() < 1e-9);
}

#[test]
fn fitters_read_observer_tables() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("ring.csv");
    let mut text = String::from("# synthetic\nt,P\n");
    for i in 0..=1000 {
        let t = i as f64 * 0.1;
        text += &format!("{t},{}\n", 0.3 * (-0.26 * t).exp() * (0.61 * t + 0.4).sin());
    }
    fs::write(&ring, text).unwrap();
    let o = skyrme(dir.path(), &["ringdown-fit", &format!("input={}", ring.display())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!((headline(&out, "omega") - 0.61).abs() < 1e-6, "{out}");
    assert!((headline(&out, "gamma") - 0.26).abs() < 1e-6);

    let tail = dir.path().join("tail.csv");
    let mut text = String::from("t,P\n");
    for i in 0..=300 {
        let t = 100.0 + i as f64;
        text += &format!("{t},{}\n", -7.0 * t.powi(-6));
    }
    fs::write(&tail, text).unwrap();
    let o = skyrme(dir.path(), &["tail-fit", &format!("input={}", tail.display()), "window=110,390"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!((headline(&stdout(&o), "exponent") - 6.0).abs() < 1e-8, "{}", stdout(&o));

    let o = skyrme(dir.path(), &["tail-fit", &format!("input={}", tail.display()), "column=Q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains('Q'));
}

#[test]
fn tail_prediction_reports_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["tail-predict", "t_range=100,110", "t_step=5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c = headline(&stdout(&o), "c");
    let exact = 35.0 * (3.0 * std::f64::consts::PI).sqrt() / 1458.0;
    assert!((c - exact).abs() < 1e-6, "{c}");
    let (header, rows) = table(&dir.path().join("tail_predict_series.csv"));
    assert_eq!(header, ["t", "F3", "asymptotic"]);
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert!((row[1] / row[2] - 1.0).abs() < 0.05);
    }
}

#[test]
fn degree_zero_figure_with_vanishing_amplitude_predicts_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["figure", "figure=4", "A=0", "h=0.05", "t_max=20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = table(&dir.path().join("fig4.csv"));
    assert_eq!(header, ["t", "abs_F", "abs_prediction"]);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] == 0.0));
}

#[test]
fn ringing_figure_carries_data_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let o = skyrme(dir.path(), &["figure", "figure=2", "h=0.05", "t_max=70"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = table(&dir.path().join("fig2.csv"));
    assert_eq!(header, ["t", "ln_abs_P", "fit"]);
    assert!(rows.len() > 100);
    let omega = headline(&stdout(&o), "omega");
    assert!((omega - 0.61).abs() < 0.03, "{omega}");
}

#[test]
fn compare_signals_a_failed_verdict() {
    let dir = tempfile::tempdir().unwrap();
    // a large amplitude leaves the third-order regime
    let o = skyrme(dir.path(), &["compare", "A=3", "h=0.05", "t_max=120"]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FAIL compare_relative_error"));
    let (header, _) = table(&dir.path().join("compare.csv"));
    assert_eq!(header, ["t", "F", "asymptotic", "F3"]);
}
