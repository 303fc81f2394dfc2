//! Third-order perturbation theory about the vacuum: the free l = 1 wave
//! generated by time-symmetric data, its cubic self-interaction and the
//! resulting `t^-5` tail.

use crate::error::{Error, Result};
use crate::radial::quadrature::{adaptive, gk15};
use crate::skyrmion::quintic_hermite;

/// Odd profile `a(u)` with `a`, `a'`, `a''` tabulated on `[0, u_max]` and
/// interpolated by quintic Hermite pieces. Zero beyond `u_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFunction {
    step: f64,
    nodes: Vec<[f64; 3]>,
}

impl GeneratingFunction {
    /// Tabulate `(a, a', a'')` given in closed form.
    pub fn from_fn(u_max: f64, step: f64, f: impl Fn(f64) -> (f64, f64, f64)) -> Result<Self> {
        if !(u_max > 0.0 && step > 0.0 && step < u_max) {
            return Err(Error::invalid(format!("need 0 < step < u_max, got {step}, {u_max}")));
        }
        let n = (u_max / step).ceil() as usize;
        let step = u_max / n as f64;
        let nodes = (0..=n)
            .map(|i| {
                let (a, b, c) = f(i as f64 * step);
                [a, b, c]
            })
            .collect::<Vec<_>>();
        if nodes[0][0] != 0.0 || nodes[0][2] != 0.0 {
            return Err(Error::invalid("a generating function is odd: a(0) = a''(0) = 0"));
        }
        if let Some(i) = nodes.iter().position(|n| n.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFinite { what: "generating function", index: i, r: i as f64 * step });
        }
        Ok(Self { step, nodes })
    }

    pub fn zero() -> Self {
        Self { step: 1.0, nodes: vec![[0.0; 3]; 2] }
    }

    pub fn u_max(&self) -> f64 {
        self.step * (self.nodes.len() - 1) as f64
    }

    /// `(a, a', a'')` at any `u`, continued oddly to `u < 0`.
    pub fn eval(&self, u: f64) -> (f64, f64, f64) {
        let x = u.abs();
        if x >= self.u_max() {
            return (0.0, 0.0, 0.0);
        }
        let pos = x / self.step;
        let i = (pos.floor() as usize).min(self.nodes.len() - 2);
        let (a, b, c) = quintic_hermite(pos - i as f64, self.step, self.nodes[i], self.nodes[i + 1]);
        if u < 0.0 {
            (-a, b, -c)
        } else {
            (a, b, c)
        }
    }

    /// `a -> lambda a`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self { step: self.step, nodes: self.nodes.iter().map(|n| n.map(|v| lambda * v)).collect() }
    }
}

/// Odd generating function of the free wave with `F(0, r) = g(r)` and
/// `dF/dt(0, r) = 0`: `a(r) = -(r/2) int_r^inf g`, so that
/// `2 (a'/r - a/r^2) = g`. The support end `u_max` is where `|g|` and the
/// remaining integral fall below `1e-16` of their peak.
pub fn invert_initial_data(g: impl Fn(f64) -> f64) -> Result<GeneratingFunction> {
    invert_initial_data_with(g, 0.005, 60.0)
}

pub fn invert_initial_data_with(g: impl Fn(f64) -> f64, step: f64, r_search: f64) -> Result<GeneratingFunction> {
    if !(step > 0.0 && r_search > 10.0 * step) {
        return Err(Error::invalid("need a positive step well below the search radius"));
    }
    let n = (r_search / step).ceil() as usize;
    let step = r_search / n as f64;
    let mut gv = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = g(i as f64 * step);
        if !v.is_finite() {
            return Err(Error::NonFinite { what: "initial data", index: i, r: i as f64 * step });
        }
        gv.push(v);
    }
    let peak = gv.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if peak == 0.0 {
        return Ok(GeneratingFunction::zero());
    }
    let tail = gv[gv.len() * 9 / 10..].iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if tail > 1e-14 * peak {
        return Err(Error::invalid(format!(
            "data do not decay: |g| = {tail:e} near r = {r_search} against a peak of {peak:e}"
        )));
    }
    let last = gv.iter().rposition(|v| v.abs() > 1e-16 * peak).unwrap_or(0);
    let m = (last + 1).min(n);
    let u_max = m as f64 * step;

    // int_r^inf g, accumulated inward cell by cell
    let mut g_mut = &g;
    let mut tail_int = vec![0.0; m + 1];
    for i in (0..m).rev() {
        let (v, _) = gk15(&mut g_mut, i as f64 * step, (i + 1) as f64 * step);
        tail_int[i] = tail_int[i + 1] + v;
    }
    let dg = |r: f64| {
        let e = 1e-4 * r.abs().max(1.0);
        (g(r - 2.0 * e) - 8.0 * g(r - e) + 8.0 * g(r + e) - g(r + 2.0 * e)) / (12.0 * e)
    };
    let nodes = (0..=m)
        .map(|i| {
            let r = i as f64 * step;
            let big_i = tail_int[i];
            let gr = gv[i];
            [-0.5 * r * big_i, -0.5 * big_i + 0.5 * r * gr, gr + 0.5 * r * dg(r)]
        })
        .collect::<Vec<_>>();
    let mut nodes = nodes;
    nodes[0] = [0.0, nodes[0][1], 0.0];
    let out = GeneratingFunction { step, nodes };
    debug_assert!((out.u_max() - u_max).abs() < 1e-9);
    Ok(out)
}

/// Free l = 1 wave `F1 = [a'(t-r) + a'(t+r)]/r + [a(t-r) - a(t+r)]/r^2`,
/// with `(dF1/dt, dF1/dr)`. Below `r = 1e-3` the leading terms of the small-r
/// series `(2/3) r a''' + ...` are used.
pub fn free_wave(a: &GeneratingFunction, t: f64, r: f64) -> (f64, f64, f64) {
    let r = r.abs();
    if r < 1e-3 {
        // a''' by a central difference of a''
        let e = 1e-3;
        let d3 = (a.eval(t + e).2 - a.eval(t - e).2) / (2.0 * e);
        let d4 = (a.eval(t + e).2 - 2.0 * a.eval(t).2 + a.eval(t - e).2) / (e * e);
        return (2.0 / 3.0 * r * d3, 2.0 / 3.0 * r * d4, 2.0 / 3.0 * d3);
    }
    let (au, du, ddu) = a.eval(t - r);
    let (av, dv, ddv) = a.eval(t + r);
    let (r2, r3) = (r * r, r * r * r);
    let f = (du + dv) / r + (au - av) / r2;
    let ft = (ddu + ddv) / r + (du - dv) / r2;
    let fr = (ddv - ddu) / r - 2.0 * (du + dv) / r2 - 2.0 * (au - av) / r3;
    (f, ft, fr)
}

/// `F1(t, r)`; zero at the origin.
pub fn free_wave_eval(a: &GeneratingFunction, t: f64, r: f64) -> f64 {
    free_wave(a, t, r).0
}

/// `F1^3` at the point with null coordinates `u = t - r`, `v = t + r`.
pub fn third_order_source(a: &GeneratingFunction, u: f64, v: f64) -> Result<f64> {
    if v < u {
        return Err(Error::invalid(format!("null coordinates need u <= v, got u = {u}, v = {v}")));
    }
    Ok(free_wave_eval(a, 0.5 * (u + v), 0.5 * (v - u)).powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvolveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Add the derivative-coupling source `h`, which is of lower order at
    /// late times.
    pub include_h: bool,
}

impl Default for ConvolveOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-22, max_panels: 400, include_h: false }
    }
}

/// Source of the third-order equation at `(t', r')`:
/// `(4/(3 r'^2)) F1^3`, optionally plus
/// `h = (2/r'^4) (F^3 - 2 r' F^2 F_r + r'^2 F (F_r^2 - F_t^2))`.
fn source(a: &GeneratingFunction, t: f64, r: f64, include_h: bool) -> f64 {
    let (f, ft, fr) = free_wave(a, t, r);
    let r2 = r * r;
    let main = 4.0 / (3.0 * r2) * f * f * f;
    if !include_h || r < 0.1 {
        return main;
    }
    main + 2.0 / (r2 * r2) * (f * f * f - 2.0 * r * f * f * fr + r2 * f * (fr * fr - ft * ft))
}

/// Retarded solution of the third-order equation at `(t, r)`:
/// `F3 = (2/(3 r^2)) int_{|t-r|}^{t+r} dv int_{-v}^{t-r} du
///       [(v-t)(t-u) + r^2] / (v-u)^2 F1(u,v)^3`,
/// by nested adaptive Gauss-Kronrod quadrature restricted to the support
/// of the free wave.
pub fn green_convolve(a: &GeneratingFunction, t: f64, r: f64, opts: &ConvolveOptions) -> Result<f64> {
    if !(t > 0.0 && r > 0.0) {
        return Err(Error::invalid(format!("need t > 0 and r > 0, got t = {t}, r = {r}")));
    }
    let um = a.u_max();
    let kernel = |u: f64, v: f64| {
        let rp = 0.5 * (v - u);
        if rp <= 0.0 {
            return 0.0;
        }
        let num = (v - t) * (t - u) + r * r;
        num * source(a, 0.5 * (u + v), rp, opts.include_h)
    };
    let mut inner_err = 0.0_f64;
    let mut failure = None;
    let outer = |v: f64| -> f64 {
        // u in [-v, t - r]; the wave vanishes unless u or v lies in [-um, um]
        let (lo, hi) = (-v, t - r);
        if hi <= lo {
            return 0.0;
        }
        let (lo, hi) = if v.abs() < um { (lo, hi) } else { (lo.max(-um), hi.min(um)) };
        if hi <= lo {
            return 0.0;
        }
        let mut cuts = vec![lo];
        for c in [-um, 0.0, um] {
            if c > lo && c < hi {
                cuts.push(c);
            }
        }
        cuts.push(hi);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            match adaptive(|u| kernel(u, v), w[0], w[1], opts.abs_tol * 1e-3, opts.rel_tol * 1e-2, opts.max_panels) {
                Ok(q) => {
                    total += q.value;
                    inner_err = inner_err.max(q.error);
                }
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        }
        total
    };
    let (v_lo, v_hi) = ((t - r).abs(), t + r);
    let mut cuts = vec![v_lo];
    for c in [um, t - r + 2.0 * um] {
        if c > v_lo && c < v_hi {
            cuts.push(c);
        }
    }
    cuts.push(v_hi);
    cuts.sort_by(f64::total_cmp);
    let mut outer = outer;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let q = adaptive(&mut outer, w[0], w[1], opts.abs_tol, opts.rel_tol, opts.max_panels).map_err(|e| {
            Error::NoConvergence(format!("outer quadrature for F3({t}, {r}): {e}"))
        })?;
        total += q.value;
        err += q.error;
    }
    if let Some(e) = failure {
        return Err(Error::NoConvergence(format!("inner quadrature for F3({t}, {r}): {e}")));
    }
    let _ = err;
    Ok(total / (8.0 * r * r))
}

/// `F3 ~ c r t^-5` at late times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPrediction {
    pub c: f64,
}

impl TailPrediction {
    pub fn at(&self, t: f64, r: f64) -> f64 {
        self.c * r * t.powi(-5)
    }
}

/// `c = -(64/9) int a'(u)^3 du` over the whole line.
pub fn asymptotic_coefficient(a: &GeneratingFunction) -> TailPrediction {
    let h = a.step;
    let mut cube = |u: f64| a.eval(u).1.powi(3);
    let half: f64 = (0..a.nodes.len() - 1).map(|i| gk15(&mut cube, i as f64 * h, (i + 1) as f64 * h).0).sum();
    TailPrediction { c: -64.0 / 9.0 * 2.0 * half }
}
