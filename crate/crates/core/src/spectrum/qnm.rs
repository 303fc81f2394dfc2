//! Quasinormal modes of `-psi'' + (2/r^2 + V) psi = k^2 psi` by two-sided
//! matching of logarithmic derivatives.
//!
//! The left solution is launched regular at the origin (`psi ~ r^2`). The
//! right solution is the outgoing one, obtained by integrating the Riccati
//! equation `g' + g^2 - 2/r^2 - V + k^2 = 0` for `g = psi'/psi` inward from a
//! large radius. A mode is a frequency `k = Omega - i Gamma` at which the two
//! log-derivatives agree.

use num_complex::Complex64;

use super::potential::PotentialTable;
use crate::error::{Error, Result};
use crate::radial::Rk4;

/// Outgoing-wave seed for the inward Riccati integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutgoingSeed {
    /// Log-derivative of the free Riccati-Hankel function `(-i + 1/z) e^{iz}`.
    FreeHankel,
    /// Asymptotic outgoing series including the `r^-6` and `r^-10` terms of the potential.
    Asymptotic,
}

/// Settings shared by the integrations and the root finder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QnmConfig {
    /// Matching radius.
    pub r0: f64,
    /// Outer seed radius.
    pub big_r: f64,
    /// Integration step.
    pub step: f64,
    pub seed: OutgoingSeed,
    pub max_iterations: usize,
    /// Lower bound kept on `Gamma` during the root search.
    pub gamma_floor: f64,
}

impl Default for QnmConfig {
    fn default() -> Self {
        Self {
            r0: 8.0,
            big_r: 40.0,
            step: 2e-3,
            seed: OutgoingSeed::Asymptotic,
            max_iterations: 60,
            gamma_floor: 1e-4,
        }
    }
}

/// Complex wavenumber `Omega - i Gamma`.
#[inline]
pub fn wavenumber(omega: f64, gamma: f64) -> Complex64 {
    Complex64::new(omega, -gamma)
}

/// A converged quasinormal mode with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasinormalMode {
    pub omega: f64,
    pub gamma: f64,
    /// `|g_left - g_right|` at the returned frequency.
    pub residual: f64,
    pub r0: f64,
    pub big_r: f64,
    pub iterations: usize,
}

impl QuasinormalMode {
    pub fn k(&self) -> Complex64 {
        wavenumber(self.omega, self.gamma)
    }
}

fn launch_radius(step: f64) -> f64 {
    (5.0 * step).max(1e-3)
}

/// Regular solution's log-derivative at `r0`, integrating the complex
/// linear equation from the origin.
pub fn integrate_from_origin(
    potential: &PotentialTable,
    omega: f64,
    gamma: f64,
    r0: f64,
    step: f64,
) -> Result<Complex64> {
    check_r0(potential, r0, step)?;
    let k2 = wavenumber(omega, gamma).powi(2);
    let r_start = launch_radius(step);
    let alpha = (potential.value(0.0) - k2) / 10.0;
    let mut y = [
        Complex64::from(r_start * r_start) * (1.0 + alpha * r_start * r_start),
        Complex64::from(2.0 * r_start) * (1.0 + 2.0 * alpha * r_start * r_start),
    ];
    let rhs = |r: f64, y: &[Complex64; 2], d: &mut [Complex64; 2]| -> Result<()> {
        d[0] = y[1];
        d[1] = (2.0 / (r * r) + potential.value(r) - k2) * y[0];
        Ok(())
    };
    march(&mut y, r_start, r0, step, rhs)?;
    if y[0].norm() == 0.0 {
        return Err(Error::Singular { what: "regular solution", r: r0 });
    }
    Ok(y[1] / y[0])
}

/// Same log-derivative from the amplitude-phase pair
/// `-A'' + A phi'^2 + (2/r^2 + V + Gamma^2 - Omega^2) A = 0`,
/// `A phi'' + 2 A' phi' - 2 Omega Gamma A = 0`,
/// launched with `A ~ r^2`, `phi ~ (Omega Gamma / 5) r^2`.
pub fn integrate_from_origin_amplitude_phase(
    potential: &PotentialTable,
    omega: f64,
    gamma: f64,
    r0: f64,
    step: f64,
) -> Result<Complex64> {
    check_r0(potential, r0, step)?;
    let og = omega * gamma;
    let shift = gamma * gamma - omega * omega;
    let r_start = launch_radius(step);
    let a_re = (potential.value(0.0) + shift) / 10.0;
    let rs2 = r_start * r_start;
    // y = [A, A', phi']; phi itself never enters the log-derivative
    let mut y = [
        rs2 * (1.0 + a_re * rs2),
        2.0 * r_start * (1.0 + 2.0 * a_re * rs2),
        2.0 * og / 5.0 * r_start,
    ];
    let rhs = |r: f64, y: &[f64; 3], d: &mut [f64; 3]| -> Result<()> {
        d[0] = y[1];
        d[1] = y[0] * y[2] * y[2] + (2.0 / (r * r) + potential.value(r) + shift) * y[0];
        d[2] = (2.0 * og * y[0] - 2.0 * y[1] * y[2]) / y[0];
        Ok(())
    };
    let mut rk = Rk4::new(&y);
    let n = ((r0 - r_start) / step).ceil() as usize;
    let dr = (r0 - r_start) / n as f64;
    for i in 0..n {
        let r = r_start + i as f64 * dr;
        rk.step(r, &mut y, dr, rhs)?;
        if y[0] <= 0.0 {
            return Err(Error::Singular { what: "amplitude (node)", r: r + dr });
        }
    }
    Ok(Complex64::new(y[1] / y[0], y[2]))
}

fn check_r0(potential: &PotentialTable, r0: f64, step: f64) -> Result<()> {
    if !(r0 > 10.0 * launch_radius(step) && r0 < potential.r_switch()) {
        return Err(Error::invalid(format!(
            "matching radius {r0} must lie inside (0, {})",
            potential.r_switch()
        )));
    }
    if !(step > 0.0) {
        return Err(Error::invalid("integration step must be positive"));
    }
    Ok(())
}

fn march<F>(y: &mut [Complex64; 2], from: f64, to: f64, step: f64, rhs: F) -> Result<()>
where
    F: Fn(f64, &[Complex64; 2], &mut [Complex64; 2]) -> Result<()>,
{
    let n = ((to - from).abs() / step).ceil().max(1.0) as usize;
    let dr = (to - from) / n as f64;
    let mut rk = Rk4::new(y);
    for i in 0..n {
        rk.step(from + i as f64 * dr, y, dr, &rhs)?;
    }
    Ok(())
}

/// `k h1'(kR) / h1(kR)` for the free outgoing solution `h1(z) = (-i + 1/z) e^{iz}`.
pub fn hankel_log_derivative(k: Complex64, r: f64) -> Complex64 {
    let z = k * r;
    let i = Complex64::i();
    let h = -i + 1.0 / z;
    let dh = i * h - 1.0 / (z * z);
    k * dh / h
}

/// Log-derivative of the outgoing solution of
/// `psi'' = (2/r^2 - v6/r^6 + v10/r^10 - k^2) psi` from its asymptotic
/// series `e^{ikr} sum a_n r^-n`, truncated at the smallest term.
pub fn asymptotic_log_derivative(k: Complex64, r: f64, v6: f64, v10: f64) -> Complex64 {
    OutgoingSeries::new(k, v6, v10).log_derivative(r)
}

/// Coefficients of the outgoing asymptotic series for a fixed `k`.
#[derive(Debug, Clone)]
struct OutgoingSeries {
    k: Complex64,
    a: Vec<Complex64>,
}

impl OutgoingSeries {
    const TERMS: usize = 200;

    fn new(k: Complex64, v6: f64, v10: f64) -> Self {
        let two_ik = 2.0 * Complex64::i() * k;
        let mut a = vec![Complex64::new(1.0, 0.0)];
        for m in 0..Self::TERMS {
            let mut num = a[m] * ((m * (m + 1)) as f64 - 2.0);
            if m >= 4 {
                num += a[m - 4] * v6;
            }
            if m >= 8 {
                num -= a[m - 8] * v10;
            }
            a.push(num / (two_ik * (m + 1) as f64));
        }
        Self { k, a }
    }

    fn log_derivative(&self, r: f64) -> Complex64 {
        let mut f = Complex64::new(1.0, 0.0);
        let mut fp = Complex64::new(0.0, 0.0);
        let mut last = f64::INFINITY;
        let inv = 1.0 / r;
        let mut pow = 1.0;
        for (m, &c) in self.a.iter().enumerate().skip(1) {
            pow *= inv;
            let term = c * pow;
            let size = term.norm();
            if size > last && m > 11 {
                break;
            }
            f += term;
            fp -= term * (m as f64 * inv);
            last = size;
            if size < 1e-18 * f.norm() && m > 11 {
                break;
            }
        }
        Complex64::i() * self.k + fp / f
    }
}

/// Outgoing log-derivative at `r0` by inward Riccati integration from `big_r`.
///
/// Beyond the switch radius the flow is written for the departure
/// `d = g - g_ref` from the seed's own outgoing solution `g_ref`, which obeys
/// `d' = -2 g_ref d - d^2 + V(r) - V_ref(r)`. Rounding then scales with `d`
/// rather than with `g`, which keeps long seed radii usable.
pub fn integrate_riccati_backward(
    potential: &PotentialTable,
    omega: f64,
    gamma: f64,
    big_r: f64,
    r0: f64,
    step: f64,
    seed: OutgoingSeed,
) -> Result<Complex64> {
    let r_switch = potential.r_switch();
    if !(big_r > r_switch && r_switch > r0 && r0 > 0.0) {
        return Err(Error::invalid(format!(
            "need R > r_switch > r0 > 0, got R = {big_r}, r_switch = {r_switch}, r0 = {r0}"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::invalid("step must be positive"));
    }
    let k = wavenumber(omega, gamma);
    let k2 = k * k;
    let (v6, v10) = match seed {
        OutgoingSeed::FreeHankel => (0.0, 0.0),
        OutgoingSeed::Asymptotic => (potential.v6, potential.v10()),
    };
    let series = OutgoingSeries::new(k, v6, v10);
    let reference = |r: f64| match seed {
        OutgoingSeed::FreeHankel => hankel_log_derivative(k, r),
        OutgoingSeed::Asymptotic => series.log_derivative(r),
    };
    let v_ref = |r: f64| {
        let r2 = r * r;
        let r6 = r2 * r2 * r2;
        -v6 / r6 + v10 / (r6 * r2 * r2)
    };

    // departure from the reference solution over the analytic tail
    let mut y = [Complex64::new(0.0, 0.0)];
    let mut rk = Rk4::new(&y);
    let n = ((big_r - r_switch) / step).ceil() as usize;
    let dr = -(big_r - r_switch) / n as f64;
    let tail = |r: f64, y: &[Complex64; 1], d: &mut [Complex64; 1]| -> Result<()> {
        let g = reference(r);
        d[0] = -(2.0 * g + y[0]) * y[0] + (potential.asymptotic(r) - v_ref(r));
        Ok(())
    };
    for i in 0..n {
        let r = big_r + i as f64 * dr;
        rk.step(r, &mut y, dr, tail).map_err(|_| Error::Singular { what: "Riccati flow", r })?;
        if y[0].norm() > 1e8 {
            return Err(Error::Singular { what: "Riccati flow (pole of psi)", r: r + dr });
        }
    }

    let mut y = [reference(r_switch) + y[0]];
    let n = ((r_switch - r0) / step).ceil() as usize;
    let dr = -(r_switch - r0) / n as f64;
    let inner = |r: f64, y: &[Complex64; 1], d: &mut [Complex64; 1]| -> Result<()> {
        d[0] = -y[0] * y[0] + 2.0 / (r * r) + potential.value(r) - k2;
        Ok(())
    };
    for i in 0..n {
        let r = r_switch + i as f64 * dr;
        rk.step(r, &mut y, dr, inner).map_err(|_| Error::Singular { what: "Riccati flow", r })?;
        if y[0].norm() > 1e8 {
            return Err(Error::Singular { what: "Riccati flow (pole of psi)", r: r + dr });
        }
    }
    Ok(y[0])
}

/// `g_left(r0) - g_right(r0)`.
pub fn matching_residual(
    potential: &PotentialTable,
    omega: f64,
    gamma: f64,
    cfg: &QnmConfig,
) -> Result<Complex64> {
    let left = integrate_from_origin(potential, omega, gamma, cfg.r0, cfg.step)?;
    let right =
        integrate_riccati_backward(potential, omega, gamma, cfg.big_r, cfg.r0, cfg.step, cfg.seed)?;
    Ok(left - right)
}

/// Newton iteration on the matching residual, which is analytic in
/// `k = Omega - i Gamma`; its derivative is taken by a central difference
/// along `Omega`.
///
/// The residual carries a small rounding floor from the inward flow. The
/// iteration stops when the step falls below `tolerance`, or when the
/// residual has stopped improving for a few iterations below `NOISE_FLOOR`.
pub fn find_qnm(
    potential: &PotentialTable,
    guess: (f64, f64),
    tolerance: f64,
    cfg: &QnmConfig,
) -> Result<QuasinormalMode> {
    if !(tolerance > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    const EPS: f64 = 1e-5;
    const NOISE_FLOOR: f64 = 1e-6;
    const MAX_STEP: f64 = 0.1;
    let residual = |om: f64, ga: f64| matching_residual(potential, om, ga, cfg);
    let (mut omega, mut gamma) = (guess.0, guess.1.max(cfg.gamma_floor));
    let mut f = residual(omega, gamma)?;
    let mut best = (omega, gamma, f.norm());
    let mut stale = 0;
    let mut trace = Vec::new();
    for it in 1..=cfg.max_iterations {
        let slope = (residual(omega + EPS, gamma)? - residual(omega - EPS, gamma)?) / (2.0 * EPS);
        if !(slope.norm() > 0.0 && slope.norm().is_finite()) {
            return Err(Error::NoConvergence(format!("flat residual at ({omega}, {gamma})")));
        }
        // dk = -f / f'(k), with k = Omega - i Gamma
        let mut dk = -f / slope;
        if dk.norm() > MAX_STEP {
            dk *= MAX_STEP / dk.norm();
        }
        omega += dk.re;
        gamma = (gamma - dk.im).max(cfg.gamma_floor);
        f = residual(omega, gamma)?;
        trace.push((omega, gamma, f.norm()));
        let mode = |omega, gamma, residual| QuasinormalMode {
            omega,
            gamma,
            residual,
            r0: cfg.r0,
            big_r: cfg.big_r,
            iterations: it,
        };
        if dk.norm() < tolerance {
            return Ok(mode(omega, gamma, f.norm()));
        }
        if f.norm() < best.2 {
            best = (omega, gamma, f.norm());
            stale = 0;
        } else {
            stale += 1;
        }
        if stale >= 3 && best.2 < NOISE_FLOOR {
            return Ok(mode(best.0, best.1, best.2));
        }
    }
    Err(Error::NoConvergence(format!("quasinormal-mode search did not settle; iterates {trace:?}")))
}

/// Late-time decay exponent `2l + beta` of linear waves in a potential
/// falling off as `r^-beta`.
pub fn predicted_linear_exponent(l: u32, beta: f64) -> Result<f64> {
    if !(beta > 3.0) {
        return Err(Error::invalid(format!("decay law holds for beta > 3, got {beta}")));
    }
    Ok(2.0 * l as f64 + beta)
}

/// Number of sign changes of the zero-energy regular solution on
/// `(0, r_end]`. Zero nodes means no bound states.
pub fn zero_energy_nodes(potential: &PotentialTable, r_end: f64, step: f64) -> Result<usize> {
    let r_start = launch_radius(step);
    let alpha = potential.value(0.0) / 10.0;
    let mut y = [r_start * r_start * (1.0 + alpha * r_start * r_start), 2.0 * r_start];
    let mut rk = Rk4::new(&y);
    let n = ((r_end - r_start) / step).ceil() as usize;
    let dr = (r_end - r_start) / n as f64;
    let mut nodes = 0;
    for i in 0..n {
        let r = r_start + i as f64 * dr;
        let before = y[0];
        rk.step(r, &mut y, dr, |r, y: &[f64; 2], d: &mut [f64; 2]| {
            d[0] = y[1];
            d[1] = (2.0 / (r * r) + potential.value(r)) * y[0];
            Ok(())
        })?;
        if before.signum() != y[0].signum() {
            nodes += 1;
        }
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free() -> PotentialTable {
        PotentialTable::free(25.0, 0.01).unwrap()
    }

    #[test]
    fn free_regular_solution_matches_bessel_form() {
        // regular l = 1 solution r j_1(r) = sin r / r - cos r
        let p = free();
        let r0 = 8.0;
        let g = integrate_from_origin(&p, 1.0, 0.0, r0, 1e-3).unwrap();
        let u = r0.sin() / r0 - r0.cos();
        let du = r0.cos() / r0 - r0.sin() / (r0 * r0) + r0.sin();
        assert!((g.re - du / u).abs() < 1e-8, "{} vs {}", g.re, du / u);
        assert!(g.im.abs() < 1e-14);
    }

    #[test]
    fn amplitude_phase_agrees_with_complex_form() {
        let p = PotentialTable::from_fn(25.0, 0.01, 2.0, |r| -3.0 * (-r * r).exp()).unwrap();
        let a = integrate_from_origin(&p, 0.6, 0.3, 6.0, 1e-3).unwrap();
        let b = integrate_from_origin_amplitude_phase(&p, 0.6, 0.3, 6.0, 1e-3).unwrap();
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn free_riccati_keeps_hankel_form() {
        let p = free();
        let k = wavenumber(0.61, 0.26);
        for seed in [OutgoingSeed::FreeHankel, OutgoingSeed::Asymptotic] {
            let g = integrate_riccati_backward(&p, 0.61, 0.26, 40.0, 8.0, 1e-3, seed).unwrap();
            let e = hankel_log_derivative(k, 8.0);
            assert!((g - e).norm() < 1e-9, "{g} vs {e}");
        }
    }

    #[test]
    fn real_k_free_riccati_matches_hankel() {
        let p = free();
        let g = integrate_riccati_backward(&p, 0.8, 0.0, 30.0, 5.0, 1e-3, OutgoingSeed::FreeHankel).unwrap();
        let e = hankel_log_derivative(Complex64::new(0.8, 0.0), 5.0);
        assert!((g.im - e.im).abs() < 1e-10);
    }

    #[test]
    fn conjugating_k_conjugates_g() {
        let p = PotentialTable::from_fn(25.0, 0.01, 2.0, |r| -3.0 * (-r * r).exp()).unwrap();
        let g = integrate_riccati_backward(&p, 0.6, 0.25, 30.0, 8.0, 2e-3, OutgoingSeed::Asymptotic).unwrap();
        // conj(psi) solves the problem at conj(k^2) = (-conj k)^2 and stays
        // outgoing for the mirrored wavenumber -Omega - i Gamma
        let h = integrate_riccati_backward(&p, -0.6, 0.25, 30.0, 8.0, 2e-3, OutgoingSeed::Asymptotic).unwrap();
        assert!((g.conj() - h).norm() < 1e-9 * g.norm());
    }

    #[test]
    fn ordering_is_enforced() {
        let p = free();
        assert!(integrate_riccati_backward(&p, 0.6, 0.3, 20.0, 8.0, 1e-3, OutgoingSeed::FreeHankel).is_err());
        assert!(integrate_from_origin(&p, 0.6, 0.3, 30.0, 1e-3).is_err());
    }

    #[test]
    fn linear_exponent_formula() {
        assert_eq!(predicted_linear_exponent(1, 6.0).unwrap(), 8.0);
        assert_eq!(predicted_linear_exponent(0, 4.0).unwrap(), 4.0);
        assert_eq!(predicted_linear_exponent(2, 5.0).unwrap(), 9.0);
        assert!(predicted_linear_exponent(1, 3.0).is_err());
    }

    #[test]
    fn asymptotic_seed_reduces_to_hankel_without_potential() {
        let k = wavenumber(0.61, 0.26);
        let a = asymptotic_log_derivative(k, 12.0, 0.0, 0.0);
        let h = hankel_log_derivative(k, 12.0);
        assert!((a - h).norm() < 1e-14);
    }
}
