//! Classical four-stage Runge-Kutta stepping over any stacked state.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// A state vector the integrator can combine linearly.
pub trait StateVector: Clone {
    /// `self += a * x`
    fn axpy(&mut self, a: f64, x: &Self);
    /// Index of the first non-finite component, if any.
    fn first_non_finite(&self) -> Option<usize>;
}

impl StateVector for Vec<f64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (y, x) in self.iter_mut().zip(x) {
            *y += a * x;
        }
    }

    fn first_non_finite(&self) -> Option<usize> {
        self.iter().position(|v| !v.is_finite())
    }
}

impl<const N: usize> StateVector for [f64; N] {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (y, x) in self.iter_mut().zip(x) {
            *y += a * x;
        }
    }

    fn first_non_finite(&self) -> Option<usize> {
        self.iter().position(|v| !v.is_finite())
    }
}

impl<const N: usize> StateVector for [Complex64; N] {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (y, x) in self.iter_mut().zip(x) {
            *y += x * a;
        }
    }

    fn first_non_finite(&self) -> Option<usize> {
        self.iter().position(|v| !(v.re.is_finite() && v.im.is_finite()))
    }
}

/// Reusable RK4 stepper; the stage buffers are allocated once.
#[derive(Debug, Clone)]
pub struct Rk4<S> {
    k: [S; 4],
    stage: S,
}

impl<S: StateVector> Rk4<S> {
    pub fn new(template: &S) -> Self {
        Self {
            k: [template.clone(), template.clone(), template.clone(), template.clone()],
            stage: template.clone(),
        }
    }

    /// Advance `y` from `t` to `t + dt`. `rhs(t, y, dydt)` writes the time
    /// derivative. A non-finite derivative rejects the step and leaves `y`
    /// untouched.
    pub fn step<F>(&mut self, t: f64, y: &mut S, dt: f64, mut rhs: F) -> Result<()>
    where
        F: FnMut(f64, &S, &mut S) -> Result<()>,
    {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(Error::invalid(format!("time step must be finite and non-zero, got {dt}")));
        }
        let half = 0.5 * dt;
        rhs(t, y, &mut self.k[0])?;
        check(&self.k[0], t, 1)?;

        self.stage.clone_from(y);
        self.stage.axpy(half, &self.k[0]);
        rhs(t + half, &self.stage, &mut self.k[1])?;
        check(&self.k[1], t + half, 2)?;

        self.stage.clone_from(y);
        self.stage.axpy(half, &self.k[1]);
        rhs(t + half, &self.stage, &mut self.k[2])?;
        check(&self.k[2], t + half, 3)?;

        self.stage.clone_from(y);
        self.stage.axpy(dt, &self.k[2]);
        rhs(t + dt, &self.stage, &mut self.k[3])?;
        check(&self.k[3], t + dt, 4)?;

        let sixth = dt / 6.0;
        y.axpy(sixth, &self.k[0]);
        y.axpy(2.0 * sixth, &self.k[1]);
        y.axpy(2.0 * sixth, &self.k[2]);
        y.axpy(sixth, &self.k[3]);
        Ok(())
    }
}

fn check<S: StateVector>(k: &S, t: f64, _stage: usize) -> Result<()> {
    match k.first_non_finite() {
        Some(index) => Err(Error::NonFinite { what: "time derivative", index, r: t }),
        None => Ok(()),
    }
}

/// One explicit RK4 step, allocating its own stage buffers.
pub fn time_step<S, F>(state: &S, t: f64, dt: f64, rhs: F) -> Result<S>
where
    S: StateVector,
    F: FnMut(f64, &S, &mut S) -> Result<()>,
{
    if !(dt > 0.0) {
        return Err(Error::invalid(format!("time step must be positive, got {dt}")));
    }
    let mut y = state.clone();
    Rk4::new(state).step(t, &mut y, dt, rhs)?;
    Ok(y)
}
