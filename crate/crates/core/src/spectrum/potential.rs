use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::radial::{interpolate_values, Parity, RadialGrid, ScalarField};
use crate::skyrmion::StaticProfile;

/// Default radius beyond which the far-field form of the potential is used.
pub const DEFAULT_R_SWITCH: f64 = 25.0;

/// `V(a) = -4 a^2 (1 + 3a^2 + 3a^4) / (1 + 2a^2)^2`.
#[inline]
pub fn potential_of(a: f64) -> f64 {
    let a2 = a * a;
    let d = 1.0 + 2.0 * a2;
    -4.0 * a2 * (1.0 + 3.0 * a2 + 3.0 * a2 * a2) / (d * d)
}

/// Effective potential of linear perturbations around the soliton.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    field: ScalarField,
    r_switch: f64,
    c: f64,
    /// Leading far-field coefficient, `V ~ -v6 / r^6`.
    pub v6: f64,
}

impl PotentialTable {
    /// Potential that vanishes identically (free l = 1 problem).
    pub fn free(r_switch: f64, step: f64) -> Result<Self> {
        let grid = RadialGrid::covering(step, r_switch)?;
        Ok(Self { field: ScalarField::zeros(grid, Parity::Even), r_switch: grid.r_max(), c: 0.0, v6: 0.0 })
    }

    /// Tabulate an arbitrary potential up to `r_switch`, with the
    /// soliton-type far field `pi - c/r^2` supplying the tail.
    pub fn from_fn(r_switch: f64, step: f64, c: f64, v: impl Fn(f64) -> f64) -> Result<Self> {
        let grid = RadialGrid::covering(step, r_switch)?;
        let field = ScalarField::from_fn(grid, Parity::Even, v)?;
        Ok(Self { r_switch: grid.r_max(), field, c, v6: 4.0 * c * c })
    }

    pub fn r_switch(&self) -> f64 {
        self.r_switch
    }

    pub fn table(&self) -> &ScalarField {
        &self.field
    }

    /// Far-field coefficient of the underlying profile.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Coefficient of the `r^-10` correction, `V ~ -v6/r^6 + v10/r^10`.
    pub fn v10(&self) -> f64 {
        12.0 / 7.0 * self.c.powi(4)
    }

    /// Far-field potential from `S = pi - c/r^2 + c^3/(21 r^6)`.
    pub fn asymptotic(&self, r: f64) -> f64 {
        if self.c == 0.0 {
            return 0.0;
        }
        let r2 = r * r;
        let delta = self.c / r2 - self.c.powi(3) / (21.0 * r2 * r2 * r2);
        potential_of(delta.sin() / r)
    }

    pub fn value(&self, r: f64) -> f64 {
        let r = r.abs();
        if r <= self.r_switch {
            interpolate_values(self.field.grid(), self.field.values(), Parity::Even, r)
                .unwrap_or_else(|_| self.asymptotic(r))
        } else {
            self.asymptotic(r)
        }
    }

    /// Relative jump between the table and the far-field form at `r_switch`.
    pub fn switch_mismatch(&self) -> f64 {
        let tab = *self.field.values().last().unwrap();
        let asym = self.asymptotic(self.r_switch);
        if asym == 0.0 {
            tab.abs()
        } else {
            ((tab - asym) / asym).abs()
        }
    }
}

/// Potential around a converged soliton, with the default switch radius.
pub fn effective_potential(profile: &StaticProfile) -> Result<PotentialTable> {
    effective_potential_with(profile, DEFAULT_R_SWITCH, profile.table_step())
}

pub fn effective_potential_with(
    profile: &StaticProfile,
    r_switch: f64,
    step: f64,
) -> Result<PotentialTable> {
    let converged = profile.b > 0.0
        && profile.c.is_finite()
        && profile.c > 0.0
        && (PI - profile.value(profile.table_end())).abs() < 1e-2;
    if !converged {
        return Err(Error::invalid("effective potential needs a converged degree-one profile"));
    }
    if r_switch > profile.table_end() {
        return Err(Error::invalid(format!(
            "switch radius {r_switch} beyond the tabulated profile ({})",
            profile.table_end()
        )));
    }
    let b = profile.b;
    PotentialTable::from_fn(r_switch, step, profile.c, |r| {
        let a = if r == 0.0 { b } else { profile.value(r).sin() / r };
        potential_of(a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_profile_has_no_potential() {
        assert_eq!(potential_of(0.0), 0.0);
        let p = PotentialTable::free(25.0, 0.01).unwrap();
        assert_eq!(p.value(3.0), 0.0);
        assert_eq!(p.value(40.0), 0.0);
    }

    #[test]
    fn origin_value_for_quoted_slope() {
        // direct evaluation at a = 2.0075
        let v = potential_of(2.0075);
        assert!((v + 12.14).abs() < 0.01, "{v}");
    }
}
