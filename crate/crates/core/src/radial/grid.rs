use crate::error::{Error, Result};

/// Where the first grid point sits relative to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginPlacement {
    /// `r_i = i h`, so `r = 0` is a grid point.
    Vertex,
    /// `r_i = (i + 1/2) h`, the origin sits half a cell below the first point.
    Staggered,
}

/// Continuation of a radial field through `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// `f(-r) = -f(r)`
    Odd,
    /// `f(-r) = f(r)`
    Even,
}

impl Parity {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Parity::Odd => -1.0,
            Parity::Even => 1.0,
        }
    }

    /// Parity of the derivative of a field with this parity.
    #[inline]
    pub fn derivative(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }
}

pub const MIN_POINTS: usize = 16;

/// Uniform radial discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    h: f64,
    n: usize,
    origin: OriginPlacement,
}

impl RadialGrid {
    pub fn new(h: f64, n: usize, origin: OriginPlacement) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!("grid spacing must be positive, got {h}")));
        }
        if n < MIN_POINTS {
            return Err(Error::invalid(format!("grid needs at least {MIN_POINTS} points, got {n}")));
        }
        Ok(Self { h, n, origin })
    }

    /// Vertex-centred grid with spacing `h` reaching at least `r_max`.
    pub fn covering(h: f64, r_max: f64) -> Result<Self> {
        if !(r_max > 0.0) {
            return Err(Error::invalid(format!("outer radius must be positive, got {r_max}")));
        }
        let n = (r_max / h - 1e-9).ceil() as usize + 1;
        Self::new(h, n.max(MIN_POINTS), OriginPlacement::Vertex)
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn origin(&self) -> OriginPlacement {
        self.origin
    }

    #[inline]
    fn offset(&self) -> f64 {
        match self.origin {
            OriginPlacement::Vertex => 0.0,
            OriginPlacement::Staggered => 0.5,
        }
    }

    #[inline]
    pub fn r(&self, i: usize) -> f64 {
        (i as f64 + self.offset()) * self.h
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.r(i))
    }

    /// Fractional index of radius `r`.
    #[inline]
    pub fn fractional_index(&self, r: f64) -> f64 {
        r / self.h - self.offset()
    }

    /// Grid index holding the mirror image of ghost index `-k` (k >= 1).
    #[inline]
    pub fn mirror(&self, k: usize) -> usize {
        match self.origin {
            OriginPlacement::Vertex => k,
            OriginPlacement::Staggered => k - 1,
        }
    }

    /// Value at (possibly negative) index `i`, filling ghosts by parity.
    #[inline]
    pub fn fetch(&self, values: &[f64], i: isize, parity: Parity) -> f64 {
        if i >= 0 {
            values[i as usize]
        } else {
            parity.sign() * values[self.mirror((-i) as usize)]
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= 0.0 && r <= self.r_max() * (1.0 + 1e-14)
    }
}

/// Values of a radial quantity on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: RadialGrid,
    values: Vec<f64>,
    parity: Parity,
}

impl ScalarField {
    pub fn new(grid: RadialGrid, values: Vec<f64>, parity: Parity) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} values but grid has {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "scalar field", index, r: grid.r(index) });
        }
        Ok(Self { grid, values, parity })
    }

    pub fn from_fn(grid: RadialGrid, parity: Parity, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.points().map(f).collect(), parity)
    }

    pub fn zeros(grid: RadialGrid, parity: Parity) -> Self {
        Self { grid, values: vec![0.0; grid.len()], parity }
    }

    #[inline]
    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `alpha * self + beta * other`, both on the same grid with the same parity.
    pub fn lin_comb(&self, alpha: f64, other: &ScalarField, beta: f64) -> Result<ScalarField> {
        if self.grid != other.grid || self.parity != other.parity {
            return Err(Error::invalid("fields live on different grids or parities"));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| alpha * a + beta * b).collect();
        ScalarField::new(self.grid, values, self.parity)
    }
}

/// Ordered samples `(t, value)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TimeSeries {
    t: Vec<f64>,
    v: Vec<f64>,
}

impl TimeSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if t.len() != v.len() {
            return Err(Error::invalid("time and value columns differ in length"));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("time samples must be strictly increasing"));
        }
        Ok(Self { t, v })
    }

    pub fn from_fn(times: impl IntoIterator<Item = f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let t: Vec<f64> = times.into_iter().collect();
        let v = t.iter().map(|&t| f(t)).collect();
        Self::from_pairs(t, v)
    }

    pub fn push(&mut self, t: f64, value: f64) -> Result<()> {
        if let Some(&last) = self.t.last() {
            if !(t > last) {
                return Err(Error::invalid(format!("time {t} does not follow {last}")));
            }
        }
        self.t.push(t);
        self.v.push(value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.t.iter().copied().zip(self.v.iter().copied())
    }

    /// Samples with `t1 <= t <= t2`.
    pub fn window(&self, t1: f64, t2: f64) -> TimeSeries {
        let (t, v) = self.iter().filter(|&(t, _)| t >= t1 && t <= t2).unzip();
        TimeSeries { t, v }
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> TimeSeries {
        TimeSeries { t: self.t.clone(), v: self.iter().map(|(t, v)| f(t, v)).collect() }
    }
}
