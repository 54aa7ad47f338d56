use std::fmt::Write as _;

use arith_core::{ArithError, Result};

/// What a grid holds: Buchstab's omega, the base density d, or the
/// ratio-indexed density d_r.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridKind {
    Omega,
    D,
    Dr(f64),
}

/// Uniform grid of density values sampled at u = i*h for i = 0..=u_max/h.
///
/// The step is stored as its integer reciprocal so that integer grid
/// coordinates (in particular the breakpoints at integer u, where these
/// functions have kinks) land exactly on nodes.
#[derive(Clone, Debug)]
pub struct DensityGrid {
    kind: GridKind,
    inv_step: u64,
    values: Vec<f64>,
}

impl DensityGrid {
    pub(crate) fn new(kind: GridKind, inv_step: u64, values: Vec<f64>) -> Self {
        assert!(inv_step > 0);
        assert!(values.len() > 1);
        DensityGrid {
            kind,
            inv_step,
            values,
        }
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn step(&self) -> f64 {
        1.0 / self.inv_step as f64
    }

    pub fn u_max(&self) -> f64 {
        (self.values.len() - 1) as f64 / self.inv_step as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at grid node i (u = i * step).
    pub fn node(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Linearly interpolated value at u. Panics outside [0, u_max].
    pub fn value_at(&self, u: f64) -> f64 {
        assert!(u >= 0.0, "density argument must be nonnegative, got {u}");
        let pos = u * self.inv_step as f64;
        let last = self.values.len() - 1;
        assert!(
            pos <= last as f64 + 1e-9,
            "u = {u} beyond grid range {}",
            self.u_max()
        );
        let i = pos.floor() as usize;
        if i >= last {
            return self.values[last];
        }
        let frac = pos - i as f64;
        if frac == 0.0 {
            return self.values[i];
        }
        self.values[i] + frac * (self.values[i + 1] - self.values[i])
    }

    /// CSV rendering, one `u,value` row per node.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 24);
        out.push_str("u,value\n");
        for (i, v) in self.values.iter().enumerate() {
            let u = i as f64 / self.inv_step as f64;
            writeln!(out, "{u},{v}").expect("string write");
        }
        out
    }
}

/// Validates a requested step against the solver contract: h must lie in
/// (0, 1e-3] and 1/h must be an integer, so that integer u are grid nodes.
pub(crate) fn checked_inv_step(h: f64) -> Result<u64> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(ArithError::InvalidArgument(format!(
            "step {h} outside (0, 1e-3]"
        )));
    }
    let inv = 1.0 / h;
    let rounded = inv.round();
    if (inv - rounded).abs() > 1e-6 * inv {
        return Err(ArithError::InvalidArgument(format!(
            "1/{h} is not an integer"
        )));
    }
    Ok(rounded as u64)
}

/// Number of nodes for a range [0, u_max] at the given reciprocal step.
pub(crate) fn node_count(inv_step: u64, u_max: f64, min_u_max: f64) -> Result<usize> {
    if !(u_max >= min_u_max) {
        return Err(ArithError::InvalidArgument(format!(
            "u_max = {u_max} below minimum {min_u_max}"
        )));
    }
    let n = (u_max * inv_step as f64 + 1e-9).floor() as usize;
    Ok(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_validation() {
        assert!(checked_inv_step(1e-3).is_ok());
        assert_eq!(checked_inv_step(1e-3).unwrap(), 1000);
        assert_eq!(checked_inv_step(2e-4).unwrap(), 5000);
        assert!(checked_inv_step(0.0).is_err());
        assert!(checked_inv_step(2e-3).is_err());
        assert!(checked_inv_step(3e-4).is_err()); // 1/h = 3333.3...
    }

    #[test]
    fn interpolation_and_csv() {
        let g = DensityGrid::new(GridKind::Omega, 2, vec![0.0, 0.0, 1.0, 0.5, 0.25]);
        assert_eq!(g.u_max(), 2.0);
        assert_eq!(g.value_at(1.0), 1.0);
        assert_eq!(g.value_at(1.25), 0.75);
        assert_eq!(g.value_at(2.0), 0.25);
        let csv = g.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("u,value"));
        assert_eq!(lines.next(), Some("0,0"));
        assert_eq!(csv.lines().count(), 6);
    }
}
