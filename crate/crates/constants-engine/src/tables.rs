//! Grid evaluation of the two published constant tables: densities c_{y,z}
//! over y = 2..7 and limits a_{y,z} over y = 1..6, both against the cutoff
//! column z in {1, 2, 3, 5}. Cells are independent and evaluated in
//! parallel; the collected grid keeps row-major order, so the output is
//! identical for any worker count.

use arith_core::{ArithError, PrimeCutoff, Result, SieveCache};
use rayon::prelude::*;
use ssf_counting::Rational64;

use crate::params::{ConstantReport, TruncationParams};
use crate::{compute_a, compute_c};

pub const CUTOFF_COLUMNS: [u64; 4] = [1, 2, 3, 5];

#[derive(Clone, Debug)]
pub struct TableReport {
    pub index: u8,
    pub y_values: Vec<u64>,
    pub z_values: Vec<u64>,
    /// Row-major: cells[row * z_values.len() + col].
    pub cells: Vec<ConstantReport>,
}

fn grid(
    index: u8,
    y_values: Vec<u64>,
    cache: &SieveCache,
    params: &TruncationParams,
    eval: impl Fn(Rational64, &PrimeCutoff) -> Result<ConstantReport> + Sync,
) -> Result<TableReport> {
    let z_values = CUTOFF_COLUMNS.to_vec();
    let coords: Vec<(u64, u64)> = y_values
        .iter()
        .flat_map(|&y| z_values.iter().map(move |&z| (y, z)))
        .collect();
    params.validate(cache)?;
    let cells = coords
        .par_iter()
        .map(|&(y, z)| eval(Rational64::from_int(y), &PrimeCutoff::integer(z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport { index, y_values, z_values, cells })
}

/// The density-prefactor grid c_{y,z}, y = 2..7.
pub fn table_one(cache: &SieveCache, params: &TruncationParams) -> Result<TableReport> {
    grid(1, (2..=7).collect(), cache, params, |y, z| compute_c(cache, y, z, params))
}

/// The member-count limit grid a_{y,z}, y = 1..6.
pub fn table_two(cache: &SieveCache, params: &TruncationParams) -> Result<TableReport> {
    grid(2, (1..=6).collect(), cache, params, |y, z| compute_a(cache, y, z, params))
}

impl TableReport {
    pub fn cell(&self, y: u64, z: u64) -> Result<&ConstantReport> {
        let row = self.y_values.iter().position(|&v| v == y);
        let col = self.z_values.iter().position(|&v| v == z);
        match (row, col) {
            (Some(r), Some(c)) => Ok(&self.cells[r * self.z_values.len() + c]),
            _ => Err(ArithError::InvalidArgument(format!(
                "table {} has no cell at y = {y}, z = {z}",
                self.index
            ))),
        }
    }

    /// The published grid layout: one row per y, one column per cutoff,
    /// entries truncated to four decimals (exact zeros stay "0").
    pub fn grid_csv(&self) -> String {
        let mut out = String::from("y\\z");
        for z in &self.z_values {
            out.push_str(&format!(",{z}"));
        }
        out.push('\n');
        for (r, y) in self.y_values.iter().enumerate() {
            out.push_str(&y.to_string());
            for c in 0..self.z_values.len() {
                let v = self.cells[r * self.z_values.len() + c].value;
                if v.lo() == 0.0 && v.hi() == 0.0 {
                    out.push_str(",0");
                } else {
                    out.push_str(&format!(",{:.4}", truncate_4(v.mid())));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn truncate_4(v: f64) -> f64 {
    (v * 10_000.0).floor() / 10_000.0
}
