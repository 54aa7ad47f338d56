//! Delay-equation densities behind the rough-number counts: Buchstab's
//! function omega(u), the base density d(u) with d(u) ~ C/(u+1), and the
//! ratio family d_r(u) interpolating between the diagonal (d_1 = 0) and the
//! scaled limit d_0 = exp(-gamma) * d. All three solve delay integral
//! equations by explicit marching on uniform grids whose step divides 1, so
//! the integer kinks sit on nodes. Values are plain f64 — fast and accurate
//! to the advertised grid tolerance, not certified enclosures; the one
//! bridge back to exact land is `phi_crosscheck`, which lines the omega
//! approximation up against an exact rough-number count.

mod crosscheck;
mod grid;
mod solvers;

pub use crosscheck::phi_crosscheck;
pub use grid::{DensityGrid, GridKind};
pub use solvers::{d_uv, solve_d, solve_dr, solve_omega};
