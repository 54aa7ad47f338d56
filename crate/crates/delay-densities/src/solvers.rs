use arith_core::{ArithError, Enclosure, Result};

use crate::grid::{checked_inv_step, node_count, DensityGrid, GridKind};

fn require_omega(omega: &DensityGrid, needed_u: f64) -> Result<()> {
    if omega.kind() != GridKind::Omega {
        return Err(ArithError::InvalidArgument(
            "kernel grid must hold omega values".into(),
        ));
    }
    if omega.u_max() + 1e-9 < needed_u {
        return Err(ArithError::InvalidArgument(format!(
            "omega grid reaches {} but arguments up to {needed_u} are needed",
            omega.u_max()
        )));
    }
    Ok(())
}

/// Buchstab's function on [0, u_max]: omega(u) = 0 below 1, 1/u on [1, 2],
/// and for u >= 2 the integrated delay equation
/// u * omega(u) = 1 + integral_1^{u-1} omega(t) dt,
/// marched node by node with a running trapezoid for the integral. Every
/// integer u (where omega has a kink) is a grid node, so the quadrature
/// never straddles a corner and the error stays O(h^2).
pub fn solve_omega(h: f64, u_max: f64) -> Result<DensityGrid> {
    let m64 = checked_inv_step(h)?;
    let n = node_count(m64, u_max, 3.0)?;
    let m = m64 as usize;
    let mf = m64 as f64;
    let step = 1.0 / mf;
    let last = n - 1;
    let mut v = vec![0.0; n];
    for (i, slot) in v.iter_mut().enumerate().take(2 * m + 1).skip(m) {
        *slot = mf / i as f64;
    }
    let mut s = 0.0;
    for i in (2 * m + 1)..=last {
        s += 0.5 * step * (v[i - 1 - m] + v[i - m]);
        v[i] = (1.0 + s) * mf / i as f64;
    }
    Ok(DensityGrid::new(GridKind::Omega, m64, v))
}

/// Trapezoid value of integral_0^{(u-1)/2} vals(t)/(t+1) * omega((u-t)/(t+1)) dt
/// at u = i/m, where vals holds grid samples of the density being solved.
/// On that t-range the omega argument stays >= 1; it equals 1 exactly at the
/// endpoint t = (u-1)/2, where omega contributes its value-at-1 of 1. When
/// u-1 is an odd number of steps the endpoint falls mid-cell and the final
/// half-width cell uses the midpoint of the two neighbouring density samples.
fn kernel_integral(vals: &[f64], omega: &DensityGrid, i: usize, m: usize) -> f64 {
    if i <= m {
        return 0.0;
    }
    let step = 1.0 / m as f64;
    let g = |j: usize| {
        let arg = (i - j) as f64 / (m + j) as f64;
        vals[j] * m as f64 / (m + j) as f64 * omega.value_at(arg)
    };
    let k = (i - m) / 2;
    let mut sum = 0.0;
    if k > 0 {
        let mut acc = 0.5 * (g(0) + g(k));
        for j in 1..k {
            acc += g(j);
        }
        sum = acc * step;
    }
    if (i - m) % 2 == 1 {
        let t_star = (i - m) as f64 / (2 * m) as f64;
        let g_star = 0.5 * (vals[k] + vals[k + 1]) / (t_star + 1.0);
        sum += 0.25 * step * (g(k) + g_star);
    }
    sum
}

/// Base delay density d on [0, u_max]: d = 1 on [0, 1] and for u > 1
/// d(u) = 1 - integral_0^{(u-1)/2} d(t)/(t+1) * omega((u-t)/(t+1)) dt,
/// solved by explicit marching (the integrand only looks at t <= (u-1)/2,
/// which is already computed).
pub fn solve_d(h: f64, u_max: f64, omega: &DensityGrid) -> Result<DensityGrid> {
    let m64 = checked_inv_step(h)?;
    let n = node_count(m64, u_max, 1.0)?;
    require_omega(omega, u_max)?;
    let m = m64 as usize;
    let mut v = vec![1.0; n];
    for i in (m + 1)..n {
        v[i] = 1.0 - kernel_integral(&v, omega, i, m);
    }
    Ok(DensityGrid::new(GridKind::D, m64, v))
}

/// Ratio density d_r on [0, u_max] for r in (0, 1]:
/// d_r(u) = omega(u/r) - r*omega(u)
///          - integral_0^u d_r(t)/(t+1) * omega((u-t)/(t+1)) dt.
/// The kernel vanishes for t > (u-1)/2, so the integral clips to that range
/// and the same marching scheme as for d applies. Below u = 1 both the
/// omega(u) term and the integral vanish and d_r(u) = omega(u/r) exactly.
/// The omega grid must cover arguments up to u_max / r.
pub fn solve_dr(r: f64, h: f64, u_max: f64, omega: &DensityGrid) -> Result<DensityGrid> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(ArithError::InvalidArgument(format!(
            "ratio r = {r} outside (0, 1]"
        )));
    }
    let m64 = checked_inv_step(h)?;
    let n = node_count(m64, u_max, 1.0)?;
    require_omega(omega, u_max / r)?;
    let m = m64 as usize;
    let mf = m64 as f64;
    let mut v = vec![0.0; n];
    for i in 0..n {
        let u = i as f64 / mf;
        let mut val = omega.value_at(u / r) - r * omega.value_at(u);
        if i > m {
            val -= kernel_integral(&v, omega, i, m);
        }
        v[i] = val;
    }
    Ok(DensityGrid::new(GridKind::Dr(r), m64, v))
}

/// Two-argument density d(u, v) for v >= u >= 0, evaluated as d_{u/v}(u).
/// The diagonal r = 1 is identically zero; r = 0 (u = 0, or v infinite) is
/// the limit density exp(-gamma) * d(u). Anything in between solves the
/// d_r equation on a grid matching the supplied d grid's step.
pub fn d_uv(u: f64, v: f64, omega: &DensityGrid, d: &DensityGrid) -> Result<f64> {
    if !(u >= 0.0 && v >= u) {
        return Err(ArithError::InvalidArgument(format!(
            "need v >= u >= 0, got u = {u}, v = {v}"
        )));
    }
    if u == v {
        return Ok(0.0);
    }
    let r = u / v;
    if r == 0.0 {
        return Ok(Enclosure::exp_neg_gamma().mid() * d.value_at(u));
    }
    let grid = solve_dr(r, d.step(), u.max(1.0), omega)?;
    Ok(grid.value_at(u))
}
