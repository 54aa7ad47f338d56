use arith_core::{phi_count, ArithError, Enclosure, PrimeCutoff, Result, SieveCache};

use crate::grid::{DensityGrid, GridKind};

/// Exact rough-number count Phi(x, z) next to its omega-based approximation
/// Phi(x, z) - 1 ~= x * prod_{p<=z}(1 - 1/p) + x*(omega(v) - exp(-gamma))/log z
/// - z/log z, with v = log x / log z.
///
/// Everything except the omega sample is carried as an enclosure; the omega
/// value comes off the (non-rigorous) grid, so the returned interval is a
/// cross-check target rather than a proof. Requires x = num/den >= 1 and a
/// cutoff of at least 3/2; x below the cutoff is allowed (the exact side is
/// then 1, the approximation mostly cancels).
pub fn phi_crosscheck(
    cache: &SieveCache,
    num: u64,
    den: u64,
    cut: &PrimeCutoff,
    omega: &DensityGrid,
) -> Result<(u64, Enclosure)> {
    if omega.kind() != GridKind::Omega {
        return Err(ArithError::InvalidArgument(
            "phi_crosscheck needs an omega grid".into(),
        ));
    }
    if den == 0 || num < den || num > (1 << 62) {
        return Err(ArithError::InvalidArgument(format!(
            "x = {num}/{den} must be at least 1 (and representable)"
        )));
    }
    let (znum, zden) = match *cut {
        PrimeCutoff::Value { num, den } => (num, den),
        PrimeCutoff::JustBelow(p) => (p, 1),
    };
    if 2 * znum < 3 * zden {
        return Err(ArithError::InvalidArgument(
            "cutoff must be at least 3/2".into(),
        ));
    }
    let v = ((num as f64 / den as f64).ln() / (znum as f64 / zden as f64).ln()).max(0.0);
    if v > omega.u_max() + 1e-9 {
        return Err(ArithError::InvalidArgument(format!(
            "omega grid reaches {} but v = {v} is needed",
            omega.u_max()
        )));
    }

    let exact = phi_count(cache, num, den, cut)?;

    let x = Enclosure::from_ratio(num as i64, den as i64);
    let z = Enclosure::from_ratio(znum as i64, zden as i64);
    let log_z = Enclosure::ln_u64(znum) - Enclosure::ln_u64(zden);
    let pi_z = cache.mertens_product(cut);
    let omega_v = Enclosure::from_nearest(omega.value_at(v.min(omega.u_max())));
    let approx =
        x * pi_z + (x * (omega_v - Enclosure::exp_neg_gamma()) - z) / log_z + Enclosure::ONE;
    Ok((exact, approx))
}
