//! Constants obtained by interval composition of already-computed reports:
//! the decay exponent delta = a + gamma - 1 - beta, the patched-set exponent
//! kappa = delta - mu_5/30 - 79 mu_11/4620, and the sieve limit a e^{-delta}.

use std::time::Instant;

use arith_core::{ArithError, Enclosure, Result};

use crate::params::{ConstantReport, TruncationParams};

fn find<'a>(reports: &'a [ConstantReport], name: &str) -> Result<&'a ConstantReport> {
    reports.iter().find(|r| r.name == name).ok_or_else(|| {
        ArithError::InvalidArgument(format!("derived constants need a report named {name}"))
    })
}

/// Composes delta, kappa, and a·e^{-delta} from the reports for a[y=1,z=1],
/// beta, mu[q=5], and mu[q=11]. Every output carries the enclosures it was
/// composed from as sub-terms; params are inherited from the a-report since
/// the composition itself involves no further truncation.
pub fn derived_constants(reports: &[ConstantReport]) -> Result<Vec<ConstantReport>> {
    let started = Instant::now();
    let a = find(reports, "a[y=1,z=1]")?;
    let beta = find(reports, "beta")?;
    let mu5 = find(reports, "mu[q=5]")?;
    let mu11 = find(reports, "mu[q=11]")?;
    let params = a.params.clone();

    let delta = a.value + Enclosure::gamma() - Enclosure::ONE - beta.value;
    let mu5_share = mu5.value * Enclosure::from_ratio(1, 30);
    let mu11_share = mu11.value * Enclosure::from_ratio(79, 4620);
    let kappa = delta - mu5_share - mu11_share;
    let sieve_limit = a.value * (-delta).exp();

    let timing = started.elapsed().as_secs_f64();
    Ok(vec![
        ConstantReport::new(
            "delta",
            delta,
            vec![("a".into(), a.value), ("beta".into(), beta.value)],
            params.clone(),
            timing,
        ),
        ConstantReport::new(
            "kappa",
            kappa,
            vec![
                ("delta".into(), delta),
                ("mu[q=5] share".into(), mu5_share),
                ("mu[q=11] share".into(), mu11_share),
            ],
            params.clone(),
            timing,
        ),
        ConstantReport::new(
            "a*exp(-delta)",
            sieve_limit,
            vec![("a".into(), a.value), ("delta".into(), delta)],
            params,
            timing,
        ),
    ])
}
