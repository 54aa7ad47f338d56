//! Truncation parameters and the report envelope every constant computation
//! returns.
//!
//! A report carries the final enclosure, the named sub-terms that built it,
//! the exact truncation levels used, and the wall-clock time. Reports are the
//! only thing callers see, so anything a reader might need to reproduce a
//! number must land here.

use arith_core::{ArithError, Enclosure, EtaBoundConfig, Result, SieveCache};
use serde_json::json;

/// Truncation levels for a constant run. `n_main` is the primary series or
/// summation horizon; `n_secondary` is the horizon of the inner/auxiliary
/// stage for the two-stage constants (it is ignored by the single-stage ones).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationParams {
    pub n_main: u64,
    pub n_secondary: u64,
    pub eta: EtaBoundConfig,
}

impl TruncationParams {
    pub fn new(n_main: u64, n_secondary: u64) -> Self {
        TruncationParams { n_main, n_secondary, eta: EtaBoundConfig::default() }
    }

    /// Desk defaults for the density-series constants (single horizon).
    pub fn desk_series() -> Self {
        Self::new(1 << 22, 1 << 22)
    }

    /// Desk defaults for the two-stage correction constant.
    pub fn desk_beta() -> Self {
        Self::new(1 << 18, 1 << 16)
    }

    /// Desk defaults for the per-prime loss constants.
    pub fn desk_mu() -> Self {
        Self::new(1 << 18, 1 << 16)
    }

    pub fn validate(&self, cache: &SieveCache) -> Result<()> {
        self.eta.validate()?;
        if self.n_main < 2 || self.n_secondary < 2 {
            return Err(ArithError::InvalidArgument(
                "truncation horizons must be at least 2".into(),
            ));
        }
        if self.n_main > cache.limit() || self.n_secondary > cache.limit() {
            return Err(ArithError::ResourceLimit(format!(
                "truncation horizon {} exceeds the sieve limit {}",
                self.n_main.max(self.n_secondary),
                cache.limit()
            )));
        }
        Ok(())
    }
}

/// Finished computation of one named constant.
#[derive(Clone, Debug)]
pub struct ConstantReport {
    pub name: String,
    pub value: Enclosure,
    pub sub_terms: Vec<(String, Enclosure)>,
    pub params: TruncationParams,
    pub timing_secs: f64,
}

impl ConstantReport {
    pub fn new(
        name: impl Into<String>,
        value: Enclosure,
        sub_terms: Vec<(String, Enclosure)>,
        params: TruncationParams,
        timing_secs: f64,
    ) -> Self {
        ConstantReport { name: name.into(), value, sub_terms, params, timing_secs }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "value": enclosure_json(&self.value),
            "sub_terms": self
                .sub_terms
                .iter()
                .map(|(n, e)| json!({ "name": n, "value": enclosure_json(e) }))
                .collect::<Vec<_>>(),
            "params": {
                "n_main": self.params.n_main,
                "n_secondary": self.params.n_secondary,
                "eta_anchors": self.params.eta.anchors,
                "eta_global_lower": self.params.eta.global_lower,
            },
            "timing_secs": self.timing_secs,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.3e},{},{},{:.3}",
            self.name,
            decimal_lo(self.value.lo()),
            decimal_hi(self.value.hi()),
            self.value.width(),
            self.params.n_main,
            self.params.n_secondary,
            self.timing_secs
        )
    }
}

/// Serialize an enclosure as outward-rounded decimal strings: the printed
/// interval must contain the binary one, so the low end rounds down and the
/// high end rounds up.
pub fn enclosure_json(e: &Enclosure) -> serde_json::Value {
    json!({ "lo": decimal_lo(e.lo()), "hi": decimal_hi(e.hi()) })
}

const DECIMAL_DIGITS: usize = 17;

/// Decimal string <= v, within one unit in the last printed digit.
pub fn decimal_lo(v: f64) -> String {
    round_decimal(v, false)
}

/// Decimal string >= v, within one unit in the last printed digit.
pub fn decimal_hi(v: f64) -> String {
    round_decimal(v, true)
}

fn round_decimal(v: f64, up: bool) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{:.*e}", DECIMAL_DIGITS, v);
    let parsed: f64 = s.parse().expect("formatted float parses");
    // 17 significant digits round-trip f64 exactly, so the nudge below only
    // fires if the format/parse pair ever disagrees with the original value.
    if parsed == v || (up && parsed > v) || (!up && parsed < v) {
        return s;
    }
    let nudged = if up { f64_next_up(parsed) } else { f64_next_down(parsed) };
    format!("{:.*e}", DECIMAL_DIGITS, nudged)
}

fn f64_next_up(v: f64) -> f64 {
    let bits = v.to_bits();
    if v.is_nan() || v == f64::INFINITY {
        v
    } else if v == 0.0 {
        f64::from_bits(1)
    } else if v > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

fn f64_next_down(v: f64) -> f64 {
    -f64_next_up(-v)
}
