//! Class number formulas for `L_d`, its real subfield `L_d+ = Q(sqrt 2, sqrt d)`
//! and the divisibility certificates, organized as named routes.

mod certificate;
mod registry;
mod routes;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use certificate::divisibility_certificate;
pub use registry::{H2Route, H2Summary, RouteRegistry};
pub use routes::{CertificateRoute, ClassificationRoute, CmBracketRoute, CmRoute, WadaRoute};

use crate::arith::{FactoredOdd, SymbolLog};
use crate::error::{precondition, Error, Result};
use crate::units::unit_index_biquad_with;
use crate::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Kind {
    Exact,
    LowerBound,
    Unknown,
}

impl fmt::Display for H2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            H2Kind::Exact => "exact",
            H2Kind::LowerBound => "lower_bound",
            H2Kind::Unknown => "unknown",
        })
    }
}

/// `h2(L_d)` or a power of 2 dividing it, with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Result {
    pub kind: H2Kind,
    pub value: u64,
    pub route: String,
    pub detail: String,
}

impl H2Result {
    pub fn exact(value: u64, route: impl Into<String>, detail: impl Into<String>) -> Self {
        H2Result { kind: H2Kind::Exact, value, route: route.into(), detail: detail.into() }
    }

    pub fn lower_bound(value: u64, route: impl Into<String>, detail: impl Into<String>) -> Self {
        H2Result { kind: H2Kind::LowerBound, value, route: route.into(), detail: detail.into() }
    }

    pub fn unknown() -> Self {
        H2Result { kind: H2Kind::Unknown, value: 1, route: "none".into(), detail: String::new() }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == H2Kind::Exact
    }
}

impl fmt::Display for H2Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            H2Kind::Exact => write!(f, "{} ({})", self.value, self.route),
            H2Kind::LowerBound => write!(f, "divisible by {} ({})", self.value, self.route),
            H2Kind::Unknown => write!(f, "unknown"),
        }
    }
}

/// `factor * prod(values) / 2^shift` for powers of 2, computed on exponents.
/// A non-integral result is an integrity failure.
pub(crate) fn pow2_formula(values: &[u64], shift: u32, what: &str) -> Result<u64> {
    let mut log = 0i64;
    for &v in values {
        if !v.is_power_of_two() {
            return Err(Error::Integrity(format!("{what}: factor {v} is not a power of 2")));
        }
        log += v.trailing_zeros() as i64;
    }
    log -= shift as i64;
    if !(0..63).contains(&log) {
        return Err(Error::Integrity(format!("{what}: 2^{log} is not an integral class number")));
    }
    Ok(1 << log)
}

/// `h2(Q(sqrt 2, sqrt m)) = q h2(2) h2(m) h2(2m) / 4`.
pub fn h2_real_biquad(ctx: &Context, m: i64) -> Result<u64> {
    if m <= 1 || m % 2 == 0 {
        return precondition(format!("L+ needs an odd square-free m > 1, got {m}"));
    }
    let q = unit_index_biquad_with(2, m, ctx.config().precision_ceiling)?;
    let hs = [q.value, ctx.h2_quadratic(2)?, ctx.h2_quadratic(m)?, ctx.h2_quadratic(2 * m)?];
    pow2_formula(&hs, 2, &format!("h2(Q(sqrt 2, sqrt {m}))"))
}

/// Exact `h2(L_d)` from the unit index of the octic field.
pub fn h2_ld_via_wada(ctx: &Context, d: &FactoredOdd) -> Result<H2Result> {
    WadaRoute.evaluate(ctx, d, &mut SymbolLog::new())?.ok_or_else(|| unavailable("wada", d))
}

/// Exact `h2(L_d)` from the CM-field formula over `Q(sqrt 2)`.
pub fn h2_ld_via_cm(ctx: &Context, d: &FactoredOdd) -> Result<H2Result> {
    CmRoute.evaluate(ctx, d, &mut SymbolLog::new())?.ok_or_else(|| unavailable("cm", d))
}

fn unavailable(route: &str, d: &FactoredOdd) -> Error {
    Error::UnknownCase(format!("route {route} does not apply to d = {}", d.value()))
}

/// Best available `h2(L_d)` over the standard routes.
pub fn h2_ld(ctx: &Context, d: &FactoredOdd) -> Result<H2Result> {
    Ok(RouteRegistry::standard().summarize(ctx, d, &mut SymbolLog::new())?.best)
}
