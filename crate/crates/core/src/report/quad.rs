use std::str::FromStr;

use num_traits::One;

use crate::arith::is_squarefree;
use crate::error::{precondition, Error, Result};
use crate::quadforms::FundamentalDiscriminant;
use crate::units::{fundamental_unit, FundUnit};
use crate::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadQuery {
    H2,
    Structure,
    Unit,
}

impl FromStr for QuadQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h2" => Ok(QuadQuery::H2),
            "structure" => Ok(QuadQuery::Structure),
            "unit" => Ok(QuadQuery::Unit),
            _ => precondition(format!("unknown query {s:?}; expected h2, structure or unit")),
        }
    }
}

/// The square-free radicand for `m`, which may be given either as a
/// square-free integer or as a fundamental discriminant such as `-4` or `12`.
pub fn field_radicand(m: i64) -> Result<i64> {
    if m != 0 && m != 1 && is_squarefree(m.unsigned_abs()) {
        return Ok(m);
    }
    FundamentalDiscriminant::new(m)
        .map(|d| d.radicand())
        .map_err(|_| Error::Precondition(format!("{m} is neither square-free nor a fundamental discriminant")))
}

pub fn render_unit(u: &FundUnit) -> String {
    let y = if u.y.is_one() { String::new() } else { format!("{}*", u.y) };
    let body = format!("{} + {y}sqrt({})", u.x, u.m);
    let value = if u.denom == 1 { body } else { format!("({body})/{}", u.denom) };
    format!("{value}, norm {}", u.norm)
}

/// Answers a query about `Q(sqrt m)`.
pub fn quad_query(ctx: &Context, m: i64, query: QuadQuery) -> Result<String> {
    let r = field_radicand(m)?;
    let disc = FundamentalDiscriminant::from_radicand(r)?.value();
    if disc.unsigned_abs() > ctx.config().max_discriminant {
        return Err(Error::OutOfRange(format!(
            "|disc| = {} exceeds the forms bound {}",
            disc.unsigned_abs(),
            ctx.config().max_discriminant
        )));
    }
    match query {
        QuadQuery::H2 => ctx.h2_quadratic(r).map(|h| h.to_string()),
        QuadQuery::Structure if r < 0 => {
            let g = ctx.imaginary_class_group(r)?;
            Ok(format!("{g}; 2-part {}", g.two_part()))
        }
        QuadQuery::Structure => {
            let narrow = ctx.narrow_class_number(r)?;
            let wide = ctx.class_number(r)?;
            Ok(format!("h = {wide}, h+ = {narrow}"))
        }
        QuadQuery::Unit if r < 0 => precondition(format!("Q(sqrt {r}) is imaginary and has no fundamental unit")),
        QuadQuery::Unit => fundamental_unit(r).map(|u| render_unit(&u)),
    }
}
