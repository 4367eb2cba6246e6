use super::certificate::divisibility_certificate;
use super::registry::H2Route;
use super::{h2_real_biquad, pow2_formula, H2Result};
use crate::arith::{FactoredOdd, SymbolLog};
use crate::classifier::{criterion_222, criterion_24};
use crate::error::Result;
use crate::units::{hasse_q_ld, q_index_ld};
use crate::Context;

fn signed(d: &FactoredOdd) -> i64 {
    d.value() as i64
}

/// `h2(L_d) = q(L_d)/2^5 * h2(d) h2(-d) h2(2d) h2(-2d) h2(2) h2(-2) h2(-1)`,
/// available when the octic unit index is pinned.
pub struct WadaRoute;

impl H2Route for WadaRoute {
    fn name(&self) -> &'static str {
        "wada"
    }

    fn description(&self) -> &'static str {
        "multiquadratic formula over the seven quadratic subfields with a pinned unit index"
    }

    fn evaluate(&self, ctx: &Context, d: &FactoredOdd, _log: &mut SymbolLog) -> Result<Option<H2Result>> {
        let q = q_index_ld(d)?;
        let n = signed(d);
        let ms = [n, -n, 2 * n, -2 * n, 2, -2, -1];
        let mut hs = vec![q.value];
        for m in ms {
            hs.push(ctx.h2_quadratic(m)?);
        }
        let value = pow2_formula(&hs, 5, &format!("wada route for d = {n}"))?;
        let detail = format!("q = {} [{}]; h2(d, -d, 2d, -2d, 2, -2, -1) = {:?}", q.value, q.basis_tag, &hs[1..]);
        Ok(Some(H2Result::exact(value, self.name(), detail)))
    }
}

/// `h2(L_d) = Q/4 * h2(L_d+) h2(-d) h2(-2d)`, available when the Hasse index is pinned.
pub struct CmRoute;

impl H2Route for CmRoute {
    fn name(&self) -> &'static str {
        "cm"
    }

    fn description(&self) -> &'static str {
        "CM-field formula over Q(sqrt 2) with a pinned Hasse index"
    }

    fn evaluate(&self, ctx: &Context, d: &FactoredOdd, _log: &mut SymbolLog) -> Result<Option<H2Result>> {
        let hasse = hasse_q_ld(d)?;
        let n = signed(d);
        let plus = h2_real_biquad(ctx, n)?;
        let hs = [hasse.value, plus, ctx.h2_quadratic(-n)?, ctx.h2_quadratic(-2 * n)?];
        let value = pow2_formula(&hs, 2, &format!("cm route for d = {n}"))?;
        let detail = format!("Q = {}; h2(L+) = {}, h2(-d) = {}, h2(-2d) = {}", hs[0], hs[1], hs[2], hs[3]);
        Ok(Some(H2Result::exact(value, self.name(), detail)))
    }
}

/// The CM formula with an unpinned Hasse index `Q` in {1, 2}: `h2(L_d)/Q`
/// divides `h2(L_d)`. Not part of the standard registry.
pub struct CmBracketRoute;

impl H2Route for CmBracketRoute {
    fn name(&self) -> &'static str {
        "cm-bracket"
    }

    fn description(&self) -> &'static str {
        "CM-field formula with Q in {1, 2}, giving h2(L_d) in {x, 2x}"
    }

    fn evaluate(&self, ctx: &Context, d: &FactoredOdd, _log: &mut SymbolLog) -> Result<Option<H2Result>> {
        let n = signed(d);
        let plus = h2_real_biquad(ctx, n)?;
        let hs = [plus, ctx.h2_quadratic(-n)?, ctx.h2_quadratic(-2 * n)?];
        let Ok(x) = pow2_formula(&hs, 2, "cm bracket") else {
            return Ok(None);
        };
        let detail =
            format!("h2(L_d) in {{{x}, {}}}; h2(L+) = {}, h2(-d) = {}, h2(-2d) = {}", 2 * x, hs[0], hs[1], hs[2]);
        Ok(Some(H2Result::lower_bound(x, self.name(), detail)))
    }
}

/// Divisibility certificates from the shape of `d`.
pub struct CertificateRoute;

impl H2Route for CertificateRoute {
    fn name(&self) -> &'static str {
        "certificate"
    }

    fn description(&self) -> &'static str {
        "power of 2 dividing h2(L_d), from congruence and symbol conditions"
    }

    fn evaluate(&self, _ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<H2Result>> {
        divisibility_certificate(d, log).map(Some)
    }
}

/// `h2(L_d) = 8` whenever the `(2,4)` or `(2,2,2)` criterion holds.
pub struct ClassificationRoute;

impl H2Route for ClassificationRoute {
    fn name(&self) -> &'static str {
        "classification"
    }

    fn description(&self) -> &'static str {
        "h2(L_d) = 8 when d satisfies the (2,4) or (2,2,2) criterion"
    }

    fn evaluate(&self, ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<H2Result>> {
        for criterion in [criterion_24(ctx, d, log)?, criterion_222(ctx, d, log)?].into_iter().flatten() {
            if criterion.holds {
                return Ok(Some(H2Result::exact(8, self.name(), criterion.detail)));
            }
        }
        Ok(None)
    }
}
