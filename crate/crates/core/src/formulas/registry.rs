use super::routes::{CertificateRoute, ClassificationRoute, CmBracketRoute, CmRoute, WadaRoute};
use super::{H2Kind, H2Result};
use crate::arith::{FactoredOdd, SymbolLog};
use crate::error::{Error, Result};
use crate::Context;

/// One way of computing or bounding `h2(L_d)`.
pub trait H2Route: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// `Ok(None)` when the route does not apply to `d`.
    fn evaluate(&self, ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<Option<H2Result>>;
}

/// Results of every applicable route for one `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Summary {
    pub best: H2Result,
    pub exact: Vec<H2Result>,
    pub bounds: Vec<H2Result>,
    pub diagnostics: Vec<String>,
}

impl H2Summary {
    /// Exact values from routes other than `excluded`.
    pub fn exact_excluding(&self, excluded: &str) -> impl Iterator<Item = &H2Result> + '_ {
        let excluded = excluded.to_string();
        self.exact.iter().filter(move |r| r.route != excluded)
    }
}

pub struct RouteRegistry {
    routes: Vec<Box<dyn H2Route>>,
}

impl RouteRegistry {
    pub fn empty() -> Self {
        RouteRegistry { routes: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        for route in [
            Box::new(WadaRoute) as Box<dyn H2Route>,
            Box::new(CmRoute),
            Box::new(CertificateRoute),
            Box::new(ClassificationRoute),
        ] {
            r.register(route).expect("standard route names are distinct");
        }
        r
    }

    /// The standard routes plus the opt-in ones.
    pub fn all() -> Self {
        let mut r = Self::standard();
        r.register(Box::new(CmBracketRoute)).expect("route names are distinct");
        r
    }

    /// The named subset of [`RouteRegistry::all`], in the given order.
    pub fn select(names: &[&str]) -> Result<Self> {
        let mut all = Self::all();
        let mut out = Self::empty();
        for name in names {
            let pos = all.routes.iter().position(|r| r.name() == *name).ok_or_else(|| {
                Error::Precondition(format!("unknown route {name:?}; known: {}", Self::all().names().join(", ")))
            })?;
            out.register(all.routes.remove(pos))?;
        }
        Ok(out)
    }

    pub fn register(&mut self, route: Box<dyn H2Route>) -> Result<()> {
        if self.get(route.name()).is_some() {
            return Err(Error::Precondition(format!("route {:?} registered twice", route.name())));
        }
        self.routes.push(route);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn H2Route> {
        self.routes.iter().find(|r| r.name() == name).map(|r| r.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn routes(&self) -> impl Iterator<Item = &dyn H2Route> {
        self.routes.iter().map(|r| r.as_ref())
    }

    /// Runs every route. Exact values must agree; every bound must divide the
    /// exact value. Range errors propagate, other route failures are kept as
    /// diagnostics and the result degrades to what the remaining routes give.
    pub fn summarize(&self, ctx: &Context, d: &FactoredOdd, log: &mut SymbolLog) -> Result<H2Summary> {
        let mut exact: Vec<H2Result> = Vec::new();
        let mut bounds: Vec<H2Result> = Vec::new();
        let mut diagnostics = Vec::new();
        for route in &self.routes {
            match route.evaluate(ctx, d, log) {
                Ok(Some(r)) => match r.kind {
                    H2Kind::Exact => exact.push(r),
                    H2Kind::LowerBound => bounds.push(r),
                    H2Kind::Unknown => {}
                },
                Ok(None) | Err(Error::UnknownCase(_) | Error::NotApplicable(_) | Error::NoCertificate(_)) => {}
                Err(e @ Error::OutOfRange(_)) => return Err(e),
                Err(e) => diagnostics.push(format!("route {} failed: {e}", route.name())),
            }
        }
        let best = if let Some(first) = exact.first() {
            if let Some(other) = exact.iter().find(|r| r.value != first.value) {
                return Err(Error::Integrity(format!(
                    "routes disagree on h2(L_{}): {} gives {}, {} gives {}",
                    d.value(),
                    first.route,
                    first.value,
                    other.route,
                    other.value
                )));
            }
            if let Some(b) = bounds.iter().find(|b| first.value % b.value != 0) {
                return Err(Error::Integrity(format!(
                    "bound {} ({}) does not divide h2(L_{}) = {}",
                    b.value,
                    b.route,
                    d.value(),
                    first.value
                )));
            }
            let route = exact.iter().map(|r| r.route.as_str()).collect::<Vec<_>>().join("+");
            let detail = exact.iter().map(|r| r.detail.as_str()).collect::<Vec<_>>().join("; ");
            H2Result::exact(first.value, route, detail)
        } else if let Some(b) = bounds.iter().max_by_key(|b| b.value) {
            b.clone()
        } else {
            H2Result::unknown()
        };
        Ok(H2Summary { best, exact, bounds, diagnostics })
    }
}

impl Default for RouteRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
