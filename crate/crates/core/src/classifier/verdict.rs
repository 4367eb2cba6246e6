use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::{rank2_case, rank3_case, RankCase};
use super::criteria::{criterion_222, criterion_24, Criterion};
use crate::arith::{factor_squarefree, FactoredOdd, SymbolLog, SymbolRecord};
use crate::error::{Error, Result};
use crate::formulas::{H2Result, RouteRegistry};
use crate::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    #[serde(rename = "(2,4)")]
    Type24,
    #[serde(rename = "(2,2,2)")]
    Type222,
    #[serde(rename = "not-target")]
    NotOfTargetType,
    #[serde(rename = "out-of-scope")]
    OutOfScope,
}

impl GroupType {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupType::Type24 => "(2,4)",
            GroupType::Type222 => "(2,2,2)",
            GroupType::NotOfTargetType => "not-target",
            GroupType::OutOfScope => "out-of-scope",
        }
    }

    pub fn is_target(self) -> bool {
        matches!(self, GroupType::Type24 | GroupType::Type222)
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full classification record for one `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub d: u64,
    pub rank_case: Option<RankCase>,
    pub group_type: GroupType,
    pub h2: H2Result,
    pub certificates: Vec<H2Result>,
    pub exact_routes: Vec<H2Result>,
    pub annotations: Vec<String>,
    pub diagnostics: Vec<String>,
    pub symbols: Vec<SymbolRecord>,
}

impl Verdict {
    pub fn rank(&self) -> Option<u8> {
        self.rank_case.as_ref().map(|c| c.rank)
    }

    pub fn case_id(&self) -> Option<u8> {
        self.rank_case.as_ref().map(|c| c.case_id)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.d)?;
        match &self.rank_case {
            Some(c) => writeln!(f, "rank case: {c}")?,
            None => writeln!(f, "rank case: none")?,
        }
        writeln!(f, "type: {}", self.group_type)?;
        writeln!(f, "h2(L_d): {}", self.h2)?;
        for c in &self.certificates {
            writeln!(f, "certificate: {} | h2 ({})", c.value, c.route)?;
        }
        for a in &self.annotations {
            writeln!(f, "note: {a}")?;
        }
        for a in &self.diagnostics {
            writeln!(f, "diagnostic: {a}")?;
        }
        let symbols: Vec<String> = self.symbols.iter().map(|s| format!("{} = {}", s.symbol, s.value)).collect();
        write!(f, "symbols: {}", symbols.join(", "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Any,
    Only24,
    Only222,
}

type CriterionFn = fn(&Context, &FactoredOdd, &mut SymbolLog) -> Result<Option<Criterion>>;

/// The verdict for a `d` whose rank case is known, with the note explaining it.
/// An exhausted parameter search makes the verdict out of scope.
fn decide(
    ctx: &Context,
    d: &FactoredOdd,
    case: &RankCase,
    criterion: CriterionFn,
    hit: GroupType,
    log: &mut SymbolLog,
) -> Result<(GroupType, String)> {
    match criterion(ctx, d, log) {
        Ok(Some(c)) if c.holds => Ok((hit, format!("{hit} criterion holds: {}", c.detail))),
        Ok(Some(c)) => Ok((GroupType::NotOfTargetType, format!("{hit} criterion fails: {}", c.detail))),
        Ok(None) => Ok((
            GroupType::NotOfTargetType,
            format!("rank {} case {} is not covered by the {hit} criterion", case.rank, case.case_id),
        )),
        Err(e @ Error::SearchExhausted { .. }) => Ok((GroupType::OutOfScope, e.to_string())),
        Err(e) => Err(e),
    }
}

fn assemble(ctx: &Context, registry: &RouteRegistry, d: &FactoredOdd, target: Target) -> Result<Verdict> {
    ctx.check_ceiling(d.value())?;
    let mut log = SymbolLog::new();
    let r2 = rank2_case(d, &mut log)?;
    let r3 = rank3_case(d, &mut log)?;
    if let (Some(a), Some(b)) = (&r2, &r3) {
        return Err(Error::Integrity(format!("d = {} matches both rank lists: {a}; {b}", d.value())));
    }
    let summary = registry.summarize(ctx, d, &mut log)?;
    let mut notes = Vec::new();
    let mut diagnostics = summary.diagnostics.clone();
    let mut record = |t: GroupType, note: String| {
        if t == GroupType::OutOfScope {
            diagnostics.push(note);
        } else {
            notes.push(note);
        }
    };

    let (rank_case, group_type, decided) = match (target, r2, r3) {
        (Target::Any | Target::Only24, Some(c), _) => {
            let (t, note) = decide(ctx, d, &c, criterion_24, GroupType::Type24, &mut log)?;
            record(t, note);
            (Some(c), t, true)
        }
        (Target::Any | Target::Only222, _, Some(c)) => {
            let (t, note) = decide(ctx, d, &c, criterion_222, GroupType::Type222, &mut log)?;
            record(t, note);
            (Some(c), t, true)
        }
        (Target::Any, None, None) => {
            notes.push("d is in neither the rank 2 nor the rank 3 list".into());
            (None, GroupType::OutOfScope, false)
        }
        (Target::Only24, None, r3) => {
            notes.push("the 2-rank of Cl_2(L_d) is not 2".into());
            (r3, GroupType::NotOfTargetType, false)
        }
        (Target::Only222, r2, None) => {
            notes.push("the 2-rank of Cl_2(L_d) is not 3".into());
            (r2, GroupType::NotOfTargetType, false)
        }
    };

    // With the rank fixed at 2 or 3, the group is of target type iff h2 = 8.
    let n = d.value();
    if decided && group_type != GroupType::OutOfScope {
        for e in summary.exact_excluding("classification") {
            if group_type.is_target() != (e.value == 8) {
                return Err(Error::Integrity(format!(
                    "d = {n}: criterion gives {group_type} but route {} gives h2 = {}",
                    e.route, e.value
                )));
            }
        }
        if group_type.is_target() {
            if let Some(b) = summary.bounds.iter().find(|b| 8 % b.value != 0) {
                return Err(Error::Integrity(format!(
                    "d = {n}: criterion gives {group_type} but {} | h2 ({})",
                    b.value, b.route
                )));
            }
        }
    }

    let mut h2 = summary.best.clone();
    if group_type.is_target() && !h2.is_exact() {
        h2 = H2Result::exact(8, "classification", format!("{group_type} has order 8"));
    }

    let mut annotations = Vec::new();
    if h2.is_exact() {
        annotations.push(format!("h2 route: {}", h2.route));
    }
    if let [p] = d.factors() {
        if p.mod8 == 1 && log.quartic(2, p.prime)?.is_minus() && log.quartic_mod2(p.prime as i64)?.is_minus() {
            if h2.value % 16 != 0 {
                return Err(Error::Integrity(format!("d = {n}: both quartic symbols are -1 but h2 = {h2}")));
            }
            annotations.push("4-rank = 1".to_string());
            annotations.push("8-rank = 1".to_string());
        }
    }
    if d.residues8() == [3, 3] {
        let h = ctx.h2_quadratic(-2 * n as i64)?;
        if h2.is_exact() && h2.value != h {
            return Err(Error::Integrity(format!("d = {n}: h2(L_d) = {} but h2(-2d) = {h}", h2.value)));
        }
        annotations.push(format!("h2(L_d) = h2(-2d) = {h}"));
    }
    for c in &summary.bounds {
        annotations.push(format!("{} | h2 ({})", c.value, c.route));
    }
    annotations.extend(notes);

    Ok(Verdict {
        d: n,
        rank_case,
        group_type,
        h2,
        certificates: summary.bounds,
        exact_routes: summary.exact,
        annotations,
        diagnostics,
        symbols: log.into_records(),
    })
}

/// Decides whether `Cl_2(L_d)` is of type `(2,4)`.
pub fn classify_24(ctx: &Context, d: &FactoredOdd) -> Result<Verdict> {
    assemble(ctx, &RouteRegistry::standard(), d, Target::Only24)
}

/// Decides whether `Cl_2(L_d)` is of type `(2,2,2)`.
pub fn classify_222(ctx: &Context, d: &FactoredOdd) -> Result<Verdict> {
    assemble(ctx, &RouteRegistry::standard(), d, Target::Only222)
}

pub fn classify(ctx: &Context, d: u64) -> Result<Verdict> {
    classify_with(ctx, &RouteRegistry::standard(), d)
}

/// Classifies `d` using the given routes for `h2(L_d)`.
pub fn classify_with(ctx: &Context, registry: &RouteRegistry, d: u64) -> Result<Verdict> {
    ctx.check_ceiling(d)?;
    let f = factor_squarefree(d)?;
    assemble(ctx, registry, &f, Target::Any)
}
