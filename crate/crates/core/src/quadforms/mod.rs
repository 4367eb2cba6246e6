//! Class groups of quadratic fields through binary quadratic forms.

mod cache;
mod form;
mod imaginary;
mod real;
mod structure;

pub use cache::{CacheEntry, ClassCache, ClassData, CACHE_HEADER, CACHE_SCHEMA_VERSION};
pub use form::{compose, power, reduce, FundamentalDiscriminant, QForm};
pub use imaginary::{class_group, class_number, reduced_forms};
pub use real::{cycles, narrow_class_number, reduced_indefinite_forms, rho};
pub use structure::AbelianStructure;

use crate::error::{precondition, Result};
use crate::units::unit_norm;
use crate::Context;

pub fn fundamental_discriminant(m: i64) -> Result<FundamentalDiscriminant> {
    FundamentalDiscriminant::from_radicand(m)
}

fn two_part(n: u64) -> u64 {
    1 << n.trailing_zeros()
}

impl Context {
    /// Class data for the discriminant of `Q(sqrt m)`, memoized in the context cache.
    pub fn class_data(&self, m: i64) -> Result<ClassData> {
        let d = FundamentalDiscriminant::from_radicand(m)?;
        let limit = self.config().max_discriminant;
        self.cache().get_or_compute(d.value(), || {
            if d.is_imaginary() {
                class_group(d, limit).map(ClassData::Imaginary)
            } else {
                narrow_class_number(d, limit).map(ClassData::RealNarrow)
            }
        })
    }

    pub fn imaginary_class_group(&self, m: i64) -> Result<AbelianStructure> {
        match self.class_data(m)? {
            ClassData::Imaginary(g) => Ok(g),
            ClassData::RealNarrow(_) => precondition(format!("Q(sqrt {m}) is not imaginary")),
        }
    }

    pub fn narrow_class_number(&self, m: i64) -> Result<u64> {
        match self.class_data(m)? {
            ClassData::RealNarrow(h) => Ok(h),
            ClassData::Imaginary(_) => precondition(format!("Q(sqrt {m}) is not real")),
        }
    }

    /// The wide class number `h(m)`.
    pub fn class_number(&self, m: i64) -> Result<u64> {
        match self.class_data(m)? {
            ClassData::Imaginary(g) => Ok(g.order()),
            ClassData::RealNarrow(h) => Ok(if unit_norm(m)? == 1 { h / 2 } else { h }),
        }
    }

    /// `h2(m)`, the 2-part of the class number of `Q(sqrt m)`.
    pub fn h2_quadratic(&self, m: i64) -> Result<u64> {
        self.class_number(m).map(two_part)
    }

    /// The 2-Sylow subgroup of `Cl(Q(sqrt m))` for `m < 0`.
    pub fn sylow2_type(&self, m: i64) -> Result<AbelianStructure> {
        if m >= 0 {
            return precondition(format!("2-Sylow structure needs an imaginary field, got m = {m}"));
        }
        Ok(self.imaginary_class_group(m)?.two_part())
    }
}
