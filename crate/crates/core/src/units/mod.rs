//! Units of real quadratic and biquadratic fields.

mod fundamental;
mod index;
mod multiquad;

pub use fundamental::{eps_decomposition, fundamental_unit, unit_norm, EpsDecomposition, FundUnit};
pub use index::{
    hasse_q_ld, is_square_in_biquad, is_square_in_biquad_with, q_index_ld, unit_index_biquad, unit_index_biquad_with,
    UnitIndex, UnitProduct,
};
pub use multiquad::{Elem, MultiQuad};
