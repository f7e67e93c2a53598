//! Sign conventions that are not forced by the definitions.
//!
//! Each constant is used in exactly one place; flipping one flips the
//! convention everywhere.

/// Odd case: sign contributed by each reversed edge orientation.
pub const ODD_REVERSAL_SIGN: i8 = -1;

/// Relative sign of the two terms of a chord relation row.
pub const CHORD_ROW_SIGN: i8 = 1;

/// Extra sign carried by a merge along a solid edge, relative to the
/// contraction sign of the dashed edge that replaces it.
pub const SOLID_CONTRACTION_SIGN: i8 = -1;

/// All tunable conventions, recorded in report headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Conventions {
    pub odd_reversal_sign: i8,
    pub chord_row_sign: i8,
    pub solid_contraction_sign: i8,
}

pub const CONVENTIONS: Conventions = Conventions {
    odd_reversal_sign: ODD_REVERSAL_SIGN,
    chord_row_sign: CHORD_ROW_SIGN,
    solid_contraction_sign: SOLID_CONTRACTION_SIGN,
};
