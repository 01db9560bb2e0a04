//! Small reference designs used throughout the tests and the CLI examples.

use crate::design::{parse_design, Design};

fn load(text: &str) -> Design {
    parse_design(text).expect("fixture text is well formed")
}

/// The [2, 2, 1] balanced design `z1 0 / 0 z1*`.
pub fn base() -> Design {
    load("2 2 1\nz1 0\n0 z1*")
}

/// The Alamouti design `z1 z2 / -z2* z1*`.
pub fn alamouti() -> Design {
    load("2 2 2\nz1 z2\n-z2* z1*")
}

/// Alamouti with the sign of `z2*` flipped; not orthogonal at (1, 2).
pub fn alamouti_sign_flipped() -> Design {
    load("2 2 2\nz1 z2\nz2* z1*")
}

/// `z1 0 / 0 z1`: orthogonal, but `z1*` never appears.
pub fn t_block() -> Design {
    load("2 2 1\nz1 0\n0 z1")
}

/// The [4, 4, 2] balanced design in B_1 form with `M_1 = [[0, z2], [-z2, 0]]`.
pub fn d2() -> Design {
    load("4 4 2\nz1 0 0 z2\n0 z1 -z2 0\n0 z2* z1* 0\n-z2* 0 0 z1*")
}

/// Two copies of [`d2`] stacked vertically on disjoint variables:
/// an [8, 4, 4] balanced design that is not atomic.
pub fn stacked_d2() -> Design {
    load(
        "8 4 4\n\
         z1 0 0 z2\n0 z1 -z2 0\n0 z2* z1* 0\n-z2* 0 0 z1*\n\
         z3 0 0 z4\n0 z3 -z4 0\n0 z4* z3* 0\n-z4* 0 0 z3*",
    )
}

/// Two copies of [`d2`] placed block-diagonally (8 rows, 8 columns).
/// Not a COD as a whole; each block is.
pub fn block_diagonal_d2() -> Design {
    load(
        "8 8 4\n\
         z1 0 0 z2 0 0 0 0\n0 z1 -z2 0 0 0 0 0\n0 z2* z1* 0 0 0 0 0\n-z2* 0 0 z1* 0 0 0 0\n\
         0 0 0 0 z3 0 0 z4\n0 0 0 0 0 z3 -z4 0\n0 0 0 0 0 z4* z3* 0\n0 0 0 0 -z4* 0 0 z3*",
    )
}
