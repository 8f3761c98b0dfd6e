//! Exact arithmetic in cyclotomic fields, monic polynomials over them, and
//! dense exact linear algebra.

mod json;
mod matrix;
mod number;
mod poly;
mod root;

pub use matrix::{row_reduce, CycMatrix};
pub use number::{
    cyclotomic_polynomial, euler_phi, lcm_order, order_cap, set_order_cap, CycNumber,
    DEFAULT_ORDER_CAP,
};
pub use poly::CycPoly;
pub use root::RootOfUnity;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// Conjugate of the first operand; the second is ignored.
    Conj,
}

/// Fallible field arithmetic; results are in canonical reduced form at the
/// lcm of the operand orders.
pub fn cyc_arith(a: &CycNumber, b: &CycNumber, op: CycOp) -> Result<CycNumber> {
    match op {
        CycOp::Add => a.checked_add(b),
        CycOp::Mul => a.checked_mul(b),
        CycOp::Inv => a.inv(),
        CycOp::Conj => Ok(a.conj()),
    }
}

/// Minimal polynomial of a square matrix.
pub fn minpoly_matrix(m: &CycMatrix) -> Result<CycPoly> {
    m.minpoly()
}
