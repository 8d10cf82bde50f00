//! Exact scalar arithmetic: arbitrary-precision rationals and a cyclotomic
//! field, the coefficient domain for everything downstream.

pub mod cyclotomic;
pub mod numtheory;

pub use cyclotomic::{rat, rat_int, Cyclotomic, Rational, MAX_CONDUCTOR};

use crate::error::Result;

/// The checked field-arithmetic entry point used by the shell layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

pub enum FieldValue {
    Scalar(Cyclotomic),
    Bool(bool),
}

pub fn field_arithmetic(a: &Cyclotomic, b: Option<&Cyclotomic>, op: FieldOp) -> Result<FieldValue> {
    use FieldOp::*;
    let need_b = |b: Option<&Cyclotomic>| b.cloned().unwrap_or_else(Cyclotomic::zero);
    Ok(match op {
        Add => FieldValue::Scalar(a.checked_add(&need_b(b))?),
        Sub => FieldValue::Scalar(a.checked_sub(&need_b(b))?),
        Mul => FieldValue::Scalar(a.checked_mul(&need_b(b))?),
        Div => FieldValue::Scalar(a.checked_div(&need_b(b))?),
        Neg => FieldValue::Scalar(a.checked_neg()),
        Inv => FieldValue::Scalar(a.inv()?),
        Eq => FieldValue::Bool(*a == need_b(b)),
    })
}
