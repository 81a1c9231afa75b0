use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

use super::LatticeError;

/// Signed machine integers usable as lattice coordinates.
///
/// Every arithmetic step in this module goes through the checked helpers
/// below, so overflow surfaces as [`LatticeError::Overflow`] instead of
/// wrapping.
pub trait LatticeScalar: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {}

impl LatticeScalar for i32 {}
impl LatticeScalar for i64 {}
impl LatticeScalar for i128 {}

#[inline]
pub(crate) fn add<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    a.checked_add(&b).ok_or(LatticeError::Overflow)
}

#[inline]
pub(crate) fn sub<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    a.checked_sub(&b).ok_or(LatticeError::Overflow)
}

#[inline]
pub(crate) fn mul<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    a.checked_mul(&b).ok_or(LatticeError::Overflow)
}

#[inline]
pub(crate) fn neg<T: LatticeScalar>(a: T) -> Result<T, LatticeError> {
    T::zero().checked_sub(&a).ok_or(LatticeError::Overflow)
}

#[inline]
pub(crate) fn abs<T: LatticeScalar>(a: T) -> Result<T, LatticeError> {
    if a < T::zero() {
        neg(a)
    } else {
        Ok(a)
    }
}

/// `a·b − c·d`, the shape of every 2×2 determinant.
#[inline]
pub(crate) fn cross<T: LatticeScalar>(a: T, b: T, c: T, d: T) -> Result<T, LatticeError> {
    sub(mul(a, b)?, mul(c, d)?)
}

/// Floor division (rounds toward negative infinity).
pub fn div_floor<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    let q = a.checked_div(&b).ok_or(LatticeError::Overflow)?;
    if (a % b != T::zero()) && ((a < T::zero()) != (b < T::zero())) {
        sub(q, T::one())
    } else {
        Ok(q)
    }
}

/// Ceiling division.
pub fn div_ceil<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    let q = a.checked_div(&b).ok_or(LatticeError::Overflow)?;
    if (a % b != T::zero()) && ((a < T::zero()) == (b < T::zero())) {
        add(q, T::one())
    } else {
        Ok(q)
    }
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd<T: LatticeScalar>(a: T, b: T) -> Result<T, LatticeError> {
    Ok(ext_gcd(a, b)?.0)
}

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(a, b) ≥ 0` and `u·a + v·b = g`.
pub fn ext_gcd<T: LatticeScalar>(a: T, b: T) -> Result<(T, T, T), LatticeError> {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while r1 != T::zero() {
        let q = r0 / r1;
        (r0, r1) = (r1, sub(r0, mul(q, r1)?)?);
        (s0, s1) = (s1, sub(s0, mul(q, s1)?)?);
        (t0, t1) = (t1, sub(t0, mul(q, t1)?)?);
    }
    if r0 < T::zero() {
        Ok((neg(r0)?, neg(s0)?, neg(t0)?))
    } else if r0 == T::zero() {
        Ok((T::zero(), T::zero(), T::zero()))
    } else {
        Ok((r0, s0, t0))
    }
}
