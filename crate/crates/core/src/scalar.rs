//! Coefficient fields and the sign conventions shared by every graded
//! computation in the crate.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for all linear algebra.
///
/// Every algorithm in this crate decides ranks by testing entries against
/// zero, so the type must implement exact field arithmetic. `BigRational`
/// is the intended instance; `Ratio<i64>` works for small inputs. Floating
/// point types satisfy the bounds but produce meaningless ranks.
pub trait Scalar:
    Num + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable in the scalar field")
    }

    fn is_one_value(&self) -> bool {
        *self == Self::one()
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
}

/// `true` when `(-1)^exponent` is negative.
#[inline]
pub fn is_odd(exponent: u64) -> bool {
    exponent % 2 == 1
}

/// `(-1)^exponent` as a field element.
pub fn sign<F: Scalar>(exponent: u64) -> F {
    if is_odd(exponent) {
        -F::one()
    } else {
        F::one()
    }
}

/// Koszul sign `(-1)^{|a||b|}` incurred by moving an element of degree `a`
/// past one of degree `b`.
pub fn koszul<F: Scalar>(a: u64, b: u64) -> F {
    sign(a * b)
}

/// Multiplies `value` by `(-1)^exponent` in place.
pub fn apply_sign<F: Scalar>(value: F, exponent: u64) -> F {
    if is_odd(exponent) {
        -value
    } else {
        value
    }
}
