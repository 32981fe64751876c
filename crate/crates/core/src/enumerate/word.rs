//! Integer backends for the search core.
//!
//! The search runs on `u128` and switches a subtree over to [`Natural`]
//! the moment an intermediate product would overflow, so results are exact
//! at any magnitude while the common case stays on machine words.

use std::fmt::Debug;

use num_integer::Integer;

use crate::exactnum::Natural;

pub(crate) trait Word: Clone + Ord + Debug + Send + Sync + 'static {
    /// Backend used once this one overflows.
    type Wide: Word;

    fn from_u64(v: u64) -> Self;
    fn from_nat(n: &Natural) -> Option<Self>;
    fn to_nat(&self) -> Natural;
    fn to_u64(&self) -> Option<u64>;
    fn widen(&self) -> Self::Wide;

    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    /// Caller guarantees `self >= o`.
    fn sub(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn rem(&self, o: &Self) -> Self;
    fn gcd(&self, o: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_odd(&self) -> bool;
}

impl Word for u128 {
    type Wide = Natural;

    #[inline]
    fn from_u64(v: u64) -> Self {
        v as u128
    }
    fn from_nat(n: &Natural) -> Option<Self> {
        n.to_u128()
    }
    fn to_nat(&self) -> Natural {
        Natural::from(*self)
    }
    #[inline]
    fn to_u64(&self) -> Option<u64> {
        u64::try_from(*self).ok()
    }
    fn widen(&self) -> Natural {
        Natural::from(*self)
    }
    #[inline]
    fn checked_add(&self, o: &Self) -> Option<Self> {
        u128::checked_add(*self, *o)
    }
    #[inline]
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        u128::checked_mul(*self, *o)
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    #[inline]
    fn div(&self, o: &Self) -> Self {
        // Most operands fit a machine word; the 64-bit divide is far cheaper.
        match (u64::try_from(*self), u64::try_from(*o)) {
            (Ok(x), Ok(y)) => (x / y) as u128,
            _ => *self / *o,
        }
    }
    #[inline]
    fn rem(&self, o: &Self) -> Self {
        match (u64::try_from(*self), u64::try_from(*o)) {
            (Ok(x), Ok(y)) => (x % y) as u128,
            _ => *self % *o,
        }
    }
    #[inline]
    fn gcd(&self, o: &Self) -> Self {
        binary_gcd(*self, *o)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_one(&self) -> bool {
        *self == 1
    }
    #[inline]
    fn is_odd(&self) -> bool {
        *self & 1 == 1
    }
}

fn binary_gcd(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Word for Natural {
    type Wide = Natural;

    fn from_u64(v: u64) -> Self {
        Natural::from(v)
    }
    fn from_nat(n: &Natural) -> Option<Self> {
        Some(n.clone())
    }
    fn to_nat(&self) -> Natural {
        self.clone()
    }
    fn to_u64(&self) -> Option<u64> {
        Natural::to_u64(self)
    }
    fn widen(&self) -> Natural {
        self.clone()
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn rem(&self, o: &Self) -> Self {
        self % o
    }
    fn gcd(&self, o: &Self) -> Self {
        Natural::from(self.as_biguint().gcd(o.as_biguint()))
    }
    fn is_zero(&self) -> bool {
        Natural::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Natural::is_one(self)
    }
    fn is_odd(&self) -> bool {
        Natural::is_odd(self)
    }
}
