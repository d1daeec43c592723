//! Scalar abstractions.
//!
//! Game tables, payoffs and the μ functionals only need field arithmetic and
//! an order, so they are generic over [`Scalar`] and work with exact rationals
//! as well as floats. Anything that takes square roots, exponentials or runs
//! an iterative solver is bounded by [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Ordered field element: `f32`, `f64` or `num_rational::Ratio<i64>`.
pub trait Scalar:
    Num + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Floating point scalar.
pub trait Real: Scalar + Float {}

impl<T> Real for T where T: Scalar + Float {}

/// Convert an `f64` literal into `T`.
///
/// Panics when `T` cannot represent the value (NaN into a rational, say).
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).unwrap_or_else(|| panic!("{x} is not representable in the scalar type"))
}

/// Convert a count into `T`.
#[inline]
pub fn count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in the scalar type")
}

#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Absolute value without requiring `Signed` (keeps `Float::abs` unambiguous).
#[inline]
pub fn abs<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        T::zero() - x
    } else {
        x
    }
}

#[inline]
pub fn max<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

#[inline]
pub fn min<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm_sq<T: Scalar>(a: &[T]) -> T {
    dot(a, a)
}

/// Compensated (Kahan) accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Kahan<T> {
    pub fn new(sum: T) -> Self {
        Kahan {
            sum,
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum
    }
}
