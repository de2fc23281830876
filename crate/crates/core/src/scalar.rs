//! Scalar field abstraction.
//!
//! Every algorithm in the crate is written against [`Scalar`]. The exact
//! rational implementation is the default everywhere; the floating-point
//! implementations exist for the few normalizations that need a real root
//! which is not rational.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A field the exterior-algebra routines can run over.
///
/// `EXACT` selects the pivoting strategy of the elimination routines and
/// whether zero tests are exact or tolerance based.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    /// Zero test used by elimination. Exact types compare against zero.
    fn is_negligible(&self) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Nonnegative square root when it exists in the field.
    fn sqrt_exact(&self) -> Option<Self> {
        self.root_exact(2)
    }

    /// Real `k`-th root when it exists in the field. For even `k` the
    /// argument must be nonnegative and the nonnegative root is returned.
    fn root_exact(&self, k: u32) -> Option<Self>;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(x: f64) -> Option<Self> {
        Self::from_f64(x)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn root_exact(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some(self.clone());
        }
        if self.is_negative() && k.is_multiple_of(2) {
            return None;
        }
        let num = int_root(&self.numer().abs(), k)?;
        let den = int_root(self.denom(), k)?;
        let root = BigRational::new(num, den);
        Some(if self.is_negative() { -root } else { root })
    }
}

fn int_root(x: &BigInt, k: u32) -> Option<BigInt> {
    let r = x.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *x {
        Some(r)
    } else {
        None
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn root_exact(&self, k: u32) -> Option<Self> {
                if k == 0 {
                    return None;
                }
                if *self < 0.0 {
                    if k % 2 == 0 {
                        return None;
                    }
                    return Some(-(-*self).powf(1.0 / k as $t));
                }
                Some(self.powf(1.0 / k as $t))
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Parse `"n"` or `"n/d"` with integer `n`, nonzero `d`. Decimals and
/// exponents are rejected.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return None;
    }
    let num: BigInt = num.trim_start_matches('+').parse().ok()?;
    let den: BigInt = den.trim_start_matches('+').parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Canonical text of a rational: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convenience constructor used throughout tests and the catalog.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Small integer as a scalar.
pub fn int<T: Scalar>(k: i64) -> T {
    T::from_ratio(k, 1)
}

/// `k!` as a scalar.
pub fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * int::<T>(i as i64))
}
