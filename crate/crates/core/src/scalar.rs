//! Scalar abstractions.
//!
//! NDT algebra is written against [`Scalar`], which is implemented for exact
//! rationals (`Ratio<i64>`, `Ratio<i128>`) and for `f32`/`f64`. Channel
//! numerics are written against [`Real`], implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Ordered field elements used for normalized delivery times and cache
/// fractions.
pub trait Scalar:
    Clone + PartialOrd + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `num / den` in this scalar type.
    fn ratio(num: i64, den: i64) -> Self;
    fn floor(&self) -> Self;
    fn ceil(&self) -> Self;

    fn from_count(n: usize) -> Self {
        Self::ratio(n as i64, 1)
    }

    fn is_integral(&self) -> bool {
        self.to_integer().is_some()
    }

    /// The integer this value represents, if any. Float backings accept a
    /// small relative rounding error so that e.g. `0.3 * 10` counts as 3.
    fn to_integer(&self) -> Option<i64> {
        if self.floor() == *self {
            self.to_i64()
        } else {
            None
        }
    }

    /// `max(self, 0)`.
    fn positive_part(&self) -> Self {
        if *self > Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

macro_rules! impl_scalar_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $int, den as $int)
            }
            fn floor(&self) -> Self {
                Ratio::floor(self)
            }
            fn ceil(&self) -> Self {
                Ratio::ceil(self)
            }
        }
    };
}

impl_scalar_ratio!(i64);
impl_scalar_ratio!(i128);

macro_rules! impl_scalar_float {
    ($f:ty) => {
        impl Scalar for $f {
            fn ratio(num: i64, den: i64) -> Self {
                num as $f / den as $f
            }
            fn floor(&self) -> Self {
                <$f>::floor(*self)
            }
            fn ceil(&self) -> Self {
                <$f>::ceil(*self)
            }
            fn to_integer(&self) -> Option<i64> {
                let r = self.round();
                let tol = <$f>::EPSILON.sqrt() * r.abs().max(1.0);
                if (*self - r).abs() <= tol {
                    Some(r as i64)
                } else {
                    None
                }
            }
        }
    };
}

impl_scalar_float!(f32);
impl_scalar_float!(f64);

/// Floating-point field used for channel matrices and beamformers.
pub trait Real: nalgebra::RealField + Copy + ToPrimitive + FromPrimitive + Send + Sync {
    /// Relative residual bound for zero-forcing constraints.
    fn zf_tolerance() -> Self;
    /// Minimum magnitude accepted for the coefficient at an intended receiver.
    fn desired_floor() -> Self;
    /// Relative singular-value cutoff used when computing numerical rank.
    fn rank_tolerance() -> Self;
}

impl Real for f64 {
    fn zf_tolerance() -> Self {
        1e-9
    }
    fn desired_floor() -> Self {
        1e-6
    }
    fn rank_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn zf_tolerance() -> Self {
        1e-4
    }
    fn desired_floor() -> Self {
        1e-3
    }
    fn rank_tolerance() -> Self {
        1e-5
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.2353"` into an
/// exact rational.
pub fn parse_rational<I>(text: &str) -> Result<Ratio<I>>
where
    I: num_integer_like::IntLike,
{
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Ratio::new(I::from_i128(p).ok_or_else(bad)?, I::from_i128(q).ok_or_else(bad)?));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let denom = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let numer = if negative { -numer } else { numer };
    Ok(Ratio::new(I::from_i128(numer).ok_or_else(bad)?, I::from_i128(denom).ok_or_else(bad)?))
}

/// Integer backings accepted by [`parse_rational`].
pub mod num_integer_like {
    pub trait IntLike: Clone + num_traits::PrimInt + num_traits::Signed + num_integer::Integer {
        fn from_i128(v: i128) -> Option<Self>;
    }
    impl IntLike for i64 {
        fn from_i128(v: i128) -> Option<Self> {
            i64::try_from(v).ok()
        }
    }
    impl IntLike for i128 {
        fn from_i128(v: i128) -> Option<Self> {
            Some(v)
        }
    }
}
