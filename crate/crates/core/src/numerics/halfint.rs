//! Exact half-integers.
//!
//! Spins and projections are stored as twice their value, so `j = 3/2` has
//! `twice == 3`. Stepping `m` and checking parity stay in integer arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Validates `self` as a spin quantum number.
    pub fn spin(twice: i32) -> Result<Self> {
        if twice < 0 {
            return Err(Error::InvalidSpin(HalfInt::from_twice(twice).to_string()));
        }
        Ok(HalfInt { twice })
    }

    /// Dimension `2j + 1` of the spin-j irrep.
    #[inline]
    pub fn dim(self) -> usize {
        (self.twice + 1) as usize
    }

    /// `j + m` as an integer; only meaningful when the pair is valid.
    #[inline]
    pub fn plus(self, other: HalfInt) -> i32 {
        (self.twice + other.twice) / 2
    }

    /// `j - m` as an integer; only meaningful when the pair is valid.
    #[inline]
    pub fn minus(self, other: HalfInt) -> i32 {
        (self.twice - other.twice) / 2
    }

    #[inline]
    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// Projections `m = j, j-1, ..., -j`, in the crate-wide basis order.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let j2 = self.twice;
        (0..(j2.max(-1) + 1) as usize).map(move |i| HalfInt::from_twice(j2 - 2 * i as i32))
    }

    /// True when `m` is an allowed projection of spin `self`.
    pub fn admits(self, m: HalfInt) -> bool {
        self.twice >= 0 && m.twice.abs() <= self.twice && (self.twice - m.twice) % 2 == 0
    }

    /// Row index of projection `m` in the crate-wide basis order (row 0 is `m = j`).
    #[inline]
    pub fn index_of(self, m: HalfInt) -> usize {
        ((self.twice - m.twice) / 2) as usize
    }

    /// Projection sitting at row `index`.
    #[inline]
    pub fn projection_at(self, index: usize) -> HalfInt {
        HalfInt::from_twice(self.twice - 2 * index as i32)
    }
}

/// Checks that `(j, m)` is a valid spin/projection pair.
pub fn validate_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::InvalidSpin(j.to_string()));
    }
    if !j.admits(m) {
        return Err(Error::InvalidProjection {
            j: j.to_string(),
            m: m.to_string(),
        });
    }
    Ok(())
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Serialized as its display string, e.g. `"3/2"`.
impl serde::Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-2`, `3/2`, `-1/2`, `1.5`, `2.0`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |reason: &str| Error::Parse {
            token: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some((num, den)) = t.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(bad("denominator must be 1 or 2")),
            }
        } else if let Ok(n) = t.parse::<i32>() {
            Ok(HalfInt::from_int(n))
        } else {
            let x: f64 = t.parse().map_err(|_| bad("not a number"))?;
            let twice = 2.0 * x;
            if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 || twice.abs() > 1e9 {
                return Err(bad("not an integer or half-integer"));
            }
            Ok(HalfInt::from_twice(twice.round() as i32))
        }
    }
}
