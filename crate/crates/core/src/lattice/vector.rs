use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{self, LatticeScalar};
use super::LatticeError;

/// A point of Z², serialized as the pair `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<T> {
    pub x: T,
    pub y: T,
}

impl<T: LatticeScalar> LatticeVector<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x == T::zero() && self.y == T::zero()
    }

    pub fn checked_add(self, other: Self) -> Result<Self, LatticeError> {
        Ok(Self::new(scalar::add(self.x, other.x)?, scalar::add(self.y, other.y)?))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, LatticeError> {
        Ok(Self::new(scalar::sub(self.x, other.x)?, scalar::sub(self.y, other.y)?))
    }

    pub fn checked_neg(self) -> Result<Self, LatticeError> {
        Ok(Self::new(scalar::neg(self.x)?, scalar::neg(self.y)?))
    }

    pub fn checked_scale(self, k: T) -> Result<Self, LatticeError> {
        Ok(Self::new(scalar::mul(self.x, k)?, scalar::mul(self.y, k)?))
    }

    /// `det(self, other) = x·other.y − y·other.x`; positive when `other`
    /// lies counterclockwise of `self`.
    pub fn det(self, other: Self) -> Result<T, LatticeError> {
        scalar::cross(self.x, other.y, self.y, other.x)
    }

    pub fn dot(self, other: Self) -> Result<T, LatticeError> {
        scalar::add(scalar::mul(self.x, other.x)?, scalar::mul(self.y, other.y)?)
    }

    /// gcd of the coordinates.
    pub fn content(self) -> Result<T, LatticeError> {
        scalar::gcd(self.x, self.y)
    }

    /// The primitive vector on the same ray; the zero vector maps to itself.
    pub fn primitive(self) -> Result<Self, LatticeError> {
        let g = self.content()?;
        if g == T::zero() {
            return Ok(self);
        }
        Ok(Self::new(self.x / g, self.y / g))
    }

    /// If `self = k·dir` for an integer `k`, returns `k`.
    pub fn multiple_of(self, dir: Self) -> Result<Option<T>, LatticeError> {
        if dir.is_zero() {
            return Ok(None);
        }
        if self.det(dir)? != T::zero() {
            return Ok(None);
        }
        let (num, den) = if dir.x != T::zero() { (self.x, dir.x) } else { (self.y, dir.y) };
        if num % den != T::zero() {
            return Ok(None);
        }
        Ok(Some(num / den))
    }
}

// The operator impls panic on overflow instead of wrapping.
impl<T: LatticeScalar> Add for LatticeVector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("lattice vector overflow")
    }
}

impl<T: LatticeScalar> Sub for LatticeVector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("lattice vector overflow")
    }
}

impl<T: LatticeScalar> Neg for LatticeVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("lattice vector overflow")
    }
}

impl<T: LatticeScalar> Mul<T> for LatticeVector<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.checked_scale(k).expect("lattice vector overflow")
    }
}

impl<T: fmt::Display> fmt::Display for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl<T: Serialize> Serialize for LatticeVector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(serializer)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for LatticeVector<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (x, y) = <(T, T)>::deserialize(deserializer)?;
        Ok(Self { x, y })
    }
}
