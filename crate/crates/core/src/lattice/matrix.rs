use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{self, LatticeScalar};
use super::{LatticeError, LatticeVector};

/// Integer 2×2 matrix `[[a, b], [c, d]]`, row-major. Serialized as nested rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: LatticeScalar> IntMatrix2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_rows(rows: [[T; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    /// The matrix whose columns are `u` and `v`.
    pub fn from_columns(u: LatticeVector<T>, v: LatticeVector<T>) -> Self {
        Self::new(u.x, v.x, u.y, v.y)
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn zero() -> Self {
        Self::scalar(T::zero())
    }

    pub fn scalar(k: T) -> Self {
        Self::new(k, T::zero(), T::zero(), k)
    }

    pub fn rows(&self) -> [[T; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn columns(&self) -> [LatticeVector<T>; 2] {
        [LatticeVector::new(self.a, self.c), LatticeVector::new(self.b, self.d)]
    }

    pub fn det(&self) -> Result<T, LatticeError> {
        scalar::cross(self.a, self.d, self.b, self.c)
    }

    /// Classical adjugate: `adj(A)·A = A·adj(A) = det(A)·1`.
    pub fn adjugate(&self) -> Result<Self, LatticeError> {
        Ok(Self::new(self.d, scalar::neg(self.b)?, scalar::neg(self.c)?, self.a))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LatticeError> {
        let dot = |p: T, q: T, r: T, s: T| scalar::add(scalar::mul(p, q)?, scalar::mul(r, s)?);
        Ok(Self::new(
            dot(self.a, rhs.a, self.b, rhs.c)?,
            dot(self.a, rhs.b, self.b, rhs.d)?,
            dot(self.c, rhs.a, self.d, rhs.c)?,
            dot(self.c, rhs.b, self.d, rhs.d)?,
        ))
    }

    pub fn mul_vec(&self, v: LatticeVector<T>) -> Result<LatticeVector<T>, LatticeError> {
        Ok(LatticeVector::new(
            scalar::add(scalar::mul(self.a, v.x)?, scalar::mul(self.b, v.y)?)?,
            scalar::add(scalar::mul(self.c, v.x)?, scalar::mul(self.d, v.y)?)?,
        ))
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d == T::one() || d == -T::one())
    }

    pub fn is_diagonal(&self) -> bool {
        self.b == T::zero() && self.c == T::zero()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }
}

impl<T: fmt::Display> fmt::Display for IntMatrix2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl<T: Serialize> Serialize for IntMatrix2<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [[&self.a, &self.b], [&self.c, &self.d]].serialize(serializer)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for IntMatrix2<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[T; 2]; 2]>::deserialize(deserializer)?;
        Ok(Self { a, b, c, d })
    }
}
