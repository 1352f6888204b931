use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

/// Multiplication table selector.
///
/// Both algebras share `𝐢² = −1`, `𝐢𝐣 = 𝐤` and `𝐤𝐢 = 𝐣`. They differ in
/// `𝐣² = 𝐤² = ε` and `𝐣𝐤 = −ε𝐢`, with `ε = −1` for Hamiltonian and `ε = +1`
/// for split quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Hamiltonian,
    Split,
}

impl Signature {
    /// The sign `ε` of `𝐣²` and `𝐤²`.
    pub fn epsilon(self) -> i64 {
        match self {
            Signature::Hamiltonian => -1,
            Signature::Split => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Hamiltonian => "hamilton",
            Signature::Split => "split",
        }
    }
}

/// `w + x𝐢 + y𝐣 + z𝐤`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
    pub sig: Signature,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(sig: Signature, w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z, sig }
    }

    pub fn from_ints(sig: Signature, w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(
            sig,
            S::from_i64(w),
            S::from_i64(x),
            S::from_i64(y),
            S::from_i64(z),
        )
    }

    pub fn zero(sig: Signature) -> Self {
        Self::real(sig, S::zero())
    }

    pub fn one(sig: Signature) -> Self {
        Self::real(sig, S::one())
    }

    pub fn real(sig: Signature, w: S) -> Self {
        Self::new(sig, w, S::zero(), S::zero(), S::zero())
    }

    /// The vectorial quaternion `x𝐢 + y𝐣 + z𝐤`.
    pub fn vector(sig: Signature, x: S, y: S, z: S) -> Self {
        Self::new(sig, S::zero(), x, y, z)
    }

    pub fn coords(&self) -> [&S; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn vector_coords(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::new(self.sig, f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_vectorial(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn conjugate(&self) -> Self {
        Quaternion::new(
            self.sig,
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    /// `h h̄`, i.e. `w² + x² − ε(y² + z²)`.
    pub fn norm(&self) -> S {
        let yz = self.y.clone() * self.y.clone() + self.z.clone() * self.z.clone();
        let wx = self.w.clone() * self.w.clone() + self.x.clone() * self.x.clone();
        match self.sig {
            Signature::Hamiltonian => wx + yz,
            Signature::Split => wx - yz,
        }
    }

    /// `(h h̄)⁻¹ h̄`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm().recip().ok_or(Error::NonInvertible)?;
        Ok(self.conjugate().scale(&n))
    }

    /// Vector part `½(h − h̄)`.
    pub fn vector_part(&self) -> Self {
        Quaternion::new(self.sig, S::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.clone() + rhs.clone())
    }

    fn mul_unchecked(&self, b: &Self) -> Self {
        let a = self;
        let p = |u: &S, v: &S| u.clone() * v.clone();
        // jk = −ε i, kj = ε i, j² = k² = ε
        let (w, x) = match self.sig {
            Signature::Hamiltonian => (
                p(&a.w, &b.w) - p(&a.x, &b.x) - p(&a.y, &b.y) - p(&a.z, &b.z),
                p(&a.w, &b.x) + p(&a.x, &b.w) + p(&a.y, &b.z) - p(&a.z, &b.y),
            ),
            Signature::Split => (
                p(&a.w, &b.w) - p(&a.x, &b.x) + p(&a.y, &b.y) + p(&a.z, &b.z),
                p(&a.w, &b.x) + p(&a.x, &b.w) - p(&a.y, &b.z) + p(&a.z, &b.y),
            ),
        };
        let y = p(&a.w, &b.y) + p(&a.y, &b.w) + p(&a.z, &b.x) - p(&a.x, &b.z);
        let z = p(&a.w, &b.z) + p(&a.z, &b.w) + p(&a.x, &b.y) - p(&a.y, &b.x);
        Quaternion::new(self.sig, w, x, y, z)
    }

    /// `h x h̄`.
    pub fn sandwich(&self, x: &Self) -> Self {
        self * x * &self.conjugate()
    }
}

fn assert_same<S>(a: &Quaternion<S>, b: &Quaternion<S>) {
    assert_eq!(a.sig, b.sig, "quaternion signature mismatch");
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        Quaternion::new(self.sig, self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        Quaternion::new(self.sig, self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(self.sig, -self.w, -self.x, -self.y, -self.z)
    }
}

impl<S: Scalar> Mul for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        assert_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl<S: Scalar> Mul<&Quaternion<S>> for Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        &self * rhs
    }
}

impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: Quaternion<S>) -> Quaternion<S> {
        &self * &rhs
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, unit) in [(&self.w, ""), (&self.x, "i"), (&self.y, "j"), (&self.z, "k")] {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.contains("sqrt") || text.contains('e');
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let mag = if compound && !unit.is_empty() { format!("({mag})") } else { mag };
            if unit.is_empty() || mag != "1" {
                f.write_str(&mag)?;
            }
            f.write_str(unit)?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}
