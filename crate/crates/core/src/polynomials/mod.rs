//! Polynomials with a central indeterminate `t`: quaternion coefficients
//! ([`QuatPoly`]) and real coefficients ([`RealPoly`]), plus real-root
//! extraction for the norm quartic.

pub mod roots;

use std::fmt;

use crate::algebra::{Quaternion, Scalar, Signature};
use crate::error::{Error, Result};

pub use roots::RootSet;

/// Real polynomial, `coeffs[i]` multiplies `tⁱ`. Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> RealPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `t − r`.
    pub fn linear_root(r: S) -> Self {
        Self::new(vec![-r, S::one()])
    }

    /// `∏ (t − rᵢ)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a S>) -> Self {
        roots
            .into_iter()
            .fold(Self::constant(S::one()), |acc, r| acc.mul(&Self::linear_root(r.clone())))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == S::one())
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::degenerate("zero polynomial has no monic form"))?;
        let inv = lead.recip().ok_or(Error::NonInvertible)?;
        Ok(self.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    fn max_abs(&self) -> S {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(S::zero(), |m, c| if c > m { c } else { m })
    }

    /// Euclidean division. Remainder coefficients negligible next to the
    /// dividend are dropped.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::degenerate("division by the zero polynomial"))?;
        let inv = divisor.leading().and_then(|c| c.recip()).ok_or(Error::NonInvertible)?;
        let scale = self.max_abs();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * inv.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        let rem = rem
            .into_iter()
            .map(|c| if c.negligible_against(&scale) { S::zero() } else { c })
            .collect();
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; the zero polynomial when both inputs
    /// vanish.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Real roots with multiplicity plus irreducible quadratic factors.
    pub fn real_roots(&self) -> Result<RootSet<S>> {
        S::solve_real(self)
    }
}

impl<S: Scalar> fmt::Display for RealPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(r) if !text.contains("sqrt") => (true, r.to_string()),
                _ => (false, text),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if mag.contains("sqrt") { format!("({mag})") } else { mag };
            match i {
                0 => f.write_str(&mag)?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag} ")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in `S[t]` with quaternion coefficients. `t` commutes with the
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatPoly<S> {
    sig: Signature,
    coeffs: Vec<Quaternion<S>>,
}

impl<S: Scalar> QuatPoly<S> {
    pub fn new(sig: Signature, mut coeffs: Vec<Quaternion<S>>) -> Result<Self> {
        if coeffs.iter().any(|c| c.sig != sig) {
            return Err(Error::SignatureMismatch);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(QuatPoly { sig, coeffs })
    }

    fn from_parts(sig: Signature, coeffs: Vec<Quaternion<S>>) -> Self {
        Self::new(sig, coeffs).expect("coefficients share the signature")
    }

    /// `t − h`.
    pub fn linear(h: &Quaternion<S>) -> Self {
        Self::from_parts(h.sig, vec![-h.clone(), Quaternion::one(h.sig)])
    }

    /// `t² + c₁t + c₀`.
    pub fn monic_quadratic(c1: Quaternion<S>, c0: Quaternion<S>) -> Result<Self> {
        let sig = c1.sig;
        Self::new(sig, vec![c0, c1, Quaternion::one(sig)])
    }

    pub fn from_real(sig: Signature, p: &RealPoly<S>) -> Self {
        Self::from_parts(
            sig,
            p.coeffs().iter().map(|c| Quaternion::real(sig, c.clone())).collect(),
        )
    }

    /// Assembles a polynomial from its four coordinate polynomials.
    pub fn from_components(sig: Signature, parts: [&RealPoly<S>; 4]) -> Self {
        let n = parts.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        Self::from_parts(
            sig,
            (0..n)
                .map(|i| {
                    Quaternion::new(
                        sig,
                        parts[0].coeff(i),
                        parts[1].coeff(i),
                        parts[2].coeff(i),
                        parts[3].coeff(i),
                    )
                })
                .collect(),
        )
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Coefficient-wise conversion, e.g. from the exact to the float backend.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QuatPoly<T> {
        QuatPoly::new(self.sig, self.coeffs.iter().map(|c| c.map(&f)).collect()).expect("same signature")
    }

    pub fn coeffs(&self) -> &[Quaternion<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Quaternion<S> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Quaternion::zero(self.sig))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == Quaternion::one(self.sig))
    }

    /// Coordinate polynomial: 0 = real part, 1..=3 = 𝐢, 𝐣, 𝐤.
    pub fn component(&self, idx: usize) -> RealPoly<S> {
        RealPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.coords()[idx].clone())
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.sig, (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(self.sig, (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    /// Convolution with non-commutative coefficient products.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::from_parts(self.sig, Vec::new()));
        }
        let mut out = vec![Quaternion::zero(self.sig); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        Self::new(self.sig, out)
    }

    /// Multiplies by a real polynomial (central, so the side is irrelevant).
    pub fn scale_real(&self, p: &RealPoly<S>) -> Self {
        let q = Self::from_real(self.sig, p);
        self.mul(&q).expect("same signature")
    }

    pub fn conjugate(&self) -> Self {
        Self::from_parts(self.sig, self.coeffs.iter().map(|c| c.conjugate()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_parts(
            self.sig,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&S::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation at a real parameter.
    pub fn evaluate(&self, t: &S) -> Quaternion<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::zero(self.sig), |acc, c| acc.scale(t) + c.clone())
    }

    /// `C C̄` as a real polynomial.
    pub fn norm_polynomial(&self) -> RealPoly<S> {
        let prod = self
            .mul(&self.conjugate())
            .expect("a polynomial and its conjugate share the signature");
        assert!(
            prod.coeffs.iter().all(|c| c.is_real()),
            "C·C̄ must be real; got {prod}"
        );
        RealPoly::new(prod.coeffs.into_iter().map(|c| c.w).collect())
    }

    /// The unique `h` with `r₁h + r₀ = 0` for `R = r₁t + r₀`, i.e. `−r₁⁻¹r₀`.
    pub fn linear_zero(&self) -> Result<Quaternion<S>> {
        if self.degree() != Some(1) {
            return Err(Error::Unsupported(format!(
                "linear_zero needs a degree-1 polynomial, got {self}"
            )));
        }
        let inv = self.coeffs[1].inverse().map_err(|_| {
            Error::non_generic(format!(
                "leading coefficient {} of {self} is not invertible",
                self.coeffs[1]
            ))
        })?;
        Ok(-(&inv * &self.coeffs[0]))
    }
}

impl<S: Scalar> fmt::Display for QuatPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let one = *c == Quaternion::one(self.sig);
            match (i, one) {
                (0, _) => write!(f, "({c})")?,
                (_, true) => {}
                _ => write!(f, "({c}) ")?,
            }
            if i > 0 {
                f.write_str("t")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Exact;
    use proptest::prelude::*;

    const S: Signature = Signature::Split;
    const H: Signature = Signature::Hamiltonian;

    fn q(sig: Signature, w: i64, x: i64, y: i64, z: i64) -> Quaternion<Exact> {
        Quaternion::from_ints(sig, w, x, y, z)
    }

    fn qr(sig: Signature, c: [(i64, i64); 4]) -> Quaternion<Exact> {
        let s = |(n, d): (i64, i64)| Exact::ratio(n, d);
        Quaternion::new(sig, s(c[0]), s(c[1]), s(c[2]), s(c[3]))
    }

    fn example(sig: Signature, x0: i64) -> QuatPoly<Exact> {
        QuatPoly::monic_quadratic(q(sig, -2, 0, -1, -2), q(sig, 1, x0, 1, 2)).unwrap()
    }

    #[test]
    fn product_of_linear_factors() {
        let l1 = QuatPoly::linear(&q(S, 1, 0, 1, 0));
        let l2 = QuatPoly::linear(&q(S, 1, 0, 0, 2));
        assert_eq!(l1.mul(&l2).unwrap(), example(S, -2));
        let l1 = QuatPoly::linear(&q(H, 1, 0, 1, 0));
        let l2 = QuatPoly::linear(&q(H, 1, 0, 0, 2));
        assert_eq!(l1.mul(&l2).unwrap(), example(H, 2));
        let one = QuatPoly::from_real(S, &RealPoly::from_ints(&[1]));
        assert_eq!(example(S, -2).mul(&one).unwrap(), example(S, -2));
    }

    #[test]
    fn conjugate_polynomial() {
        let c = example(S, -2).conjugate();
        let expected =
            QuatPoly::monic_quadratic(q(S, -2, 0, 1, 2), q(S, 1, 2, -1, -2)).unwrap();
        assert_eq!(c, expected);
        let real = QuatPoly::from_real(S, &RealPoly::<Exact>::from_ints(&[3, 0, 1]));
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn norm_polynomials_of_examples() {
        // t(t+1)(t−2)(t−3) = t⁴ − 4t³ + t² + 6t
        assert_eq!(
            example(S, -2).norm_polynomial(),
            RealPoly::from_ints(&[0, 6, 1, -4, 1])
        );
        let m1 = RealPoly::from_ints(&[2, -2, 1]);
        let m2 = RealPoly::from_ints(&[5, -2, 1]);
        assert_eq!(example(H, 2).norm_polynomial(), m1.mul(&m2));
        let l = QuatPoly::linear(&q(S, 0, 0, 1, 0));
        assert_eq!(l.norm_polynomial(), RealPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn evaluation() {
        let c = example(S, -2);
        assert_eq!(c.evaluate(&Exact::int(0)), q(S, 1, -2, 1, 2));
        let l = QuatPoly::linear(&q(S, 0, 0, 1, 0));
        assert_eq!(l.evaluate(&Exact::int(1)), q(S, 1, 0, -1, 0));
        // 2 is a root of C C̄, so C(2) is a zero divisor
        assert_eq!(c.norm_polynomial().eval(&Exact::int(2)), Exact::int(0));
        assert_eq!(c.evaluate(&Exact::int(2)).norm(), Exact::int(0));
    }

    #[test]
    fn linear_zeros() {
        let r = QuatPoly::new(S, vec![q(S, 0, 0, 0, 1), q(S, 0, 0, 1, 0)]).unwrap();
        let h = r.linear_zero().unwrap();
        assert_eq!(h, q(S, 0, 1, 0, 0));
        // substitute back: r₁h + r₀ = 0
        assert!((&r.coeffs()[1] * &h + r.coeffs()[0].clone()).is_zero());

        let r = QuatPoly::new(S, vec![q(S, 1, -2, 1, 2), q(S, 0, 0, -1, -2)]).unwrap();
        let h = r.linear_zero().unwrap();
        assert_eq!(h, qr(S, [(1, 1), (0, 1), (-3, 5), (4, 5)]));
        assert!((&r.coeffs()[1] * &h + r.coeffs()[0].clone()).is_zero());

        let r = QuatPoly::linear(&q(S, 5, 0, 0, 0));
        assert_eq!(r.linear_zero().unwrap(), q(S, 5, 0, 0, 0));

        let null = QuatPoly::new(S, vec![q(S, 1, 0, 0, 0), q(S, 0, 1, 1, 0)]).unwrap();
        assert!(matches!(null.linear_zero(), Err(Error::NonGeneric(_))));
    }

    #[test]
    fn real_poly_division_and_gcd() {
        let a = RealPoly::<Exact>::from_ints(&[0, 6, 1, -4, 1]);
        let b = RealPoly::from_ints(&[0, -2, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, RealPoly::from_ints(&[-3, -2, 1]));
        let g = a.gcd(&RealPoly::from_ints(&[-6, 1, 1])).unwrap();
        assert_eq!(g, RealPoly::from_ints(&[-2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(example(S, -2).to_string(), "t^2 + (-2 - j - 2k) t + (1 - 2i + j + 2k)");
        assert_eq!(RealPoly::<Exact>::from_ints(&[0, 6, 1, -4, 1]).to_string(), "t^4 - 4 t^3 + t^2 + 6 t");
    }

    fn small_quat(sig: Signature) -> impl Strategy<Value = Quaternion<Exact>> {
        proptest::array::uniform4(-4i64..=4)
            .prop_map(move |[w, x, y, z]| Quaternion::from_ints(sig, w, x, y, z))
    }

    fn small_poly(sig: Signature) -> impl Strategy<Value = QuatPoly<Exact>> {
        proptest::collection::vec(small_quat(sig), 1..4)
            .prop_map(move |cs| QuatPoly::new(sig, cs).unwrap())
    }

    proptest! {
        #[test]
        fn norm_polynomial_is_multiplicative(p in small_poly(S), r in small_poly(S)) {
            let pr = p.mul(&r).unwrap();
            prop_assert_eq!(pr.norm_polynomial(), p.norm_polynomial().mul(&r.norm_polynomial()));
            prop_assert_eq!(pr.conjugate(), r.conjugate().mul(&p.conjugate()).unwrap());
        }

        #[test]
        fn linear_norm_is_real_quadratic(h in small_quat(S)) {
            let n = QuatPoly::linear(&h).norm_polynomial();
            let expected = RealPoly::new(vec![
                h.norm(),
                -(h.w.clone() + h.w.clone()),
                Exact::int(1),
            ]);
            prop_assert_eq!(n, expected);
        }
    }
}
