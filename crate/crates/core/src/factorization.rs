//! Factorizations `C = (t − h₁)(t − h₂)` of generic monic quadratics.
//!
//! Every monic real quadratic divisor `M` of the norm polynomial `C C̄`
//! yields one factorization: `h₂` is the unique zero of the linear
//! polynomial `C − M` and `h₁ = −c₁ − h₂`.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::polynomials::{QuatPoly, RealPoly, RootSet};

/// Two-element subset `{i, j}` of `{1, 2, 3, 4}` indexing the ascending
/// roots of `C C̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(u8, u8);

impl Label {
    pub fn new(i: u8, j: u8) -> Self {
        assert!(i != j && (1..=4).contains(&i) && (1..=4).contains(&j));
        Label(i.min(j), i.max(j))
    }

    pub fn indices(self) -> [u8; 2] {
        [self.0, self.1]
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 == i || self.1 == i
    }

    pub fn intersects(self, other: Label) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }

    pub fn complement(self) -> Label {
        let mut rest = (1..=4).filter(|&i| !self.contains(i));
        Label(rest.next().unwrap(), rest.next().unwrap())
    }

    pub fn all() -> [Label; 6] {
        [
            Label(1, 2),
            Label(1, 3),
            Label(1, 4),
            Label(2, 3),
            Label(2, 4),
            Label(3, 4),
        ]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

/// `C = (t − h1)(t − h2)` together with the right factor's norm quadratic
/// `divisor = (t − h2)(t − h̄2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    pub h1: Quaternion<S>,
    pub h2: Quaternion<S>,
    pub divisor: RealPoly<S>,
    pub label: Option<Label>,
}

impl<S: Scalar> Factorization<S> {
    /// `(t − h1)(t − h2)` multiplied out.
    pub fn expand(&self) -> QuatPoly<S> {
        QuatPoly::linear(&self.h1)
            .mul(&QuatPoly::linear(&self.h2))
            .expect("factors share the signature")
    }

    /// Whether this and `other` come from coprime divisors of `C C̄`, i.e.
    /// `N(t − h₂) · N(t − k₂) = C C̄`.
    pub fn is_complementary_to(&self, other: &Self, norm: &RealPoly<S>) -> bool {
        self.divisor.mul(&other.divisor) == *norm
    }
}

impl<S: Scalar> fmt::Display for Factorization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t - ({}))(t - ({}))", self.h1, self.h2)?;
        if let Some(l) = self.label {
            write!(f, " [{l}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub coefficients_independent: bool,
    pub invertible_leading_remainders: bool,
    pub norm_square_free: bool,
    pub verdict: bool,
}

impl GenericityReport {
    /// The first failed check, phrased for an error message.
    pub fn reason(&self) -> Option<&'static str> {
        if !self.coefficients_independent {
            Some("coefficients 1, c1, c0 are linearly dependent")
        } else if !self.norm_square_free {
            Some("norm polynomial has a repeated factor")
        } else if !self.invertible_leading_remainders {
            Some("some remainder C - M has a non-invertible leading coefficient")
        } else {
            None
        }
    }
}

fn require_monic_quadratic<S: Scalar>(c: &QuatPoly<S>) -> Result<()> {
    if c.degree() != Some(2) || !c.is_monic() {
        return Err(Error::Unsupported(format!(
            "expected a monic quadratic polynomial, got {c}"
        )));
    }
    Ok(())
}

/// Runs the genericity checks on a monic quadratic.
pub fn check_generic<S: Scalar>(c: &QuatPoly<S>) -> Result<GenericityReport> {
    require_monic_quadratic(c)?;
    let c1 = c.coeff(1);
    let c0 = c.coeff(0);

    // {1, c₁, c₀} independent ⇔ the vector parts of c₁, c₀ are independent
    let [a, b] = [c1.vector_coords(), c0.vector_coords()];
    let minor = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    let coefficients_independent = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .any(|(i, j)| !minor(i, j).is_zero());

    let roots = c.norm_polynomial().real_roots()?;
    let norm_square_free = roots.is_square_free();
    let invertible_leading_remainders = roots
        .quadratic_divisors()?
        .iter()
        .all(|m| !(c1.clone() - Quaternion::real(c.signature(), m.coeff(1))).norm().is_zero());

    Ok(GenericityReport {
        coefficients_independent,
        invertible_leading_remainders,
        norm_square_free,
        verdict: coefficients_independent && invertible_leading_remainders && norm_square_free,
    })
}

/// The factorization belonging to the monic quadratic divisor `m` of `C C̄`.
pub fn factor_from_divisor<S: Scalar>(c: &QuatPoly<S>, m: &RealPoly<S>) -> Result<Factorization<S>> {
    require_monic_quadratic(c)?;
    if m.degree() != Some(2) || !m.is_monic() {
        return Err(Error::Unsupported(format!("divisor {m} is not a monic quadratic")));
    }
    let r = c.sub(&QuatPoly::from_real(c.signature(), m))?;
    let h2 = r.linear_zero()?;
    let h1 = -c.coeff(1) - h2.clone();
    Ok(Factorization {
        h1,
        h2,
        divisor: m.clone(),
        label: None,
    })
}

fn cmp_divisors<S: Scalar>(a: &RealPoly<S>, b: &RealPoly<S>) -> Ordering {
    let key = |p: &RealPoly<S>| (p.coeff(1), p.coeff(0));
    let (ka, kb) = (key(a), key(b));
    ka.0
        .partial_cmp(&kb.0)
        .unwrap_or(Ordering::Equal)
        .then(ka.1.partial_cmp(&kb.1).unwrap_or(Ordering::Equal))
}

/// Every factorization of a generic monic quadratic, ordered by divisor
/// (linear coefficient, then constant). Labels are attached when `C C̄` has
/// four distinct real roots.
pub fn all_factorizations<S: Scalar>(c: &QuatPoly<S>) -> Result<Vec<Factorization<S>>> {
    let report = check_generic(c)?;
    if let Some(reason) = report.reason() {
        return Err(Error::non_generic(reason));
    }
    let roots = c.norm_polynomial().real_roots()?;
    let mut divisors = roots.quadratic_divisors()?;
    divisors.sort_by(cmp_divisors);
    let fs = divisors
        .iter()
        .map(|m| factor_from_divisor(c, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(label_factorizations(fs, &roots))
}

/// The complementary factorization `C = (t − k₁)(t − k₂)`, whose right
/// divisor is the norm polynomial of the left factor `t − h₁`.
///
/// `k₂` is the zero of `C − (t − h₁)(t − h̄₁) = (t − h₁)(h̄₁ − h₂)`, namely
/// `(h₂ − h̄₁)⁻¹ h₁ (h₂ − h̄₁)`, and `k₁ = h₁ + h₂ − k₂`.
pub fn complementary<S: Scalar>(f: &Factorization<S>) -> Result<Factorization<S>> {
    let x = f.h2.clone() - f.h1.conjugate();
    let x_inv = x.inverse().map_err(|_| {
        Error::non_generic(format!("difference {x} of right factor and conjugate left factor is not invertible"))
    })?;
    let k2 = &(&x_inv * &f.h1) * &x;
    let k1 = f.h1.clone() + f.h2.clone() - k2.clone();
    let divisor = RealPoly::new(vec![k2.norm(), -(k2.w.clone() + k2.w.clone()), S::one()]);
    Ok(Factorization {
        h1: k1,
        h2: k2,
        divisor,
        label: f.label.map(Label::complement),
    })
}

/// Attaches labels `{i, j}` where `divisor = (t − tᵢ)(t − tⱼ)` for the
/// ascending roots `t₁ < … < t₄`. Labels are cleared unless there are four
/// distinct real roots.
pub fn label_factorizations<S: Scalar>(
    mut fs: Vec<Factorization<S>>,
    roots: &RootSet<S>,
) -> Vec<Factorization<S>> {
    let labelled = roots.real.len() == 4 && roots.is_square_free();
    for f in &mut fs {
        f.label = None;
        if !labelled {
            continue;
        }
        'search: for i in 0..4 {
            for j in i + 1..4 {
                if RealPoly::from_roots([&roots.real[i], &roots.real[j]]) == f.divisor {
                    f.label = Some(Label::new(i as u8 + 1, j as u8 + 1));
                    break 'search;
                }
            }
        }
    }
    fs
}
