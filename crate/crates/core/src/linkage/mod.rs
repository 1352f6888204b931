//! Four-bar linkages from factorizations of a quadratic motion polynomial,
//! their coupler conic and the verification of the joint geometry.

mod conic;
mod motion;
mod verify;

pub use conic::{coupler_conic, CouplerConic};
pub use motion::{sample_motion, Trajectory, TrajectoryRow};
pub use verify::{default_samples, verify_linkage, verify_linkage_at, Check, CheckStatus, VerificationReport};

use crate::algebra::{Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::factorization::{all_factorizations, Factorization, Label};
use crate::geometry::{join, meet, midpoints, rotate, rotation_center, ProjPoint};
use crate::polynomials::{QuatPoly, RootSet};

/// One leg: fixed joint `[h₁ − h̄₁]`, moving joint `[h₂ − h̄₂]` in the
/// initial position (the limit `t → ∞`).
#[derive(Clone, Debug)]
pub struct Leg<S> {
    pub factorization: Factorization<S>,
    pub fixed_joint: ProjPoint<S>,
    pub moving_joint_initial: ProjPoint<S>,
    pub label: Option<Label>,
}

impl<S: Scalar> Leg<S> {
    pub fn new(f: Factorization<S>) -> Result<Self> {
        Ok(Leg {
            fixed_joint: rotation_center(&f.h1)?,
            moving_joint_initial: rotation_center(&f.h2)?,
            label: f.label,
            factorization: f,
        })
    }

    /// `η(t) = (t − h₁)(h₂ − h̄₂)(t − h̄₁)`.
    pub fn path(&self) -> QuatPoly<S> {
        let f = &self.factorization;
        let v = f.h2.clone() - f.h2.conjugate();
        let mid = QuatPoly::new(v.sig, vec![v]).expect("single coefficient");
        QuatPoly::linear(&f.h1)
            .mul(&mid)
            .and_then(|p| p.mul(&QuatPoly::linear(&f.h1.conjugate())))
            .expect("shared signature")
    }
}

/// All legs of a generic quadratic motion polynomial.
#[derive(Clone, Debug)]
pub struct FourBar<S> {
    pub source: QuatPoly<S>,
    pub legs: Vec<Leg<S>>,
    pub norm_roots: RootSet<S>,
}

impl<S: Scalar> FourBar<S> {
    /// Index of the leg complementary to leg `i`: disjoint labels when
    /// labels exist, otherwise coprime divisors.
    pub fn complement_of(&self, i: usize) -> Option<usize> {
        let leg = &self.legs[i];
        let norm = self.source.norm_polynomial();
        self.legs.iter().enumerate().position(|(j, other)| {
            j != i
                && match (leg.label, other.label) {
                    (Some(a), Some(b)) => !a.intersects(b),
                    _ => leg.factorization.is_complementary_to(&other.factorization, &norm),
                }
        })
    }

    /// Complementary index pairs `(i, j)` with `i < j`.
    pub fn complementary_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.legs.len())
            .filter_map(|i| self.complement_of(i).filter(|&j| j > i).map(|j| (i, j)))
            .collect()
    }

    pub fn fixed_joints(&self) -> Vec<ProjPoint<S>> {
        self.legs.iter().map(|l| l.fixed_joint.clone()).collect()
    }

    pub fn moving_joints_initial(&self) -> Vec<ProjPoint<S>> {
        self.legs.iter().map(|l| l.moving_joint_initial.clone()).collect()
    }

    /// Moving joints at parameter `t`, `None` where the path degenerates.
    pub fn moving_joints_at(&self, t: &S) -> Vec<Option<ProjPoint<S>>> {
        self.legs.iter().map(|l| joint_path(l, t).ok()).collect()
    }
}

/// Legs from every factorization, labelled by the roots of `C C̄`.
pub fn build_linkage<S: Scalar>(c: &QuatPoly<S>) -> Result<FourBar<S>> {
    let fs = all_factorizations(c)?;
    let legs = fs.into_iter().map(Leg::new).collect::<Result<Vec<_>>>()?;
    Ok(FourBar {
        source: c.clone(),
        legs,
        norm_roots: c.norm_polynomial().real_roots()?,
    })
}

/// Position `[η(t)]` of the leg's moving joint.
pub fn joint_path<S: Scalar>(leg: &Leg<S>, t: &S) -> Result<ProjPoint<S>> {
    ProjPoint::new(leg.path().evaluate(t)).map_err(|_| {
        Error::degenerate(format!("moving joint of {} vanishes at t = {t}", leg.factorization))
    })
}

/// `S(t)`: the meet of the lines `H₁H₂(t)` and `K₁K₂(t)`, continued through
/// the reduced conic parametrization where the lines coincide.
pub fn coupler_point<S: Scalar>(a: &Leg<S>, b: &Leg<S>, t: &S) -> Result<ProjPoint<S>> {
    let raw = || -> Result<ProjPoint<S>> {
        let la = join(&a.fixed_joint, &joint_path(a, t)?)?;
        let lb = join(&b.fixed_joint, &joint_path(b, t)?)?;
        meet(&la, &lb)
    };
    raw().or_else(|_| coupler_conic(a, b)?.point(t))
}

/// Points `B₁₂` with `q(A₁₂, A₃₄) = q(B₁₂, B₃₄)` and
/// `q(A₁₂, B₁₂) = q(A₃₄, B₃₄)`: reflections of `A₃₄` in the midpoints of
/// `A₁₂` and `B₃₄`.
pub fn construct_equal_quadrilateral<S: Scalar>(
    a12: &ProjPoint<S>,
    a34: &ProjPoint<S>,
    b34: &ProjPoint<S>,
) -> Result<Vec<ProjPoint<S>>> {
    if a34 == b34 || a12 == a34 || a12 == b34 {
        return Err(Error::degenerate("coincident input points"));
    }
    let mut out: Vec<ProjPoint<S>> = Vec::new();
    for c in midpoints(a12, b34)? {
        let b12 = rotate::<S>(c.rep(), a34)?;
        if !out.contains(&b12) {
            out.push(b12);
        }
    }
    Ok(out)
}

/// `[C(t) x C̄(t)]`, the image of a tracer point under the motion.
pub fn trace_point<S: Scalar>(c: &QuatPoly<S>, x: &ProjPoint<S>, t: &S) -> Result<ProjPoint<S>> {
    let ct: Quaternion<S> = c.evaluate(t);
    ProjPoint::new(ct.sandwich(x.rep()))
}
