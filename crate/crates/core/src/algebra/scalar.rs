//! The numeric ground shared by every other module.
//!
//! Two backends implement [`Scalar`]:
//!
//! * [`Exact`]: elements of ℚ(√d), i.e. `a + b·√d` with rational `a`, `b` and a
//!   non-square integer radicand `d`. Plain rationals are the `b = 0` case.
//!   Values with different radicands may coexist, but arithmetic between them
//!   is only defined when the radicands differ by a rational square factor.
//! * [`Approx`]: an `f64` whose comparisons use the module-wide tolerance
//!   returned by [`tolerance`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomials::{roots, RealPoly, RootSet};

/// Field operations plus the handful of extras the factorization and
/// geometry code relies on.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `true` for the exact backend.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn from_exact(x: &Exact) -> Self;
    /// The exact binary value of a finite float.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    /// Zero test under the backend's equality.
    fn is_zero(&self) -> bool;

    /// Sign relative to zero, respecting the tolerance of the float backend.
    fn signum(&self) -> Ordering;

    /// Multiplicative inverse, `None` for (near-)zero values.
    fn recip(&self) -> Option<Self>;

    /// Square root. `Ok(None)` for negative values, `Err(Inexact)` when the
    /// result cannot be represented in this backend.
    fn sqrt(&self) -> Result<Option<Self>>;

    /// Whether `self` is negligible next to a value of size `scale`. Used to
    /// decide when a polynomial remainder has vanished.
    fn negligible_against(&self, scale: &Self) -> bool;

    /// Real roots of a polynomial of degree at most four.
    fn solve_real(p: &RealPoly<Self>) -> Result<RootSet<Self>>;

    /// JSON encoding: exact values as strings, floats as numbers.
    fn to_json(&self) -> serde_json::Value;

    /// Canonical representative of the projective class of a nonzero
    /// vector. Exact: integer coordinates without common content when
    /// possible, first nonzero entry positive. Float: unit length, largest
    /// entry positive.
    fn normalize_projective(v: &[Self]) -> Vec<Self>;

    fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        rhs.recip()
            .map(|r| self.clone() * r)
            .ok_or(Error::NonInvertible)
    }
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// `rat + irr·√rad`, with `irr = 0 ⇔ rad = 1`.
#[derive(Clone, Debug, Eq)]
pub struct Exact {
    rat: BigRational,
    irr: BigRational,
    rad: BigInt,
}

impl Exact {
    pub fn rational(q: BigRational) -> Self {
        Exact {
            rat: q,
            irr: BigRational::zero(),
            rad: BigInt::one(),
        }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// `rat + irr·√rad`; `rad` must be positive. Square factors are pulled
    /// out of the radicand where trial division finds them.
    pub fn surd(rat: BigRational, irr: BigRational, rad: BigInt) -> Self {
        assert!(rad.is_positive(), "radicand must be positive");
        let (outside, inside) = split_square(&rad);
        let irr = irr * BigRational::from_integer(outside);
        Self::normalized(rat, irr, inside)
    }

    fn normalized(rat: BigRational, irr: BigRational, rad: BigInt) -> Self {
        if irr.is_zero() || rad.is_one() {
            let rat = if rad.is_one() { rat + irr } else { rat };
            Self::rational(rat)
        } else {
            Exact { rat, irr, rad }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    /// Radicand, `1` for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.rad
    }

    /// Brings two irrational operands onto a common radicand. Panics when
    /// the radicands are incompatible; callers keep a single radicand per
    /// computation.
    fn aligned(&self, other: &Self) -> (BigRational, BigRational, BigRational, BigRational, BigInt) {
        if self.is_rational() || other.is_rational() || self.rad == other.rad {
            let rad = if self.is_rational() {
                other.rad.clone()
            } else {
                self.rad.clone()
            };
            return (
                self.rat.clone(),
                self.irr.clone(),
                other.rat.clone(),
                other.irr.clone(),
                rad,
            );
        }
        // √d1 = √(d1·d2)/d2 · √d2 when d1·d2 is a perfect square
        let prod: BigInt = &self.rad * &other.rad;
        let root = prod.sqrt();
        assert!(
            &root * &root == prod,
            "arithmetic between incompatible radicands {} and {}",
            self.rad,
            other.rad
        );
        let factor = BigRational::new(root, other.rad.clone());
        (
            self.rat.clone(),
            &self.irr * factor,
            other.rat.clone(),
            other.irr.clone(),
            other.rad.clone(),
        )
    }

    fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.rat);
        let sb = rational_sign(&self.irr);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²·d
        let a2 = &self.rat * &self.rat;
        let b2d = &self.irr * &self.irr * BigRational::from_integer(self.rad.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

fn rational_sign(q: &BigRational) -> Ordering {
    q.numer().sign().cmp_zero()
}

trait CmpZero {
    fn cmp_zero(self) -> Ordering;
}

impl CmpZero for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Writes `n = outside² · inside`, removing square factors found by trial
/// division (bounded) and a final perfect-square check.
pub(crate) fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    const TRIAL_LIMIT: u32 = 100_000;
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut rest = n.abs();
    let mut p: u32 = 2;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut exp = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            outside *= &pb;
        }
        if exp % 2 == 1 {
            inside *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        outside *= r;
    } else {
        inside *= rest;
    }
    (outside, inside)
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        if self.rat != other.rat {
            return false;
        }
        if self.rad == other.rad || self.is_rational() || other.is_rational() {
            return self.irr == other.irr;
        }
        rational_sign(&self.irr) == rational_sign(&other.irr)
            && &self.irr * &self.irr * BigRational::from_integer(self.rad.clone())
                == &other.irr * &other.irr * BigRational::from_integer(other.rad.clone())
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, rhs: Exact) -> Exact {
        if self.is_rational() && rhs.is_rational() {
            return Exact::rational(self.rat + rhs.rat);
        }
        let (a1, b1, a2, b2, d) = self.aligned(&rhs);
        Exact::normalized(a1 + a2, b1 + b2, d)
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, rhs: Exact) -> Exact {
        self + (-rhs)
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact {
            rat: -self.rat,
            irr: -self.irr,
            rad: self.rad,
        }
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, rhs: Exact) -> Exact {
        if self.is_rational() && rhs.is_rational() {
            return Exact::rational(self.rat * rhs.rat);
        }
        let (a1, b1, a2, b2, d) = self.aligned(&rhs);
        let dq = BigRational::from_integer(d.clone());
        let rat = &a1 * &a2 + &b1 * &b2 * dq;
        let irr = a1 * b2 + b1 * a2;
        Exact::normalized(rat, irr, d)
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::rational(BigRational::zero())
    }

    fn one() -> Self {
        Exact::rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Exact::int(v)
    }

    fn from_rational(q: &BigRational) -> Self {
        Exact::rational(q.clone())
    }

    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }

    fn from_f64(v: f64) -> Self {
        Exact::rational(BigRational::from_float(v).expect("finite float"))
    }

    fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let b = self.irr.to_f64().unwrap_or(f64::NAN);
        let d = self.rad.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    fn signum(&self) -> Ordering {
        self.sign()
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Exact::rational(self.rat.recip()));
        }
        // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d)
        let den = &self.rat * &self.rat
            - &self.irr * &self.irr * BigRational::from_integer(self.rad.clone());
        Some(Exact::normalized(
            &self.rat / &den,
            -(&self.irr / &den),
            self.rad.clone(),
        ))
    }

    fn sqrt(&self) -> Result<Option<Self>> {
        if !self.is_rational() {
            return Err(Error::Inexact(format!("square root of {self}")));
        }
        match rational_sign(&self.rat) {
            Ordering::Less => Ok(None),
            Ordering::Equal => Ok(Some(Exact::zero())),
            Ordering::Greater => {
                // √(p/q) = √(p·q)/q
                let n = self.rat.numer() * self.rat.denom();
                let (outside, inside) = split_square(&n);
                let coeff = BigRational::new(outside, self.rat.denom().clone());
                Ok(Some(if inside.is_one() {
                    Exact::rational(coeff)
                } else {
                    Exact::normalized(BigRational::zero(), coeff, inside)
                }))
            }
        }
    }

    fn negligible_against(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn solve_real(p: &RealPoly<Self>) -> Result<RootSet<Self>> {
        roots::solve_exact(p)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn normalize_projective(v: &[Self]) -> Vec<Self> {
        let Some(pivot) = v.iter().find(|c| !c.is_zero()) else {
            return v.to_vec();
        };
        let v: Vec<Exact> = if v.iter().all(Exact::is_rational) {
            v.to_vec()
        } else {
            let inv = pivot.recip().expect("nonzero pivot");
            v.iter().map(|c| c.clone() * inv.clone()).collect()
        };
        if !v.iter().all(Exact::is_rational) {
            return v;
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.rat.denom()));
        let ints: Vec<BigInt> = v.iter().map(|c| (&c.rat * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|n| Exact::rational(BigRational::from_integer(n / &g))).collect()
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return fmt_rational(&self.rat, f);
        }
        if !self.rat.is_zero() {
            fmt_rational(&self.rat, f)?;
            if self.irr.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.irr == -BigRational::one() {
            f.write_str("-")?;
        } else if !self.irr.is_one() {
            fmt_rational(&self.irr, f)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.rad)
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Exact {
    type Err = String;

    /// Accepts the [`Display`](fmt::Display) format: `p`, `p/q`,
    /// `a+b*sqrt(d)`, `a-sqrt(d)`, `b*sqrt(d)`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let Some(idx) = s.find("sqrt(") else {
            return parse_rational(s).map(Exact::rational);
        };
        let rad_text = s[idx + 5..]
            .strip_suffix(')')
            .ok_or_else(|| format!("unterminated sqrt in {s:?}"))?;
        let rad = BigInt::from_str(rad_text).map_err(|e| e.to_string())?;
        if !rad.is_positive() {
            return Err("radicand must be positive".into());
        }
        let prefix = s[..idx].strip_suffix('*').unwrap_or(&s[..idx]);
        let split = prefix
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat_text, irr_text) = match split {
            Some(i) => (&prefix[..i], &prefix[i..]),
            None => ("", prefix),
        };
        let rat = if rat_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(rat_text)?
        };
        let irr = match irr_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t)?,
        };
        Ok(Exact::surd(rat, irr, rad))
    }
}

// ---------------------------------------------------------------------------
// Float backend
// ---------------------------------------------------------------------------

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(1e-9f64.to_bits());

/// Module-wide tolerance ε used by every [`Approx`] comparison.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(AtomicOrdering::Relaxed))
}

/// Sets ε. Non-positive or non-finite values are rejected.
pub fn set_tolerance(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Unsupported(format!("tolerance {eps}")));
    }
    TOLERANCE_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
    Ok(())
}

/// Tolerance-carrying float.
#[derive(Clone, Copy, Debug, Default)]
pub struct Approx(f64);

impl Approx {
    pub fn new(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite scalar {v}");
        Approx(v)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        (self.0 - other.0).abs() <= tolerance() * scale
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            self.0.partial_cmp(&other.0)
        }
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        Approx::new(self.0 + rhs.0)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        Approx::new(self.0 - rhs.0)
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        Approx::new(self.0 * rhs.0)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn zero() -> Self {
        Approx(0.0)
    }

    fn one() -> Self {
        Approx(1.0)
    }

    fn from_i64(v: i64) -> Self {
        Approx(v as f64)
    }

    fn from_rational(q: &BigRational) -> Self {
        Approx::new(q.to_f64().expect("rational out of f64 range"))
    }

    fn from_exact(x: &Exact) -> Self {
        Approx::new(x.to_f64())
    }

    fn from_f64(v: f64) -> Self {
        Approx::new(v)
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn is_zero(&self) -> bool {
        self.0.abs() <= tolerance()
    }

    fn signum(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.0 > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Approx::new(1.0 / self.0))
    }

    fn sqrt(&self) -> Result<Option<Self>> {
        Ok(match self.signum() {
            Ordering::Less => None,
            Ordering::Equal => Some(Approx(0.0)),
            Ordering::Greater => Some(Approx(self.0.sqrt())),
        })
    }

    fn negligible_against(&self, scale: &Self) -> bool {
        // looser than ε: remainders accumulate rounding over several steps
        self.0.abs() <= tolerance().sqrt() * 1e-1 * scale.0.abs().max(1.0)
    }

    fn solve_real(p: &RealPoly<Self>) -> Result<RootSet<Self>> {
        roots::solve_approx(p)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(self.0)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn normalize_projective(v: &[Self]) -> Vec<Self> {
        let len = v.iter().map(|c| c.0 * c.0).sum::<f64>().sqrt();
        if len == 0.0 {
            return v.to_vec();
        }
        let big = v.iter().fold(0.0f64, |m, c| if c.0.abs() > m.abs() { c.0 } else { m });
        let s = big.signum() / len;
        v.iter().map(|c| Approx::new(c.0 * s)).collect()
    }
}
