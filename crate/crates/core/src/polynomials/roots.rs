//! Real roots of polynomials of degree ≤ 4.
//!
//! The exact solver works on rational polynomials: integer roots of the
//! scaled monic form are found by divisor search, a remaining quartic is
//! split into two integer quadratics, and each quadratic contributes either
//! a complex-conjugate factor or a pair of surds `p ± √q`. The float solver
//! runs Aberth–Ehrlich iteration and clusters nearby roots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RealPoly;
use crate::algebra::{tolerance, Approx, Exact, Scalar};
use crate::error::{Error, Result};

/// Root structure of a real polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<S> {
    /// Real roots in ascending order, repeated according to multiplicity.
    pub real: Vec<S>,
    /// Monic quadratic factors without real roots.
    pub complex: Vec<RealPoly<S>>,
    /// Factors whose real roots the backend cannot represent.
    pub unresolved: Vec<RealPoly<S>>,
}

impl<S: Scalar> RootSet<S> {
    fn empty() -> Self {
        RootSet {
            real: Vec::new(),
            complex: Vec::new(),
            unresolved: Vec::new(),
        }
    }

    /// No repeated real root and no repeated complex factor.
    pub fn is_square_free(&self) -> bool {
        let distinct = |v: &[S]| v.windows(2).all(|w| w[0] != w[1]);
        let distinct_factors = self
            .complex
            .iter()
            .enumerate()
            .all(|(i, a)| self.complex[i + 1..].iter().all(|b| a != b));
        distinct(&self.real) && distinct_factors
    }

    pub fn is_fully_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// Every monic real quadratic divisor: pairs of real roots multiplied out,
    /// complex-conjugate factors kept whole. Duplicates are removed.
    pub fn quadratic_divisors(&self) -> Result<Vec<RealPoly<S>>> {
        if let Some(f) = self.unresolved.first() {
            return Err(Error::Inexact(format!(
                "real roots of {f} are outside the exact backend"
            )));
        }
        let mut out: Vec<RealPoly<S>> = Vec::new();
        for i in 0..self.real.len() {
            for j in i + 1..self.real.len() {
                out.push(RealPoly::from_roots([&self.real[i], &self.real[j]]));
            }
        }
        out.extend(self.complex.iter().cloned());
        let mut dedup: Vec<RealPoly<S>> = Vec::new();
        for d in out {
            if !dedup.contains(&d) {
                dedup.push(d);
            }
        }
        Ok(dedup)
    }
}

fn check_degree<S: Scalar>(p: &RealPoly<S>) -> Result<usize> {
    match p.degree() {
        None => Err(Error::Unsupported("roots of the zero polynomial".into())),
        Some(d) if d > 4 => Err(Error::Unsupported(format!(
            "root finding is limited to degree 4, got degree {d}"
        ))),
        Some(d) => Ok(d),
    }
}

// ---------------------------------------------------------------------------
// Exact
// ---------------------------------------------------------------------------

pub(crate) fn solve_exact(p: &RealPoly<Exact>) -> Result<RootSet<Exact>> {
    let deg = check_degree(p)?;
    let monic = p.monic()?;
    let coeffs: Vec<BigRational> = monic
        .coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::Inexact(format!("irrational coefficient {c} in {p}")))
        })
        .collect::<Result<_>>()?;

    // t = x / L turns the monic rational polynomial into a monic integer one
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lq = BigRational::from_integer(lcm.clone());
    let mut int_poly: Vec<BigInt> = (0..=deg)
        .map(|k| {
            let scaled = &coeffs[k] * num_traits::pow(lq.clone(), deg - k);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();

    let mut set = RootSet::empty();
    let unscale = |x: BigRational| Exact::rational(x / &lq);

    // integer roots with multiplicity
    'outer: while int_poly.len() > 1 {
        if int_poly[0].is_zero() {
            int_poly.remove(0);
            set.real.push(Exact::zero());
            continue;
        }
        let candidates = match divisors(&int_poly[0]) {
            Some(d) => d,
            None => approximate_integer_roots(&int_poly),
        };
        for c in candidates {
            for cand in [c.clone(), -c] {
                if eval_int(&int_poly, &cand).is_zero() {
                    int_poly = deflate(&int_poly, &cand);
                    set.real.push(unscale(BigRational::from_integer(cand)));
                    continue 'outer;
                }
            }
        }
        break;
    }

    let quadratics: Vec<Vec<BigInt>> = match int_poly.len() - 1 {
        0 => Vec::new(),
        2 => vec![int_poly.clone()],
        4 => match split_quartic(&int_poly) {
            Some((a, b)) => vec![a, b],
            None => {
                set.unresolved.push(int_to_t(&int_poly, &lq));
                Vec::new()
            }
        },
        _ => {
            set.unresolved.push(int_to_t(&int_poly, &lq));
            Vec::new()
        }
    };

    let mut radicand: Option<BigInt> = None;
    for quad in quadratics {
        let m = int_to_t(&quad, &lq);
        let b = m.coeff(1);
        let c = m.coeff(0);
        let half_b = b * Exact::ratio(1, 2);
        let disc = half_b.clone() * half_b.clone() - c;
        match disc.signum() {
            Ordering::Less => set.complex.push(m),
            Ordering::Equal => {
                set.real.push(-half_b.clone());
                set.real.push(-half_b);
            }
            Ordering::Greater => {
                let root = disc.sqrt()?.expect("positive discriminant");
                if !root.is_rational() {
                    let d = root.radicand().clone();
                    let compatible = match &radicand {
                        None => true,
                        Some(r) => {
                            let prod: BigInt = r * &d;
                            let s = prod.sqrt();
                            s.clone() * s == prod
                        }
                    };
                    if !compatible {
                        set.unresolved.push(m);
                        continue;
                    }
                    radicand.get_or_insert(d);
                }
                set.real.push(-half_b.clone() - root.clone());
                set.real.push(-half_b + root);
            }
        }
    }
    set.real.sort();
    Ok(set)
}

fn int_to_t(int_poly: &[BigInt], lq: &BigRational) -> RealPoly<Exact> {
    // x = L t; dividing by L^n keeps the result monic
    let n = int_poly.len() - 1;
    RealPoly::new(
        int_poly
            .iter()
            .enumerate()
            .map(|(k, c)| {
                Exact::rational(BigRational::from_integer(c.clone()) / num_traits::pow(lq.clone(), n - k))
            })
            .collect(),
    )
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `x − r`; `r` must be a root.
fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &carry * r + &p[k + 1];
        out[k] = carry.clone();
    }
    out
}

const FACTOR_LIMIT: u64 = 2_000_000;

/// Positive divisors of `n`, or `None` when trial division up to the limit
/// cannot finish the factorization.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p > FACTOR_LIMIT {
            return None;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            primes.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pow = d.clone();
            for _ in 0..=e {
                next.push(pow.clone());
                pow *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Fallback candidates for huge constant terms: nearest integers to the
/// numerically computed real roots.
fn approximate_integer_roots(p: &[BigInt]) -> Vec<BigInt> {
    let coeffs: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    aberth(&coeffs)
        .into_iter()
        .filter(|z| z.im.abs() < 1e-3 * z.re.abs().max(1.0))
        .filter_map(|z| BigInt::from_f64_checked(z.re.round()))
        .map(|c| c.abs())
        .collect()
}

trait FromF64Checked: Sized {
    fn from_f64_checked(v: f64) -> Option<Self>;
}

impl FromF64Checked for BigInt {
    fn from_f64_checked(v: f64) -> Option<Self> {
        num_traits::FromPrimitive::from_f64(v)
    }
}

/// Splits a monic integer quartic into two monic integer quadratics
/// `(x² + px + q)(x² + rx + s)` when possible.
fn split_quartic(f: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let (d, c, b, a) = (&f[0], &f[1], &f[2], &f[3]);
    let candidates: Vec<BigInt> = match divisors(d) {
        Some(divs) => divs.into_iter().flat_map(|x| [x.clone(), -x]).collect(),
        None => return split_quartic_numeric(f),
    };
    for q in candidates {
        let s = d / &q;
        if &q * &s != *d {
            continue;
        }
        if q != s {
            let num = c - &q * a;
            let den = &s - &q;
            if !(&num % &den).is_zero() {
                continue;
            }
            let p = num / den;
            let r = a - &p;
            if &q + &s + &p * &r == *b {
                return Some((vec![q, p, BigInt::one()], vec![s, r, BigInt::one()]));
            }
        } else {
            if *c != &q * a {
                continue;
            }
            // p + r = a, p·r = b − 2q
            let prod = b - &q * 2;
            let disc: BigInt = a * a - &prod * 4;
            if disc.is_negative() {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc || !(a + &root).is_even() {
                continue;
            }
            let p = (a + &root) / 2;
            let r = a - &p;
            return Some((vec![q.clone(), p, BigInt::one()], vec![s, r, BigInt::one()]));
        }
    }
    None
}

fn split_quartic_numeric(f: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let coeffs: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let z = aberth(&coeffs);
    if z.len() != 4 {
        return None;
    }
    let round = |v: f64| -> Option<BigInt> { BigInt::from_f64_checked(v.round()) };
    for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        let quad = |u: Complex64, v: Complex64| -> Option<Vec<BigInt>> {
            Some(vec![round((u * v).re)?, round(-(u + v).re)?, BigInt::one()])
        };
        let (Some(a), Some(b)) = (quad(z[i], z[j]), quad(z[k], z[l])) else {
            continue;
        };
        let prod = mul_int(&a, &b);
        if prod == f {
            return Some((a, b));
        }
    }
    None
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Float
// ---------------------------------------------------------------------------

/// All complex roots of `Σ cₖ xᵏ` (ascending coefficients, nonzero leading).
pub(crate) fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().fold(0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut max_step = 0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

pub(crate) fn solve_approx(p: &RealPoly<Approx>) -> Result<RootSet<Approx>> {
    check_degree(p)?;
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.value()).collect();
    let zs = aberth(&coeffs);
    let eps = tolerance();
    let cluster = eps.sqrt();
    let mut set = RootSet::empty();

    let mut real: Vec<f64> = Vec::new();
    for z in &zs {
        let scale = z.norm().max(1.0);
        if z.im.abs() <= 1e-7f64.max(cluster * 0.1) * scale {
            real.push(polish(&coeffs, z.re));
        } else if z.im > 0.0 {
            set.complex.push(RealPoly::new(vec![
                Approx::new(z.norm_sqr()),
                Approx::new(-2.0 * z.re),
                Approx::new(1.0),
            ]));
        }
    }
    real.sort_by(|a, b| a.total_cmp(b));
    // merge clusters of nearly coincident roots into exact repeats
    let mut i = 0;
    while i < real.len() {
        let mut j = i + 1;
        while j < real.len() && (real[j] - real[i]).abs() <= cluster * real[i].abs().max(1.0) {
            j += 1;
        }
        let mean = real[i..j].iter().sum::<f64>() / (j - i) as f64;
        for r in &mut real[i..j] {
            *r = mean;
        }
        i = j;
    }
    set.real = real.into_iter().map(Approx::new).collect();
    Ok(set)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..4 {
        let (mut p, mut dp) = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        if dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        if !next.is_finite() {
            break;
        }
        x = next;
    }
    x
}
