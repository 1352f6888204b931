use num_complex::Complex64;

use crate::algebra::{Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::geometry::{cross, form, ProjLine, ProjPoint};
use crate::polynomials::roots::aberth;
use crate::polynomials::{QuatPoly, RealPoly, RootSet};

use super::Leg;

/// The coupler conic of two complementary legs.
#[derive(Clone, Debug)]
pub struct CouplerConic<S> {
    /// `σ(t) = (h₁ × η(t)) × (k₁ × κ(t))`, degree ≤ 4.
    pub sigma: QuatPoly<S>,
    /// Monic real content `F` of `σ`.
    pub content: RealPoly<S>,
    /// `G = σ / F`, a quadratic parametrization of the conic.
    pub reduced: QuatPoly<S>,
    /// `G × G′`; its value at `t` represents the tangent at `G(t)`.
    pub tangent: QuatPoly<S>,
    /// `⟨G × G′, G × G′⟩`.
    pub null_tangent_quartic: RealPoly<S>,
    pub null_tangent_roots: RootSet<S>,
    /// Real roots of the quartic, ascending with multiplicity.
    pub null_tangent_params: Vec<S>,
    /// Real meets of pairs of null tangents.
    pub focal_points: Vec<ProjPoint<S>>,
}

fn poly_cross<S: Scalar>(a: &QuatPoly<S>, b: &QuatPoly<S>) -> QuatPoly<S> {
    let sig = a.signature();
    let (na, nb) = (a.coeffs().len(), b.coeffs().len());
    if na == 0 || nb == 0 {
        return QuatPoly::new(sig, Vec::new()).expect("empty");
    }
    let mut out = vec![Quaternion::zero(sig); na + nb - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] = out[i + j].clone() + cross(x, y);
        }
    }
    QuatPoly::new(sig, out).expect("shared signature")
}

fn poly_form<S: Scalar>(a: &QuatPoly<S>, b: &QuatPoly<S>) -> RealPoly<S> {
    let (na, nb) = (a.coeffs().len(), b.coeffs().len());
    if na == 0 || nb == 0 {
        return RealPoly::zero();
    }
    let mut out = vec![S::zero(); na + nb - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            out[i + j] = out[i + j].clone() + form(x, y);
        }
    }
    RealPoly::new(out)
}

fn constant<S: Scalar>(q: &Quaternion<S>) -> QuatPoly<S> {
    QuatPoly::new(q.sig, vec![q.clone()]).expect("single coefficient")
}

/// Component-wise Euclidean division by a real polynomial.
fn div_rem_real<S: Scalar>(p: &QuatPoly<S>, d: &RealPoly<S>) -> Result<(QuatPoly<S>, QuatPoly<S>)> {
    let mut quot = Vec::new();
    let mut rem = Vec::new();
    for idx in 0..4 {
        let (q, r) = p.component(idx).div_rem(d)?;
        quot.push(q);
        rem.push(r);
    }
    let sig = p.signature();
    Ok((
        QuatPoly::from_components(sig, [&quot[0], &quot[1], &quot[2], &quot[3]]),
        QuatPoly::from_components(sig, [&rem[0], &rem[1], &rem[2], &rem[3]]),
    ))
}

/// Remainders of each dividend modulo the monic `t^d + f[d-1] t^(d-1) + … + f[0]`,
/// each scaled by the dividend's largest coefficient.
fn scaled_remainders(dividends: &[Vec<f64>], f: &[f64]) -> Vec<f64> {
    let d = f.len();
    let mut out = Vec::with_capacity(dividends.len() * d);
    for p in dividends {
        let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(f64::MIN_POSITIVE);
        let mut rem = p.clone();
        for k in (d..rem.len()).rev() {
            let c = rem[k];
            for (j, fj) in f.iter().enumerate() {
                rem[k - d + j] -= c * fj;
            }
            rem[k] = 0.0;
        }
        rem.resize(d.max(rem.len()), 0.0);
        out.extend(rem[..d].iter().map(|r| r / scale));
    }
    out
}

/// Gauss–Newton polish of an approximate monic common divisor: the lower
/// coefficients move until every dividend leaves a remainder at rounding
/// level.
fn polish_divisor(dividends: &[Vec<f64>], mut f: Vec<f64>) -> Vec<f64> {
    let d = f.len();
    let size = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
    let mut res = scaled_remainders(dividends, &f);
    for _ in 0..8 {
        let current = size(&res);
        if current == 0.0 {
            break;
        }
        let cols: Vec<Vec<f64>> = (0..d)
            .map(|j| {
                let h = 1e-7 * f[j].abs().max(1.0);
                let (mut up, mut down) = (f.clone(), f.clone());
                up[j] += h;
                down[j] -= h;
                let (ru, rd) = (scaled_remainders(dividends, &up), scaled_remainders(dividends, &down));
                ru.iter().zip(&rd).map(|(a, b)| (a - b) / (2.0 * h)).collect()
            })
            .collect();
        // normal equations, augmented with -Jᵀr
        let mut m: Vec<Vec<f64>> = (0..d)
            .map(|a| {
                let mut row: Vec<f64> = (0..d).map(|b| cols[a].iter().zip(&cols[b]).map(|(x, y)| x * y).sum()).collect();
                row.push(-cols[a].iter().zip(&res).map(|(x, y)| x * y).sum::<f64>());
                row
            })
            .collect();
        let Some(step) = solve_dense(&mut m) else { break };
        let next: Vec<f64> = f.iter().zip(&step).map(|(a, b)| a + b).collect();
        let next_res = scaled_remainders(dividends, &next);
        if size(&next_res) >= current {
            break;
        }
        f = next;
        res = next_res;
    }
    f
}

/// Content of a float coupler curve. The Euclidean gcd loses track when the
/// leading coefficients are small, so the common roots of the components
/// seed a second candidate of the degree a conic needs.
fn float_content<S: Scalar>(sigma: &QuatPoly<S>, gcd: &RealPoly<S>) -> RealPoly<S> {
    let dividends: Vec<Vec<f64>> = (1..4)
        .map(|i| sigma.component(i).coeffs().iter().map(S::to_f64).collect())
        .collect();
    let Some(d) = sigma.degree().and_then(|n| n.checked_sub(2)).filter(|&d| d > 0) else {
        return gcd.clone();
    };
    let size = |f: &[f64]| scaled_remainders(&dividends, f).iter().map(|x| x * x).sum::<f64>();
    let mut seeds = Vec::new();
    if gcd.degree() == Some(d) {
        seeds.push(gcd.coeffs()[..d].iter().map(S::to_f64).collect::<Vec<_>>());
    }
    seeds.extend(common_root_seed(&dividends, d));
    let best = seeds
        .into_iter()
        .map(|f| polish_divisor(&dividends, f))
        .min_by(|a, b| size(a).total_cmp(&size(b)));
    match best {
        Some(f) => {
            let mut coeffs: Vec<S> = f.into_iter().map(S::from_f64).collect();
            coeffs.push(S::one());
            RealPoly::new(coeffs)
        }
        None => gcd.clone(),
    }
}

/// Lower coefficients of the monic degree-`d` polynomial through the `d`
/// roots of a generic combination where every dividend is smallest.
fn common_root_seed(dividends: &[Vec<f64>], d: usize) -> Option<Vec<f64>> {
    let weights = [1.0, 0.754_877_666, 0.569_840_291];
    let len = dividends.iter().map(Vec::len).max()?;
    let mut w = vec![0.0; len];
    for (p, a) in dividends.iter().zip(weights) {
        let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale > 0.0 {
            for (wk, c) in w.iter_mut().zip(p) {
                *wk += a * c / scale;
            }
        }
    }
    while w.last().is_some_and(|c| *c == 0.0) {
        w.pop();
    }
    if w.len() <= d {
        return None;
    }
    let score = |z: Complex64| {
        dividends
            .iter()
            .map(|p| {
                let (mut v, mut m) = (Complex64::new(0.0, 0.0), 0.0);
                for c in p.iter().rev() {
                    v = v * z + c;
                    m = m * z.norm() + c.abs();
                }
                if m > 0.0 { v.norm() / m } else { 0.0 }
            })
            .fold(0.0f64, f64::max)
    };
    let mut roots: Vec<(f64, Complex64)> = aberth(&w).into_iter().map(|z| (score(z), z)).collect();
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut f = vec![Complex64::new(1.0, 0.0)];
    for &(_, z) in roots.iter().take(d) {
        let mut next = vec![Complex64::new(0.0, 0.0); f.len() + 1];
        for (k, c) in f.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * z;
        }
        f = next;
    }
    Some(f[..d].iter().map(|c| c.re).collect())
}

/// Gaussian elimination with partial pivoting on an augmented square system.
fn solve_dense(m: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let k = row[col] / pivot[col];
            for (r, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *r -= k * p;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| m[row][c] * x[c]).sum();
        x[row] = (m[row][n] - s) / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

impl<S: Scalar> CouplerConic<S> {
    /// `[G(t)]`.
    pub fn point(&self, t: &S) -> Result<ProjPoint<S>> {
        ProjPoint::new(self.reduced.evaluate(t))
            .map_err(|_| Error::degenerate(format!("coupler conic parametrization vanishes at t = {t}")))
    }

    /// Tangent `[G(t) × G′(t)]` at `[G(t)]`.
    pub fn tangent_at(&self, t: &S) -> Result<ProjLine<S>> {
        ProjLine::new(self.tangent.evaluate(t))
            .map_err(|_| Error::degenerate(format!("tangent of the coupler conic vanishes at t = {t}")))
    }

    /// Tangents at the real null-tangent parameters.
    pub fn null_tangent_lines(&self) -> Vec<ProjLine<S>> {
        self.null_tangent_params
            .iter()
            .filter_map(|r| self.tangent_at(r).ok())
            .collect()
    }
}

/// Coupler conic of complementary legs `a` (fixed joint `H₁`) and `b`
/// (fixed joint `K₁`).
pub fn coupler_conic<S: Scalar>(a: &Leg<S>, b: &Leg<S>) -> Result<CouplerConic<S>> {
    let la = poly_cross(&constant(a.fixed_joint.rep()), &a.path());
    let lb = poly_cross(&constant(b.fixed_joint.rep()), &b.path());
    let sigma = poly_cross(&la, &lb);
    if sigma.is_zero() {
        return Err(Error::degenerate("leg lines coincide for every parameter"));
    }
    let mut content = (1..4)
        .map(|i| sigma.component(i))
        .try_fold(RealPoly::zero(), |g, p| g.gcd(&p))?;
    if !S::EXACT {
        content = float_content(&sigma, &content);
    }
    let (reduced, rem) = div_rem_real(&sigma, &content)?;
    if !rem.is_zero() || reduced.degree() != Some(2) {
        return Err(Error::non_generic(format!(
            "coupler curve {sigma} does not reduce to a conic"
        )));
    }
    let tangent = poly_cross(&reduced, &reduced.derivative());
    let null_tangent_quartic = poly_form(&tangent, &tangent);
    let null_tangent_roots = null_tangent_quartic.real_roots()?;
    let mut focal_points: Vec<ProjPoint<S>> = Vec::new();
    for m in null_tangent_roots.quadratic_divisors()? {
        let (_, r) = div_rem_real(&tangent, &m)?;
        if let Ok(p) = ProjPoint::new(cross(&r.coeff(1), &r.coeff(0))) {
            if !focal_points.contains(&p) {
                focal_points.push(p);
            }
        }
    }
    Ok(CouplerConic {
        sigma,
        content,
        reduced,
        tangent,
        null_tangent_quartic,
        null_tangent_params: null_tangent_roots.real.clone(),
        null_tangent_roots,
        focal_points,
    })
}
