use std::fmt;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::geometry::{collinear, incident, join, quadrance, reflect, ProjLine, ProjPoint};

use super::{coupler_conic, joint_path, CouplerConic, FourBar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Passed => "pass",
            CheckStatus::Failed => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub status: CheckStatus,
    /// Number of identities evaluated.
    pub evaluated: usize,
    /// Largest residual seen, measured on unit representatives.
    pub max_residual: f64,
    /// Offending identities with their parameter values.
    pub failures: Vec<String>,
    /// Why the check was skipped, if it was.
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// No failed check. Skipped checks do not count against the report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn check(&self, id: u8) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {} {}: {} identities", c.status.as_str(), c.id, c.name, c.evaluated)?;
            if c.max_residual > 0.0 {
                write!(f, ", max residual {:.3e}", c.max_residual)?;
            }
            if let Some(n) = &c.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
            for fail in &c.failures {
                writeln!(f, "    {fail}")?;
            }
        }
        Ok(())
    }
}

struct Acc {
    exact: bool,
    evaluated: usize,
    max_residual: f64,
    failures: Vec<String>,
    skipped: Option<String>,
}

impl Acc {
    fn new<S: Scalar>() -> Self {
        Acc { exact: S::EXACT, evaluated: 0, max_residual: 0.0, failures: Vec::new(), skipped: None }
    }

    fn record(&mut self, ok: bool, residual: f64, what: impl FnOnce() -> String) {
        self.evaluated += 1;
        if residual.is_finite() && !(self.exact && ok) {
            self.max_residual = self.max_residual.max(residual);
        }
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.evaluated += 1;
        self.failures.push(what);
    }

    fn skip(mut self, why: impl Into<String>) -> Self {
        self.skipped = Some(why.into());
        self
    }

    fn finish(self, id: u8, name: &'static str) -> Check {
        let status = if !self.failures.is_empty() {
            CheckStatus::Failed
        } else if self.skipped.is_some() && self.evaluated == 0 {
            CheckStatus::Skipped
        } else {
            CheckStatus::Passed
        };
        Check {
            id,
            name,
            status,
            evaluated: self.evaluated,
            max_residual: self.max_residual,
            failures: self.failures,
            note: self.skipped,
        }
    }
}

fn unit<S: Scalar>(v: &[S; 3]) -> [f64; 3] {
    let f = [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()];
    let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 {
        f
    } else {
        f.map(|x| x / n)
    }
}

fn point_residual<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> f64 {
    let (a, b) = (unit(&a.coords()), unit(&b.coords()));
    (0..3)
        .map(|i| {
            let j = (i + 1) % 3;
            (a[i] * b[j] - a[j] * b[i]).abs()
        })
        .fold(0.0, f64::max)
}

fn det_residual<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>, c: &ProjPoint<S>) -> f64 {
    let (a, b, c) = (unit(&a.coords()), unit(&b.coords()), unit(&c.coords()));
    (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]))
        .abs()
}

fn self_form_residual<S: Scalar>(l: &ProjLine<S>) -> f64 {
    let u = unit(&l.coords());
    let e = l.signature().epsilon() as f64;
    (u[0] * u[0] - e * (u[1] * u[1] + u[2] * u[2])).abs()
}

fn incidence_residual<S: Scalar>(l: &ProjLine<S>, x: &ProjPoint<S>) -> f64 {
    let e = l.signature().epsilon() as f64;
    let (u, x) = (unit(&l.coords()), unit(&x.coords()));
    (u[0] * x[0] - e * (u[1] * x[1] + u[2] * x[2])).abs()
}

fn eq_points<S: Scalar>(acc: &mut Acc, a: &ProjPoint<S>, b: &ProjPoint<S>, what: impl FnOnce() -> String) {
    acc.record(a == b, point_residual(a, b), || format!("{}: {a} != {b}", what()));
}

fn eq_scalars<S: Scalar>(acc: &mut Acc, a: &S, b: &S, what: impl FnOnce() -> String) {
    let (x, y) = (a.to_f64(), b.to_f64());
    let r = (x - y).abs() / x.abs().max(y.abs()).max(1.0);
    acc.record(a == b, r, || format!("{}: {a} != {b}", what()));
}

/// Parameter values used by [`verify_linkage`].
pub fn default_samples<S: Scalar>() -> Vec<S> {
    [(-7, 3), (-1, 2), (1, 3), (1, 1), (5, 2), (7, 2), (6, 1)]
        .iter()
        .map(|&(n, d)| S::from_i64(n) * S::from_i64(d).recip().expect("nonzero"))
        .collect()
}

/// Runs every check at the default sample parameters.
pub fn verify_linkage<S: Scalar>(fb: &FourBar<S>) -> Result<VerificationReport> {
    verify_linkage_at(fb, &default_samples())
}

/// Runs every check at the given sample parameters. Errors only when the
/// coupler conic itself cannot be formed in this backend.
pub fn verify_linkage_at<S: Scalar>(fb: &FourBar<S>, samples: &[S]) -> Result<VerificationReport> {
    let pairs = fb.complementary_pairs();
    let mut conics = Vec::new();
    for &(i, j) in &pairs {
        match coupler_conic(&fb.legs[i], &fb.legs[j]) {
            Err(e @ Error::Inexact(_)) => return Err(e),
            c => conics.push(c),
        }
    }
    Ok(VerificationReport {
        checks: vec![
            equal_quadrances(fb, &pairs, samples).finish(1, "equal opposite quadrances"),
            tangent_reflection(fb, &pairs, &conics, samples).finish(2, "tangent reflection"),
            null_quadrilateral(fb, &conics, samples).finish(3, "complete quadrilateral with null sides"),
            linked_collinear(fb, samples).finish(4, "linked vertices collinear"),
            null_tangents_at_roots(fb, &conics).finish(5, "null tangents at norm roots"),
            figure_relations(fb, &pairs, &conics, samples).finish(6, "concurrency and null joins"),
        ],
    })
}

fn equal_quadrances<S: Scalar>(fb: &FourBar<S>, pairs: &[(usize, usize)], samples: &[S]) -> Acc {
    let mut acc = Acc::new::<S>();
    if pairs.is_empty() {
        return acc.skip("no complementary legs");
    }
    for &(i, j) in pairs {
        let (a, b) = (&fb.legs[i], &fb.legs[j]);
        let (h1, h2, k1, k2) = (&a.fixed_joint, &a.moving_joint_initial, &b.fixed_joint, &b.moving_joint_initial);
        let (Ok(leg), Ok(leg_b), Ok(side), Ok(side_b)) =
            (quadrance(h1, h2), quadrance(k1, k2), quadrance(h1, k1), quadrance(h2, k2))
        else {
            acc.skipped = Some("null joint".into());
            continue;
        };
        eq_scalars(&mut acc, &leg, &leg_b, || format!("legs {i},{j} leg quadrances"));
        eq_scalars(&mut acc, &side, &side_b, || format!("legs {i},{j} side quadrances"));
        for t in samples {
            let (Ok(h2t), Ok(k2t)) = (joint_path(a, t), joint_path(b, t)) else { continue };
            let (Ok(lt), Ok(lbt), Ok(st)) = (quadrance(h1, &h2t), quadrance(k1, &k2t), quadrance(&h2t, &k2t))
            else {
                continue;
            };
            eq_scalars(&mut acc, &lt, &lbt, || format!("legs {i},{j} at t = {t}: q(H1,H2(t)) vs q(K1,K2(t))"));
            eq_scalars(&mut acc, &lt, &leg, || format!("legs {i},{j} at t = {t}: q(H1,H2(t)) not constant"));
            eq_scalars(&mut acc, &st, &side, || format!("legs {i},{j} at t = {t}: q(H2(t),K2(t)) vs q(H1,K1)"));
        }
    }
    acc
}

fn tangent_reflection<S: Scalar>(
    fb: &FourBar<S>,
    pairs: &[(usize, usize)],
    conics: &[Result<CouplerConic<S>>],
    samples: &[S],
) -> Acc {
    let mut acc = Acc::new::<S>();
    if pairs.is_empty() {
        return acc.skip("no complementary legs");
    }
    for (&(i, j), conic) in pairs.iter().zip(conics) {
        let conic = match conic {
            Ok(c) => c,
            Err(e) => {
                acc.fail(format!("legs {i},{j}: {e}"));
                continue;
            }
        };
        let (a, b) = (&fb.legs[i], &fb.legs[j]);
        for t in samples {
            let (Ok(tangent), Ok(h2t), Ok(k2t)) = (conic.tangent_at(t), joint_path(a, t), joint_path(b, t)) else {
                continue;
            };
            let (Ok(rh), Ok(rk)) = (reflect(&tangent, &a.fixed_joint), reflect(&tangent, &b.fixed_joint)) else {
                continue;
            };
            eq_points(&mut acc, &rh, &k2t, || format!("legs {i},{j} at t = {t}: reflected H1 vs K2(t)"));
            eq_points(&mut acc, &rk, &h2t, || format!("legs {i},{j} at t = {t}: reflected K1 vs H2(t)"));
        }
    }
    acc
}

/// Null lines through at least three of the points, with the indices of the
/// points on each.
fn null_sides<S: Scalar>(points: &[ProjPoint<S>]) -> Vec<(ProjLine<S>, Vec<usize>, f64)> {
    let mut sides: Vec<(ProjLine<S>, Vec<usize>, f64)> = Vec::new();
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            let Ok(line) = join(&points[a], &points[b]) else { continue };
            if !line.is_null() || sides.iter().any(|(l, _, _)| *l == line) {
                continue;
            }
            let on: Vec<usize> = (0..n).filter(|&c| incident(&line, &points[c])).collect();
            if on.len() >= 3 {
                let r = on
                    .iter()
                    .map(|&c| incidence_residual(&line, &points[c]))
                    .fold(self_form_residual(&line), f64::max);
                sides.push((line, on, r));
            }
        }
    }
    sides
}

fn quadrilateral<S: Scalar>(acc: &mut Acc, fb: &FourBar<S>, points: &[ProjPoint<S>], what: &str) {
    let sides = null_sides(points);
    let residual = sides.iter().map(|s| s.2).fold(0.0, f64::max);
    let shape = sides.len() == 4 && sides.iter().all(|(_, on, _)| on.len() == 3);
    let opposite_apart = (0..points.len()).all(|i| {
        fb.complement_of(i)
            .is_none_or(|j| !sides.iter().any(|(_, on, _)| on.contains(&i) && on.contains(&j)))
    });
    acc.record(shape && opposite_apart, residual, || {
        format!("{what}: found {} null sides with {:?} points", sides.len(), sides.iter().map(|s| s.1.len()).collect::<Vec<_>>())
    });
}

fn null_quadrilateral<S: Scalar>(fb: &FourBar<S>, conics: &[Result<CouplerConic<S>>], samples: &[S]) -> Acc {
    let mut acc = Acc::new::<S>();
    if fb.legs.len() != 6 {
        return acc.skip(format!("{} legs, six are needed", fb.legs.len()));
    }
    let fixed = fb.fixed_joints();
    quadrilateral(&mut acc, fb, &fixed, "fixed joints");
    quadrilateral(&mut acc, fb, &fb.moving_joints_initial(), "moving joints at t = ∞");
    for t in samples {
        let moving: Option<Vec<_>> = fb.moving_joints_at(t).into_iter().collect();
        if let Some(moving) = moving {
            quadrilateral(&mut acc, fb, &moving, &format!("moving joints at t = {t}"));
        }
    }
    for (k, conic) in conics.iter().enumerate() {
        let Ok(conic) = conic else { continue };
        let focal = &conic.focal_points;
        let same = focal.len() == fixed.len() && fixed.iter().all(|p| focal.contains(p));
        acc.record(same, 0.0, || {
            format!("conic {k}: focal points {} differ from the fixed joints", focal.len())
        });
    }
    acc
}

fn linked_collinear<S: Scalar>(fb: &FourBar<S>, samples: &[S]) -> Acc {
    let mut acc = Acc::new::<S>();
    if fb.legs.len() != 6 || fb.legs.iter().any(|l| l.label.is_none()) {
        return acc.skip("labels need four real norm roots");
    }
    let mut positions: Vec<(String, Vec<ProjPoint<S>>)> = vec![("t = ∞".into(), fb.moving_joints_initial())];
    for t in samples {
        if let Some(m) = fb.moving_joints_at(t).into_iter().collect::<Option<Vec<_>>>() {
            positions.push((format!("t = {t}"), m));
        }
    }
    for k in 1..=4u8 {
        let with: Vec<usize> = (0..6).filter(|&i| fb.legs[i].label.is_some_and(|l| l.contains(k))).collect();
        let without: Vec<usize> = (0..6).filter(|i| !with.contains(i)).collect();
        let fixed = fb.fixed_joints();
        let (a, b, c) = (&fixed[without[0]], &fixed[without[1]], &fixed[without[2]]);
        acc.record(collinear(a, b, c), det_residual(a, b, c), || {
            format!("fixed joints of legs without index {k} are not collinear")
        });
        for (when, moving) in &positions {
            let (a, b, c) = (&moving[with[0]], &moving[with[1]], &moving[with[2]]);
            acc.record(collinear(a, b, c), det_residual(a, b, c), || {
                format!("moving joints of legs with index {k} at {when} are not collinear")
            });
        }
    }
    acc
}

fn null_tangents_at_roots<S: Scalar>(fb: &FourBar<S>, conics: &[Result<CouplerConic<S>>]) -> Acc {
    let mut acc = Acc::new::<S>();
    let roots = &fb.norm_roots.real;
    if roots.is_empty() {
        return acc.skip("norm polynomial has no real roots");
    }
    for (k, conic) in conics.iter().enumerate() {
        let conic = match conic {
            Ok(c) => c,
            Err(e) => {
                acc.fail(format!("conic {k}: {e}"));
                continue;
            }
        };
        let params = &conic.null_tangent_params;
        for r in roots {
            let need = roots.iter().filter(|x| *x == r).count();
            let have = params.iter().filter(|x| *x == r).count();
            let dist = params.iter().map(|p| (p.to_f64() - r.to_f64()).abs()).fold(f64::INFINITY, f64::min);
            acc.record(have >= need, dist, || format!("conic {k}: norm root {r} missing from null-tangent parameters"));
            match conic.tangent_at(r) {
                Ok(l) => acc.record(l.is_null(), self_form_residual(&l), || {
                    format!("conic {k}: tangent {l} at norm root {r} is not null")
                }),
                Err(e) => acc.fail(format!("conic {k}: {e}")),
            }
        }
    }
    acc
}

fn figure_relations<S: Scalar>(
    fb: &FourBar<S>,
    pairs: &[(usize, usize)],
    conics: &[Result<CouplerConic<S>>],
    samples: &[S],
) -> Acc {
    let mut acc = Acc::new::<S>();
    let conic = match conics.first() {
        None => return acc.skip("no complementary legs"),
        Some(Err(e)) => {
            acc.fail(e.to_string());
            return acc;
        }
        Some(Ok(c)) => c,
    };
    for t in samples {
        let Some(moving) = fb.moving_joints_at(t).into_iter().collect::<Option<Vec<_>>>() else { continue };
        let Ok(s) = conic.point(t) else { continue };
        for (leg, b) in fb.legs.iter().zip(&moving) {
            let Ok(line) = join(&leg.fixed_joint, b) else { continue };
            acc.record(incident(&line, &s), incidence_residual(&line, &s), || {
                format!("t = {t}: line through {} and {b} misses S(t) = {s}", leg.fixed_joint)
            });
        }
        let Ok(tangent) = conic.tangent_at(t) else { continue };
        if tangent.is_null() {
            continue;
        }
        for &(i, j) in pairs {
            for (f, g) in [(i, j), (j, i)] {
                if let Ok(r) = reflect(&tangent, &fb.legs[f].fixed_joint) {
                    eq_points(&mut acc, &r, &moving[g], || {
                        format!("t = {t}: reflection in the tangent pole maps A of leg {f} off B of leg {g}")
                    });
                }
            }
        }
        linked_null_joins(&mut acc, fb, &moving, &format!("moving joints at t = {t}"));
    }
    linked_null_joins(&mut acc, fb, &fb.fixed_joints(), "fixed joints");
    acc
}

fn linked_null_joins<S: Scalar>(acc: &mut Acc, fb: &FourBar<S>, points: &[ProjPoint<S>], what: &str) {
    for i in 0..fb.legs.len() {
        for j in i + 1..fb.legs.len() {
            let (Some(a), Some(b)) = (fb.legs[i].label, fb.legs[j].label) else { continue };
            if !a.intersects(b) {
                continue;
            }
            match join(&points[i], &points[j]) {
                Ok(l) => acc.record(l.is_null(), self_form_residual(&l), || {
                    format!("{what}: join of {a} and {b} is not null")
                }),
                Err(e) => acc.fail(format!("{what}: {a}/{b}: {e}")),
            }
        }
    }
}
