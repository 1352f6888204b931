use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::geometry::ProjPoint;
use crate::polynomials::QuatPoly;

use super::{build_linkage, coupler_conic, coupler_point, joint_path, trace_point, FourBar};

#[derive(Clone, Debug)]
pub struct TrajectoryRow<S> {
    pub t: S,
    /// `C C̄` vanishes at `t`.
    pub null_position: bool,
    /// One entry per leg, `None` where the joint path vanishes.
    pub moving_joints: Vec<Option<ProjPoint<S>>>,
    pub coupler: Option<ProjPoint<S>>,
    pub tracers: Vec<Option<ProjPoint<S>>>,
}

impl<S: Scalar> TrajectoryRow<S> {
    /// Some joint, tracer or the coupler point is undefined at this sample.
    pub fn degenerate(&self) -> bool {
        self.coupler.is_none()
            || self.moving_joints.iter().any(Option::is_none)
            || self.tracers.iter().any(Option::is_none)
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory<S> {
    pub linkage: FourBar<S>,
    /// Column name per leg: its label, or `L1`, `L2`, … without labels.
    pub leg_names: Vec<String>,
    pub tracers: Vec<ProjPoint<S>>,
    pub rows: Vec<TrajectoryRow<S>>,
}

/// Samples `n` equally spaced parameters in `[t_from, t_to]`.
pub fn sample_motion<S: Scalar>(
    c: &QuatPoly<S>,
    t_from: &S,
    t_to: &S,
    n: usize,
    tracers: &[ProjPoint<S>],
) -> Result<Trajectory<S>> {
    if n < 2 {
        return Err(Error::Unsupported(format!("{n} samples, at least 2 are needed")));
    }
    let fb = build_linkage(c)?;
    let pair = fb.complementary_pairs().first().copied();
    let conic = pair.map(|(i, j)| coupler_conic(&fb.legs[i], &fb.legs[j])).transpose()?;
    let norm = c.norm_polynomial();
    let step = (t_to.clone() - t_from.clone()) * S::from_i64(n as i64 - 1).recip().expect("n ≥ 2");
    let rows = (0..n)
        .map(|k| {
            let t = t_from.clone() + step.clone() * S::from_i64(k as i64);
            let coupler = match (pair, &conic) {
                (Some((i, j)), Some(conic)) => conic
                    .point(&t)
                    .ok()
                    .or_else(|| coupler_point(&fb.legs[i], &fb.legs[j], &t).ok()),
                _ => None,
            };
            TrajectoryRow {
                null_position: norm.eval(&t).is_zero(),
                moving_joints: fb.legs.iter().map(|l| joint_path(l, &t).ok()).collect(),
                coupler,
                tracers: tracers.iter().map(|x| trace_point(c, x, &t).ok()).collect(),
                t,
            }
        })
        .collect();
    let leg_names = fb
        .legs
        .iter()
        .enumerate()
        .map(|(i, l)| l.label.map_or_else(|| format!("L{}", i + 1), |lab| lab.to_string()))
        .collect();
    Ok(Trajectory {
        linkage: fb,
        leg_names,
        tracers: tracers.to_vec(),
        rows,
    })
}
