//! Samples the motion and prints the trajectory table as CSV.
//!
//! `cargo run --example simulate -- 21` sets the number of samples.

use splitquat::algebra::{Exact, Signature};
use splitquat::cli::parse_poly;
use splitquat::geometry::ProjPoint;
use splitquat::linkage::sample_motion;

fn main() -> splitquat::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let c = parse_poly("t^2 - (2+j+2k)t + (1-2i+j+2k)", Signature::Split)?;
    let tracer = ProjPoint::from_ints(1, 3, 1);
    let traj = sample_motion(&c, &Exact::int(-2), &Exact::int(4), n, &[tracer])?;

    let mut w = csv::Writer::from_writer(std::io::stdout());
    let mut header = vec!["t".to_string()];
    header.extend(traj.leg_names.iter().map(|n| format!("B{n}")));
    header.extend(["S".to_string(), "tracer".to_string()]);
    w.write_record(&header).expect("stdout");
    let show = |p: &Option<ProjPoint<Exact>>| p.as_ref().map_or("-".to_string(), |p| p.to_string());
    for row in &traj.rows {
        let mut rec = vec![row.t.to_string()];
        rec.extend(row.moving_joints.iter().map(show));
        rec.push(show(&row.coupler));
        rec.push(show(&row.tracers[0]));
        w.write_record(&rec).expect("stdout");
    }
    w.flush().expect("stdout");
    Ok(())
}
