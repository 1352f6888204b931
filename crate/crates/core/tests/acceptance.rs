//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitquat::algebra::{Approx, Exact, Quaternion, Scalar, Signature};
use splitquat::cli::parse_poly;
use splitquat::factorization::{all_factorizations, check_generic, complementary, Factorization, Label};
use splitquat::geometry::{collinear, incident, quadrance, rotate, ProjLine, ProjPoint};
use splitquat::linkage::{build_linkage, coupler_conic, joint_path, verify_linkage, verify_linkage_at, FourBar};
use splitquat::polynomials::{QuatPoly, RealPoly};
use splitquat::Error;

const S: Signature = Signature::Split;
const H: Signature = Signature::Hamiltonian;
const EXAMPLE_1: &str = "t^2 - (2+j+2k)t + (1+2i+j+2k)";
const EXAMPLE_2: &str = "t^2 - (2+j+2k)t + (1-2i+j+2k)";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> Exact {
    Exact::ratio(n, d)
}

/// Quaternion from halves: `q2(sig, [2w, 2x, 2y, 2z])`.
fn q2(sig: Signature, c: [i64; 4]) -> Quaternion<Exact> {
    Quaternion::new(sig, r(c[0], 2), r(c[1], 2), r(c[2], 2), r(c[3], 2))
}

fn q5(sig: Signature, c: [i64; 4]) -> Quaternion<Exact> {
    Quaternion::new(sig, r(c[0], 5), r(c[1], 5), r(c[2], 5), r(c[3], 5))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn pairs_match(fs: &[Factorization<Exact>], expected: &[(Quaternion<Exact>, Quaternion<Exact>)]) -> Result<(), String> {
    ensure(fs.len() == expected.len(), || format!("{} factorizations, expected {}", fs.len(), expected.len()))?;
    for (h1, h2) in expected {
        ensure(fs.iter().any(|f| &f.h1 == h1 && &f.h2 == h2), || format!("missing (t - ({h1}))(t - ({h2}))"))?;
    }
    Ok(())
}

fn cli_exit(args: &[&str]) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_splitquat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    out.status.code().ok_or_else(|| "terminated by signal".into())
}

fn example_1() -> Outcome {
    let start = Instant::now();
    let c = parse_poly(EXAMPLE_1, H).map_err(|e| e.to_string())?;
    let fs = all_factorizations(&c).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    pairs_match(
        &fs,
        &[
            (q5(H, [5, 0, 5, 0]), q5(H, [5, 0, 0, 10])),
            (q5(H, [5, 0, 8, 6]), q5(H, [5, 0, -3, 4])),
        ],
    )?;
    let norm = RealPoly::from_ints(&[2, -2, 1]).mul(&RealPoly::from_ints(&[5, -2, 1]));
    ensure(c.norm_polynomial() == norm, || format!("norm {}", c.norm_polynomial()))?;
    for f in &fs {
        ensure(f.expand() == c, || format!("{f} does not expand to C"))?;
    }
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("2 factorizations, norm (t^2-2t+2)(t^2-2t+5), {elapsed:.1?}"))
}

fn example_2() -> Outcome {
    let start = Instant::now();
    let c = parse_poly(EXAMPLE_2, S).map_err(|e| e.to_string())?;
    let fs = all_factorizations(&c).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    pairs_match(
        &fs,
        &[
            (q2(S, [2, 0, 2, 0]), q2(S, [2, 0, 0, 4])),
            (q5(S, [5, 0, 8, 6]), q5(S, [5, 0, -3, 4])),
            (q2(S, [-1, -3, -1, 3]), q2(S, [5, 3, 3, 1])),
            (q2(S, [5, 3, -1, 3]), q2(S, [-1, -3, 3, 1])),
            (q2(S, [1, 1, 3, 1]), q2(S, [3, -1, -1, 3])),
            (q2(S, [3, -1, 3, 1]), q2(S, [1, 1, -1, 3])),
        ],
    )?;
    let norm = RealPoly::from_roots([&r(0, 1), &r(-1, 1), &r(2, 1), &r(3, 1)]);
    ensure(c.norm_polynomial() == norm, || format!("norm {}", c.norm_polynomial()))?;
    let mut labels: Vec<Label> = fs.iter().filter_map(|f| f.label).collect();
    labels.sort_by_key(|l| l.indices());
    let mut all = Label::all().to_vec();
    all.sort_by_key(|l| l.indices());
    ensure(labels == all, || format!("labels {labels:?}"))?;
    for f in &fs {
        let k = complementary(f).map_err(|e| e.to_string())?;
        let partner = fs.iter().find(|g| g.h1 == k.h1 && g.h2 == k.h2).ok_or("complement not among factorizations")?;
        let (a, b) = (f.label.unwrap(), partner.label.unwrap());
        ensure(!a.intersects(b), || format!("complementary labels {a} and {b} intersect"))?;
    }
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("6 factorizations, norm t(t+1)(t-2)(t-3), labels all 2-subsets, {elapsed:.1?}"))
}

fn complementary_formulas() -> Outcome {
    let f = Factorization {
        h1: q2(S, [2, 0, 2, 0]),
        h2: q2(S, [2, 0, 0, 4]),
        divisor: RealPoly::from_ints(&[-3, -2, 1]),
        label: None,
    };
    let k = complementary(&f).map_err(|e| e.to_string())?;
    ensure(k.h1 == q5(S, [5, 0, 8, 6]), || format!("k1 = {}", k.h1))?;
    ensure(k.h2 == q5(S, [5, 0, -3, 4]), || format!("k2 = {}", k.h2))?;
    let c = parse_poly(EXAMPLE_2, S).map_err(|e| e.to_string())?;
    for f in all_factorizations(&c).map_err(|e| e.to_string())? {
        let back = complementary(&complementary(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(back == f, || format!("involution fails on {f}"))?;
    }
    Ok("k1 = 1 + 8/5j + 6/5k, k2 = 1 - 3/5j + 4/5k, involution on all 6".into())
}

fn example_2_linkage() -> Result<FourBar<Exact>, String> {
    let c = parse_poly(EXAMPLE_2, S).map_err(|e| e.to_string())?;
    build_linkage(&c).map_err(|e| e.to_string())
}

fn leg_index(fb: &FourBar<Exact>, i: u8, j: u8) -> usize {
    fb.legs.iter().position(|l| l.label == Some(Label::new(i, j))).expect("labelled leg")
}

fn theorem_1() -> Outcome {
    let fb = example_2_linkage()?;
    let (a, b) = (&fb.legs[leg_index(&fb, 1, 4)], &fb.legs[leg_index(&fb, 2, 3)]);
    let q = |x: &ProjPoint<Exact>, y: &ProjPoint<Exact>| quadrance(x, y).map_err(|e| e.to_string());
    let legs = (q(&a.fixed_joint, &a.moving_joint_initial)?, q(&b.fixed_joint, &b.moving_joint_initial)?);
    let sides = (q(&a.fixed_joint, &b.fixed_joint)?, q(&a.moving_joint_initial, &b.moving_joint_initial)?);
    ensure(legs == (r(1, 1), r(1, 1)), || format!("leg quadrances {legs:?}"))?;
    ensure(sides == (r(9, 25), r(9, 25)), || format!("side quadrances {sides:?}"))?;
    let samples: Vec<Exact> = (0..20).map(|n| r(4 * n - 37, 7)).collect();
    for t in &samples {
        let (ha, kb) = (joint_path(a, t).map_err(|e| e.to_string())?, joint_path(b, t).map_err(|e| e.to_string())?);
        let (x, y) = (q(&a.fixed_joint, &ha)?, q(&b.fixed_joint, &kb)?);
        ensure(x == y, || format!("t = {t}: {x} != {y}"))?;
    }
    Ok("leg quadrances 1, 1; sides 9/25, 9/25; equal at 20 rational parameters".into())
}

fn corollaries() -> Outcome {
    let start = Instant::now();
    let fb = example_2_linkage()?;
    let fixed = fb.fixed_joints();
    let (i, j) = fb.complementary_pairs()[0];
    let conic = coupler_conic(&fb.legs[i], &fb.legs[j]).map_err(|e| e.to_string())?;
    let params: Vec<Exact> = [-1, 0, 2, 3].map(|n| r(n, 1)).to_vec();
    ensure(conic.null_tangent_params == params, || format!("null tangents at {:?}", conic.null_tangent_params))?;

    // pairwise meets of the null tangents
    let tangents = conic.null_tangent_lines();
    ensure(tangents.len() == 4 && tangents.iter().all(ProjLine::is_null), || "4 null tangents expected".into())?;
    let mut meets = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            meets.push(splitquat::geometry::meet(&tangents[a], &tangents[b]).map_err(|e| e.to_string())?);
        }
    }
    ensure(meets.len() == 6 && meets.iter().all(|m| fixed.contains(m)) && fixed.iter().all(|f| meets.contains(f)), || {
        "null tangent meets differ from the fixed joints".into()
    })?;
    ensure(conic.focal_points.len() == 6 && conic.focal_points.iter().all(|p| fixed.contains(p)), || {
        "focal points differ from the fixed joints".into()
    })?;

    // the side [i + k]
    let side = ProjLine::from_ints(1, 0, 1);
    ensure(side.is_null() && tangents.contains(&side), || "[i + k] is not a null tangent".into())?;
    for p in [(0, 1, 0), (1, 3, 1), (3, -1, 3)] {
        let p = ProjPoint::from_ints(p.0, p.1, p.2);
        ensure(incident(&side, &p) && fixed.contains(&p), || format!("{p} not a fixed joint on [i + k]"))?;
    }

    // linked triples: fixed joints excluding index k, moving joints containing it
    let mut triples = 0;
    for t in [None, Some(r(1, 2)), Some(r(5, 3))] {
        for k in 1..=4u8 {
            let pick = |contains: bool| -> Result<Vec<ProjPoint<Exact>>, String> {
                fb.legs
                    .iter()
                    .filter(|l| l.label.unwrap().contains(k) == contains)
                    .map(|l| match (&t, contains) {
                        (_, false) => Ok(l.fixed_joint.clone()),
                        (None, true) => Ok(l.moving_joint_initial.clone()),
                        (Some(t), true) => joint_path(l, t).map_err(|e| e.to_string()),
                    })
                    .collect()
            };
            let sets = if t.is_none() { vec![pick(false)?, pick(true)?] } else { vec![pick(true)?] };
            for v in sets {
                ensure(v.len() == 3 && collinear(&v[0], &v[1], &v[2]), || format!("triple for index {k} not collinear"))?;
                triples += 1;
            }
        }
    }
    let report = verify_linkage(&fb).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("null tangents at -1, 0, 2, 3; 6 meets = fixed joints; {triples} collinear triples; {elapsed:.1?}"))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Exact {
    r(rng.random_range(-3..=3), rng.random_range(1..=2))
}

fn small_quaternion(rng: &mut ChaCha8Rng) -> Quaternion<Exact> {
    Quaternion::new(S, small_rational(rng), small_rational(rng), small_rational(rng), small_rational(rng))
}

fn random_point(rng: &mut ChaCha8Rng) -> ProjPoint<Exact> {
    loop {
        let q = Quaternion::vector(S, small_rational(rng), small_rational(rng), small_rational(rng));
        if let Ok(p) = ProjPoint::new(q) {
            if !p.is_null() {
                return p;
            }
        }
    }
}

/// Expected number of factorizations from the real-root structure.
fn expected_count<T: Scalar>(c: &QuatPoly<T>) -> Result<usize, Error> {
    let roots = c.norm_polynomial().real_roots()?;
    let n = roots.real.len() + 2 * roots.unresolved.len();
    Ok(n * n.saturating_sub(1) / 2 + roots.complex.len())
}

struct PropertyStats {
    exact: usize,
    float: usize,
    worst_float: f64,
}

fn check_random<T: Scalar>(c: &QuatPoly<T>, samples: &[T], stats: &mut PropertyStats) -> Result<(), String> {
    let fs = all_factorizations(c).map_err(|e| format!("{c}: {e}"))?;
    for f in &fs {
        ensure(f.expand() == *c, || format!("{f} does not expand to {c}"))?;
    }
    let expected = expected_count(c).map_err(|e| e.to_string())?;
    ensure(fs.len() == expected && (fs.len() == 2 || fs.len() == 6), || {
        format!("{c}: {} factorizations, root structure gives {expected}", fs.len())
    })?;
    let fb = build_linkage(c).map_err(|e| format!("{c}: {e}"))?;
    let report = verify_linkage_at(&fb, samples).map_err(|e| format!("{c}: {e}"))?;
    let check = report.check(2).ok_or("tangent reflection check missing")?;
    ensure(check.failures.is_empty() && check.evaluated > 0, || format!("{c}:\n{report}"))?;
    if T::EXACT {
        ensure(check.max_residual == 0.0, || format!("{c}: exact residual {}", check.max_residual))?;
        stats.exact += 1;
    } else {
        ensure(check.max_residual < 1e-9, || format!("{c}: residual {:e}", check.max_residual))?;
        stats.worst_float = stats.worst_float.max(check.max_residual);
        stats.float += 1;
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let samples: Vec<Exact> = [(-13, 7), (-2, 9), (5, 11), (17, 13), (29, 6)].iter().map(|&(n, d)| r(n, d)).collect();
    let float_samples: Vec<Approx> = samples.iter().map(Approx::from_exact).collect();
    let mut stats = PropertyStats { exact: 0, float: 0, worst_float: 0.0 };
    let (mut generic, mut rejected, mut isometries) = (0, 0, 0);
    while generic < 200 {
        let (h1, h2) = (small_quaternion(&mut rng), small_quaternion(&mut rng));
        let c = QuatPoly::linear(&h1).mul(&QuatPoly::linear(&h2)).map_err(|e| e.to_string())?;
        match all_factorizations(&c) {
            Err(Error::NonGeneric(_)) => {
                rejected += 1;
                continue;
            }
            Err(Error::Inexact(_)) => check_random(&c.map(Approx::from_exact), &float_samples, &mut stats)?,
            Err(e) => return Err(format!("{c}: {e}")),
            Ok(_) => check_random(&c, &samples, &mut stats)?,
        }
        generic += 1;

        // rotation by a random invertible quaternion preserves quadrance
        let h = small_quaternion(&mut rng);
        if h.norm().is_zero() {
            continue;
        }
        let (a, b) = (random_point(&mut rng), random_point(&mut rng));
        if a == b {
            continue;
        }
        let (ra, rb) = (rotate(&h, &a).map_err(|e| e.to_string())?, rotate(&h, &b).map_err(|e| e.to_string())?);
        let (before, after) = (quadrance(&a, &b).map_err(|e| e.to_string())?, quadrance(&ra, &rb).map_err(|e| e.to_string())?);
        ensure(before == after, || format!("rotation by {h}: q({a},{b}) = {before}, image {after}"))?;
        isometries += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{generic} generic polynomials ({} exact, {} float, worst residual {:.1e}), {rejected} non-generic skipped, {isometries} isometries, {elapsed:.1?}",
        stats.exact, stats.float, stats.worst_float
    ))
}

fn degeneracy_gates() -> Outcome {
    let cases = [("t^2+1", "split", S), ("(t-i)(t-i)", "hamilton", H), ("t^2+1", "hamilton", H)];
    for (src, alg, sig) in cases {
        let c = parse_poly(src, sig).map_err(|e| e.to_string())?;
        match all_factorizations(&c) {
            Err(Error::NonGeneric(_)) => {}
            other => return Err(format!("{src} over {alg}: {other:?}")),
        }
        let code = cli_exit(&["factor", "--algebra", alg, src])?;
        ensure(code == 2, || format!("{src} over {alg}: exit {code}"))?;
    }
    // (t - i)^2 also has a square norm polynomial
    let c = parse_poly("(t-i)(t-i)", H).map_err(|e| e.to_string())?;
    let report = check_generic(&c).map_err(|e| e.to_string())?;
    ensure(!report.norm_square_free, || "(t - i)^2 reported with a square-free norm".into())?;
    Ok("t^2+1 and (t-i)^2 rejected as non-generic, exit code 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("Hamiltonian example reproduced", example_1),
        ("split example reproduced", example_2),
        ("complementary factorization", complementary_formulas),
        ("equal opposite quadrances", theorem_1),
        ("conic, focal points and null quadrilateral", corollaries),
        ("random generic polynomials", property_suite),
        ("degeneracy gates", degeneracy_gates),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
