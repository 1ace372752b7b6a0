//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line and
//! the process exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflexivity::analysis::{PeriodSearch, Verdict};
use reflexivity::dynamics::{check_fixed_point_correspondence, compose_gamma};
use reflexivity::expr::{BinOp, Func, Node};
use reflexivity::{
    classify_stability, detect_period, find_fixed_points, function_distance, orbit, parse_csv,
    to_csv, verify_conjugacy, Expression, Interval64, ReflexiveSystem64, Stability, Termination,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn reflex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflex"))
        .args(args)
        .output()
        .expect("spawn reflex")
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> Result<String, String> {
    if !o.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            o.status.code(),
            String::from_utf8_lossy(&o.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&o.stdout).into_owned())
}

fn iv(lo: f64, hi: f64) -> Interval64 {
    Interval64::new(lo, hi).unwrap()
}

fn system(f: &str, phi: &str, lo: f64, hi: f64) -> ReflexiveSystem64 {
    ReflexiveSystem64::with_image_domain(f.parse().unwrap(), phi.parse().unwrap(), iv(lo, hi))
        .unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dottie() -> Check {
    const DOTTIE: f64 = 0.7390851332;
    let out = reflex(&[
        "simulate", "--f", "cos(x)", "--phi", "y", "--x0", "1", "--steps", "500",
    ]);
    let csv = stdout(&out)?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(stderr.contains("termination: convergence"), || {
        format!("stderr was {stderr:?}")
    })?;
    let states = parse_csv::<f64>(&csv).map_err(|e| e.to_string())?;
    let last = states.last().ok_or("empty orbit")?.x;
    let mut oracle = 1.0f64;
    for _ in 0..500 {
        oracle = oracle.cos();
    }
    ensure((last - DOTTIE).abs() <= 1e-6, || format!("final x {last}"))?;
    ensure((last - oracle).abs() <= 1e-6, || {
        format!("final x {last} vs oracle {oracle}")
    })?;
    Ok(format!(
        "final x = {last:.10} after {} steps, oracle {oracle:.10}",
        states.len() - 1
    ))
}

fn logistic_points() -> Result<Vec<reflexivity::FixedPoint64>, String> {
    let s = system("2.5*x*(1-x)", "y", -0.5, 1.5);
    Ok(find_fixed_points(&s, 4096)
        .map_err(|e| e.to_string())?
        .points)
}

fn logistic_fixed_points() -> Check {
    let r = 2.5;
    let pts = logistic_points()?;
    ensure(pts.len() == 2, || format!("{} fixed points", pts.len()))?;
    let oracle = [0.0, (r - 1.0) / r];
    for (p, x) in pts.iter().zip(oracle) {
        let lambda = r * (1.0 - 2.0 * x);
        ensure((p.x_bar - x).abs() <= 1e-9, || {
            format!("x̄ {} vs {x}", p.x_bar)
        })?;
        ensure((p.multiplier - lambda).abs() <= 1e-9, || {
            format!("λ {} vs {lambda}", p.multiplier)
        })?;
    }
    ensure(pts[0].stability == Stability::Repelling, || {
        "0 not repelling".into()
    })?;
    ensure(pts[1].stability == Stability::Attracting, || {
        "0.6 not attracting".into()
    })?;
    Ok(format!(
        "x̄ = {} (λ = {}, {}), x̄ = {} (λ = {}, {})",
        pts[0].x_bar,
        pts[0].multiplier,
        pts[0].stability,
        pts[1].x_bar,
        pts[1].multiplier,
        pts[1].stability
    ))
}

fn linear_stability() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let trials = 250;
    for k in 0..trials {
        let magnitude = if k % 2 == 0 {
            rng.gen_range(0.1..=0.9)
        } else {
            rng.gen_range(1.1..=10.0)
        };
        let product: f64 = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let a: f64 = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = product / a;
        let s = system(&format!("{a:?}*x"), &format!("{b:?}*y"), -1.0, 1.0);
        let verdict = classify_stability(&s, 0.0, 0.0)
            .map_err(|e| e.to_string())?
            .stability;
        let o = orbit(&s, 1e-3, 1000).map_err(|e| e.to_string())?;
        let last = o.last().unwrap().x.abs();
        let empirical = if o.terminated_by == Termination::Divergence || last > 1.0 {
            Stability::Repelling
        } else if last < 1e-9 {
            Stability::Attracting
        } else {
            Stability::Marginal
        };
        ensure(verdict == empirical, || {
            format!("a = {a}, b = {b}: classifier {verdict}, orbit {empirical} (|x| = {last:e})")
        })?;
    }
    Ok(format!("{trials}/{trials} random linear systems agree"))
}

fn correspondence() -> Check {
    let s = system("2.5*x*(1-x)", "y", -0.5, 1.5);
    let pts = logistic_points()?;
    let mut worst = 0.0f64;
    for p in &pts {
        let r = check_fixed_point_correspondence(&s, p).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("fails at {}", p.x_bar))?;
        worst = worst.max(r.gamma_residual).max(r.phi_map_residual);
    }
    ensure(worst <= 1e-9, || format!("residual {worst:e}"))?;
    Ok(format!("{} points, max residual {worst:e}", pts.len()))
}

fn inverse_pair() -> Check {
    let s = system("2*x+1", "(y-1)/2", -5.0, 5.0);
    for k in 0..=40 {
        let x0 = -5.0 + 0.25 * k as f64 + 0.013;
        let o = orbit(&s, x0, 50).map_err(|e| e.to_string())?;
        let tol = 1e-12 * x0.abs().max(1.0);
        ensure(o.states.iter().all(|st| (st.x - x0).abs() <= tol), || {
            format!("orbit from {x0} moves")
        })?;
    }
    let scan = find_fixed_points(&s, 257).map_err(|e| e.to_string())?;
    ensure(scan.points.len() == 257, || {
        format!("{} of 257 probes fixed", scan.points.len())
    })?;
    ensure(
        scan.points
            .iter()
            .all(|p| p.multiplier == 1.0 && p.stability == Stability::Marginal),
        || "a probe is not marginal with λ = 1".into(),
    )?;
    let d = function_distance(&s, 4096).map_err(|e| e.to_string())?.d;
    ensure(d.abs() <= 1e-10, || format!("d = {d:e}"))?;
    Ok(format!(
        "41 constant orbits, 257 marginal probes, d = {d:e}"
    ))
}

fn distance_offset() -> Check {
    let d = function_distance(&system("2*x", "y/2 + 0.1", 0.0, 10.0), 4096)
        .map_err(|e| e.to_string())?
        .d;
    ensure((d - 0.1).abs() <= 1e-10, || format!("d = {d}"))?;
    Ok(format!("d = {d}"))
}

fn period_two() -> Check {
    let r: f64 = 3.2;
    let s = system("3.2*x*(1-x)", "y", 0.0, 1.0);
    let found = match detect_period(&compose_gamma(&s), 0.3, 64, 1000).map_err(|e| e.to_string())? {
        PeriodSearch::Found(rep) => rep,
        other => return Err(format!("no period found: {other:?}")),
    };
    ensure(found.period == 2, || format!("period {}", found.period))?;
    let root = ((r - 3.0) * (r + 1.0)).sqrt();
    let oracle = [(r + 1.0 - root) / (2.0 * r), (r + 1.0 + root) / (2.0 * r)];
    let mut cycle = found.cycle.clone();
    cycle.sort_by(f64::total_cmp);
    for (c, o) in cycle.iter().zip(oracle) {
        ensure((c - o).abs() <= 1e-5, || format!("cycle point {c} vs {o}"))?;
    }
    Ok(format!(
        "period 2, cycle {{{:.6}, {:.6}}}",
        cycle[0], cycle[1]
    ))
}

fn conjugacy() -> Check {
    let e = |s: &str| s.parse::<Expression>().unwrap();
    let tent = verify_conjugacy(
        &e("1-2*abs(x-0.5)"),
        &e("4*x*(1-x)"),
        &e("sin(1.5707963267948966*x)^2"),
        iv(0.0, 1.0),
        4096,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        tent.verdict.is_consistent() && tent.max_residual <= 1e-9,
        || format!("tent/logistic residual {:e}", tent.max_residual),
    )?;
    let control = verify_conjugacy(&e("2*x"), &e("3*x"), &e("x"), iv(0.0, 1.0), 4096)
        .map_err(|e| e.to_string())?;
    ensure(control.verdict == Verdict::ViolatedAt(1.0), || {
        format!("control verdict {:?}", control.verdict)
    })?;
    ensure((control.max_residual - 1.0).abs() <= 1e-12, || {
        format!("control residual {}", control.max_residual)
    })?;
    Ok(format!(
        "tent/logistic residual {:e}; control rejected with residual {} at x = 1",
        tent.max_residual, control.max_residual
    ))
}

fn case_dichotomy() -> Check {
    let case1 = scenario("case1.json");
    let sim = reflex(&["simulate", "--scenario", &case1]);
    let csv = stdout(&sim)?;
    ensure(
        String::from_utf8_lossy(&sim.stderr).contains("termination: convergence"),
        || "case 1 did not converge".into(),
    )?;
    let xs: Vec<f64> = parse_csv::<f64>(&csv)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.x)
        .collect();
    let tail_start = xs.len() / 10;
    let tail = &xs[tail_start..];
    let monotone = tail.windows(2).all(|w| w[1] <= w[0]) || tail.windows(2).all(|w| w[1] >= w[0]);
    ensure(monotone, || {
        "case 1 x-sequence is not eventually monotone".into()
    })?;
    let events1 = stdout(&reflex(&["boom-bust", "--scenario", &case1]))?
        .lines()
        .count()
        - 1;
    ensure(events1 == 0, || format!("case 1 has {events1} events"))?;

    let bb2 = stdout(&reflex(&[
        "boom-bust",
        "--scenario",
        &scenario("case2.json"),
    ]))?;
    let fractions: Vec<f64> = bb2
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    ensure(fractions.iter().any(|&f| f >= 0.5), || {
        format!("case 2 fractions {fractions:?}")
    })?;
    Ok(format!(
        "case 1: {} states, 0 events; case 2: {} events, max retrace {:.3}",
        xs.len(),
        fractions.len(),
        fractions.iter().cloned().fold(0.0, f64::max)
    ))
}

/// Random tree of depth at most `depth` over the full grammar.
fn random_node(rng: &mut ChaCha8Rng, depth: usize) -> Node {
    if depth == 1 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.6) {
            Node::var("x")
        } else {
            Node::num((rng.gen_range(-2.0..2.0) * 100.0f64).round() / 100.0)
        };
    }
    match rng.gen_range(0..10) {
        0..=3 => {
            let f = Func::ALL[rng.gen_range(0..Func::ALL.len())];
            Node::call(f, random_node(rng, depth - 1))
        }
        4 => Node::negation(random_node(rng, depth - 1)),
        5 => {
            let exp = [2.0, 3.0, 0.5, -1.0, 1.5][rng.gen_range(0..5)];
            Node::binary(BinOp::Pow, random_node(rng, depth - 1), Node::num(exp))
        }
        _ => {
            let op =
                [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Pow][rng.gen_range(0..5)];
            Node::binary(op, random_node(rng, depth - 1), random_node(rng, depth - 1))
        }
    }
}

fn central_difference(e: &Expression, x: f64, h: f64) -> Option<f64> {
    let hi = e.evaluate(x + h).ok()?;
    let lo = e.evaluate(x - h).ok()?;
    Some((hi - lo) / (2.0 * h))
}

/// A random expression in `x` and a safe point: the expression is moderate
/// there and smooth enough that central differences at `h` and `10·h` agree.
fn random_case(rng: &mut ChaCha8Rng, h: f64) -> (Expression, f64) {
    loop {
        let e = match Expression::from_node(random_node(rng, 6)) {
            Ok(e) if e.variable().is_some() => e,
            _ => continue,
        };
        for _ in 0..8 {
            let x: f64 = rng.gen_range(-2.0..2.0);
            let (Ok(y), Ok(_), Some(fine), Some(coarse)) = (
                e.evaluate(x),
                e.derivative(x),
                central_difference(&e, x, h),
                central_difference(&e, x, 10.0 * h),
            ) else {
                continue;
            };
            let scale = fine.abs().max(y.abs()).max(1.0);
            if y.abs() < 1e6 && (fine - coarse).abs() <= 1e-4 * scale {
                return (e, x);
            }
        }
    }
}

fn derivatives() -> Check {
    const H: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (e, x) = random_case(&mut rng, H);
        let exact = e.derivative(x).unwrap();
        let fd = central_difference(&e, x, H).unwrap();
        let scale = exact.abs().max(e.evaluate(x).unwrap().abs()).max(1.0);
        let rel = (exact - fd).abs() / scale;
        worst = worst.max(rel);
        ensure(rel <= 1e-6, || {
            format!("{e} at x = {x}: dual {exact}, central difference {fd}")
        })?;
    }
    Ok(format!("1000 expressions, worst relative gap {worst:e}"))
}

fn round_trips() -> Check {
    let s = system("3.7*x*(1-x)", "y", 0.0, 1.0);
    let o = orbit(&s, 0.123456789, 300).map_err(|e| e.to_string())?;
    let back =
        parse_csv::<f64>(&to_csv(&o).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(
        back.len() == o.states.len()
            && back.iter().zip(&o.states).all(|(a, b)| {
                a.index == b.index
                    && a.x.to_bits() == b.x.to_bits()
                    && a.y.to_bits() == b.y.to_bits()
            }),
        || "CSV round trip is not bit-exact".into(),
    )?;

    let case1 = scenario("case1.json");
    let first = stdout(&reflex(&["staircase", "--scenario", &case1]))?;
    let second = stdout(&reflex(&["staircase", "--scenario", &case1]))?;
    ensure(first == second, || {
        "staircase SVG differs between runs".into()
    })?;
    let p1 = stdout(&reflex(&[
        "portrait",
        "--scenario",
        &scenario("case2.json"),
    ]))?;
    let p2 = stdout(&reflex(&[
        "portrait",
        "--scenario",
        &scenario("case2.json"),
    ]))?;
    ensure(p1 == p2, || "portrait SVG differs between runs".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let text = match Expression::from_node(random_node(&mut rng, 6)) {
            Ok(e) => e.to_string(),
            Err(_) => continue,
        };
        let once: Expression = text.parse().map_err(|err| format!("{text}: {err}"))?;
        let twice: Expression = once
            .to_string()
            .parse()
            .map_err(|err| format!("{once}: {err}"))?;
        ensure(
            twice.root() == once.root() && twice.to_string() == once.to_string(),
            || format!("{text} is not stable"),
        )?;
    }
    Ok(format!(
        "{} CSV rows bit-exact, SVG stable ({} bytes), 1000 expressions re-parse",
        back.len(),
        first.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("dottie convergence", dottie),
        ("logistic fixed points", logistic_fixed_points),
        ("stability of random linear systems", linear_stability),
        ("fixed-point correspondence", correspondence),
        ("inverse-pair degeneracy", inverse_pair),
        ("distance with constant offset", distance_offset),
        ("period-2 cycle", period_two),
        ("conjugacy identity and control", conjugacy),
        ("case dichotomy", case_dichotomy),
        ("dual-number derivatives", derivatives),
        ("determinism and round trips", round_trips),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
