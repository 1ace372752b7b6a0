use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use reflexivity::analysis::{PeriodSearch, Verdict};
use reflexivity::analysis::{
    DEFAULT_BURN_IN, DEFAULT_CONJUGACY_SAMPLES, DEFAULT_DISTANCE_SAMPLES, DEFAULT_MAX_PERIOD,
    DEFAULT_MIN_RUN, DEFAULT_RETRACE_THRESHOLD,
};
use reflexivity::dynamics::{compose_gamma, DEFAULT_GRID};
use reflexivity::render::DEFAULT_CURVE_SAMPLES;
use reflexivity::{
    detect_boom_bust, detect_period, find_fixed_points, function_distance, orbit, phase_portrait,
    to_csv, to_svg, verify_conjugacy, Expression, Interval64, Orbit64, ReflexiveSystem64,
    SvgOptions,
};

use crate::failure::Failure;
use crate::scenario::Scenario;
use crate::{
    BoomBustArgs, ConjugacyArgs, DistanceArgs, FixedPointArgs, OrbitArgs, OutArgs, PeriodArgs,
    PortraitArgs, RenderArgs, SimulateArgs, StaircaseArgs, SystemArgs,
};

pub const DEFAULT_DOMAIN: [f64; 2] = [0.0, 1.0];
pub const DEFAULT_STEPS: usize = 100;

type CmdResult = Result<(), Failure>;

fn interval(bounds: [f64; 2]) -> Result<Interval64, Failure> {
    Ok(Interval64::new(bounds[0], bounds[1])?)
}

fn pair(v: &Option<Vec<f64>>) -> Option<[f64; 2]> {
    v.as_ref().map(|v| [v[0], v[1]])
}

/// A system plus the scenario it was assembled from, with inline flags applied.
struct Setup {
    system: ReflexiveSystem64,
    scenario: Scenario,
}

fn setup(args: &SystemArgs) -> Result<Setup, Failure> {
    let mut sc = match &args.scenario {
        Some(path) => Scenario::load(path)?,
        None => Scenario::default(),
    };
    if let Some(f) = &args.f {
        sc.f = Some(f.clone());
    }
    if let Some(phi) = &args.phi {
        sc.phi = Some(phi.clone());
    }
    if let Some(d) = pair(&args.domain) {
        sc.x_domain = Some(d);
    }
    if let Some(d) = pair(&args.y_domain) {
        sc.y_domain = Some(d);
    }
    let f = Expression::parse(sc.f.as_deref().ok_or_else(|| Failure::missing("f"))?)?;
    let phi = Expression::parse(sc.phi.as_deref().ok_or_else(|| Failure::missing("phi"))?)?;
    let x_domain = interval(sc.x_domain.unwrap_or(DEFAULT_DOMAIN))?;
    let system = match sc.y_domain {
        Some(d) => ReflexiveSystem64::new(f, phi, x_domain, interval(d)?)?,
        None => ReflexiveSystem64::with_image_domain(f, phi, x_domain)?,
    };
    Ok(Setup {
        system,
        scenario: sc,
    })
}

impl Setup {
    fn run_orbit(&mut self, args: &OrbitArgs) -> Result<Orbit64, Failure> {
        if let Some(x0) = args.x0 {
            self.scenario.x0 = Some(x0);
        }
        if let Some(steps) = args.steps {
            self.scenario.steps = Some(steps);
        }
        let x0 = self.scenario.x0.ok_or_else(|| Failure::missing("x0"))?;
        let steps = self.scenario.steps.unwrap_or(DEFAULT_STEPS);
        if steps < 1 {
            return Err(Failure::precondition("steps must be at least 1"));
        }
        let o = orbit(&self.system, x0, steps)?;
        eprintln!("termination: {}", o.terminated_by);
        Ok(o)
    }

    fn svg_options(&self, args: &RenderArgs) -> SvgOptions {
        let r = &self.scenario.render;
        let d = SvgOptions::default();
        SvgOptions {
            width: args.width.or(r.width).unwrap_or(d.width),
            height: args.height.or(r.height).unwrap_or(d.height),
            margin: args.margin.or(r.margin).unwrap_or(d.margin),
        }
    }
}

fn emit(out: &OutArgs, text: &str) -> CmdResult {
    match &out.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::io(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn simulate(a: &SimulateArgs) -> CmdResult {
    let mut s = setup(&a.system)?;
    let o = s.run_orbit(&a.orbit)?;
    emit(&a.out, &to_csv(&o)?)
}

pub fn fixed_points(a: &FixedPointArgs) -> CmdResult {
    let s = setup(&a.system)?;
    let grid = a.grid.or(s.scenario.analysis.grid).unwrap_or(DEFAULT_GRID);
    let scan = find_fixed_points(&s.system, grid)?;
    if scan.skipped > 0 {
        eprintln!(
            "skipped: {} grid points could not be evaluated",
            scan.skipped
        );
    }
    eprintln!("fixed points: {}", scan.points.len());
    let mut text = String::from("x_bar,y_bar,lambda,stability,residual_f,residual_phi\n");
    for p in &scan.points {
        let _ = writeln!(
            text,
            "{},{},{},{},{:e},{:e}",
            p.x_bar, p.y_bar, p.multiplier, p.stability, p.residual_f, p.residual_phi
        );
    }
    emit(&a.out, &text)
}

pub fn distance(a: &DistanceArgs) -> CmdResult {
    let s = setup(&a.system)?;
    let samples = a
        .samples
        .or(s.scenario.analysis.samples)
        .unwrap_or(DEFAULT_DISTANCE_SAMPLES);
    let r = function_distance(&s.system, samples)?;
    let text = format!(
        "d={}\nargmax_y={}\nsamples={}\nf_direction={}\n",
        r.d, r.argmax_y, r.samples, r.monotone_direction
    );
    emit(&a.out, &text)
}

pub fn period(a: &PeriodArgs) -> CmdResult {
    let mut s = setup(&a.system)?;
    if let Some(x0) = a.x0 {
        s.scenario.x0 = Some(x0);
    }
    let x0 = s.scenario.x0.ok_or_else(|| Failure::missing("x0"))?;
    let an = &s.scenario.analysis;
    let max_period = a.max_period.or(an.max_period).unwrap_or(DEFAULT_MAX_PERIOD);
    let burn_in = a.burn_in.or(an.burn_in).unwrap_or(DEFAULT_BURN_IN);
    let text = match detect_period(&compose_gamma(&s.system), x0, max_period, burn_in)? {
        PeriodSearch::Found(r) => {
            let cycle: Vec<String> = r.cycle.iter().map(|v| v.to_string()).collect();
            format!(
                "period={}\ncycle={}\nresidual={:e}\n",
                r.period,
                cycle.join(","),
                r.residual
            )
        }
        PeriodSearch::NotFound => {
            eprintln!("no cycle with period <= {max_period}");
            "period=none\n".to_string()
        }
        PeriodSearch::Diverged { step } => {
            eprintln!("orbit diverged at step {step}");
            "period=none\n".to_string()
        }
    };
    emit(&a.out, &text)
}

pub fn boom_bust(a: &BoomBustArgs) -> CmdResult {
    let mut s = setup(&a.system)?;
    let o = s.run_orbit(&a.orbit)?;
    let an = &s.scenario.analysis;
    let min_run = a.min_run.or(an.min_run).unwrap_or(DEFAULT_MIN_RUN);
    let threshold = a
        .retrace_threshold
        .or(an.retrace_threshold)
        .unwrap_or(DEFAULT_RETRACE_THRESHOLD);
    let events = detect_boom_bust(&o, min_run, threshold)?;
    eprintln!("events: {}", events.len());
    let mut text = String::from("kind,rise_start,peak,reversal_end,amplitude,retrace_fraction\n");
    for e in &events {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            if e.is_boom() { "boom" } else { "slump" },
            e.rise_start,
            e.peak,
            e.reversal_end,
            e.amplitude,
            e.retrace_fraction
        );
    }
    emit(&a.out, &text)
}

pub fn conjugacy(a: &ConjugacyArgs) -> CmdResult {
    let f = Expression::parse(&a.f)?;
    let g = Expression::parse(&a.g)?;
    let h = Expression::parse(&a.h)?;
    let domain = interval(pair(&a.domain).unwrap_or(DEFAULT_DOMAIN))?;
    let samples = a.samples.unwrap_or(DEFAULT_CONJUGACY_SAMPLES);
    let r = verify_conjugacy(&f, &g, &h, domain, samples)?;
    let verdict = match r.verdict {
        Verdict::Consistent => "consistent".to_string(),
        Verdict::ViolatedAt(x) => format!("violated at x={x}"),
    };
    let text = format!(
        "verdict={verdict}\nmax_residual={:e}\nargmax_x={}\nfixed_point_images={}\nfixed_point_residual={:e}\n",
        r.max_residual, r.argmax_x, r.fixed_point_images_checked, r.fixed_point_residual
    );
    emit(&a.out, &text)
}

pub fn staircase(a: &StaircaseArgs) -> CmdResult {
    let mut s = setup(&a.system)?;
    let o = s.run_orbit(&a.orbit)?;
    let samples = a
        .curve_samples
        .or(s.scenario.render.curve_samples)
        .unwrap_or(DEFAULT_CURVE_SAMPLES);
    let trace = reflexivity::staircase(&s.system, &o, samples)?;
    emit(&a.out, &to_svg(&trace, &s.svg_options(&a.render))?)
}

pub fn portrait(a: &PortraitArgs) -> CmdResult {
    let mut s = setup(&a.system)?;
    let o = s.run_orbit(&a.orbit)?;
    let trace = phase_portrait(&o)?;
    emit(&a.out, &to_svg(&trace, &s.svg_options(&a.render))?)
}
