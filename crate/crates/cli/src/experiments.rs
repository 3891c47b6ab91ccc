//! The experiment registry: each verification experiment validates its
//! parameters, runs the corresponding core checker, and wraps the result in
//! an [`ExperimentReport`].

use std::time::Instant;

use anyhow::{anyhow, Result};
use serde_json::json;

use intcomb_core::asm::{
    self, enumerate_asms, lambda_det_identity,
    osculating::{asm_to_osculating, osculating_to_asm},
    sixvertex::{asm_to_sixvertex, enumerate_dwbc_configs, sixvertex_to_asm},
};
use intcomb_core::geodesic;
use intcomb_core::lorentzian::{
    self, commutation_residual, conjugate_parameter, genfun_check, ConjugateG, ConjugateParams,
    LorentzParams,
};
use intcomb_core::qsystem::{self, GradedCharSpec};
use intcomb_core::report::Status;
use intcomb_core::scalar::parse_rat;
use intcomb_core::schur::Partition;
use intcomb_core::whittaker::{whittaker_defect, CartanData, HighestWeight};
use intcomb_core::{QRat, Rat};

use crate::report::ExperimentReport;

/// Parameter/usage error: reported with exit code 2, distinct from a failed
/// verification (exit code 1).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

fn parse_rat_arg(name: &str, s: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn parse_rat_list(name: &str, s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .map(|p| parse_rat_arg(name, p.trim()))
        .collect()
}

fn timed(mut rep: ExperimentReport, start: Instant) -> ExperimentReport {
    rep.wall = start.elapsed();
    rep
}

pub fn genfun(
    g: Option<&str>,
    a: Option<&str>,
    order: i64,
    pairs: usize,
    seed: u64,
) -> Result<Vec<ExperimentReport>> {
    if order < 1 {
        return Err(usage("--order must be at least 1"));
    }
    let params: Vec<LorentzParams> = match (g, a) {
        (Some(g), Some(a)) => {
            let p = LorentzParams::new(parse_rat_arg("g", g)?, parse_rat_arg("a", a)?)
                .map_err(|e| usage(e.to_string()))?;
            vec![p]
        }
        (None, None) => lorentzian::seeded_parameter_pairs(seed, pairs),
        _ => {
            return Err(usage(
                "provide both --g and --a, or neither for seeded pairs",
            ))
        }
    };
    let mut out = Vec::new();
    for p in params {
        let start = Instant::now();
        let rep = genfun_check(&p, order);
        out.push(timed(
            ExperimentReport::new(
                "lorentzian-genfun",
                json!({"g": rep.g, "a": rep.a, "order": order}),
                rep.status,
                &rep,
            ),
            start,
        ));
    }
    Ok(out)
}

pub fn commute(
    g: &str,
    a: &str,
    a2: &str,
    g2: Option<&str>,
    size: usize,
    window: usize,
) -> Result<ExperimentReport> {
    let p1 = LorentzParams::new(parse_rat_arg("g", g)?, parse_rat_arg("a", a)?)
        .map_err(|e| usage(e.to_string()))?;
    let a2 = parse_rat_arg("a2", a2)?;
    if window > size / 2 {
        return Err(usage("--window must be at most size/2"));
    }
    let start = Instant::now();
    let p2 = match g2 {
        // explicit second parameter pair (e.g. a non-conjugate control)
        Some(g2) => ConjugateParams {
            g: ConjugateG::Exact(parse_rat_arg("g2", g2)?),
            a: a2.clone(),
        },
        None => conjugate_residual_params(&p1, &a2)?,
    };
    let rep = commutation_residual(&p1, &p2, size, window, &lorentzian::default_tolerance())?;
    Ok(timed(
        ExperimentReport::new(
            "lorentzian-commute",
            json!({
                "g": g, "a": a, "a2": a2.to_string(),
                "g2": rep.g2, "size": size, "window": window,
            }),
            rep.status,
            &rep,
        ),
        start,
    ))
}

fn conjugate_residual_params(p1: &LorentzParams, a2: &Rat) -> Result<ConjugateParams> {
    Ok(conjugate_parameter(p1, a2)?)
}

pub fn geodesic_soliton(order: i64, nmax: i64) -> Result<ExperimentReport> {
    if order < 1 || nmax < 0 {
        return Err(usage("--order must be >= 1 and --nmax >= 0"));
    }
    let start = Instant::now();
    let rep = geodesic::soliton_check(nmax, order)?;
    // CSV table of coefficients [g^k] R_n, columns n = -1..=nmax
    let fam = geodesic::series_family(nmax, order)?;
    let mut csv = String::from("k");
    for n in -1..=nmax {
        csv.push_str(&format!(",R_{n}"));
    }
    csv.push('\n');
    for k in 0..=order {
        csv.push_str(&k.to_string());
        for n in -1..=nmax {
            csv.push_str(&format!(",{}", fam.member(n).coeff(k)));
        }
        csv.push('\n');
    }
    Ok(timed(
        ExperimentReport::new(
            "geodesic-soliton",
            json!({"order": order, "nmax": nmax}),
            rep.status,
            &rep,
        ),
        start,
    )
    .with_csv(csv))
}

pub fn geodesic_conserve(order: i64, nmax: i64) -> Result<ExperimentReport> {
    if order < 1 || nmax < 1 {
        return Err(usage("--order and --nmax must be >= 1"));
    }
    let start = Instant::now();
    let rep = geodesic::conserved_phi_check(nmax, order)?;
    Ok(timed(
        ExperimentReport::new(
            "geodesic-conserve",
            json!({"order": order, "nmax": nmax}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

pub fn asm_count(size: usize) -> Result<ExperimentReport> {
    let start = Instant::now();
    let rows = asm::count_report(size).map_err(|e| usage(e.to_string()))?;
    let ok = rows.iter().all(|r| r.matches);
    let mut csv = String::from("n,asm_count\n");
    for r in &rows {
        csv.push_str(&format!("{},{}\n", r.n, r.formula));
    }
    Ok(timed(
        ExperimentReport::new(
            "asm-count",
            json!({"size": size}),
            Status::from_bool(ok),
            &rows,
        ),
        start,
    )
    .with_csv(csv))
}

pub fn asm_bijection(size: usize) -> Result<ExperimentReport> {
    if size == 0 || size > asm::MAX_ENUM_SIZE {
        return Err(usage(format!(
            "--size must be in 1..={}",
            asm::MAX_ENUM_SIZE
        )));
    }
    let start = Instant::now();
    let mut objects = 0usize;
    let mut ok = true;
    for n in 1..=size {
        for a in enumerate_asms(n)? {
            objects += 1;
            let sv = asm_to_sixvertex(&a);
            ok &= sixvertex_to_asm(&sv)? == a;
            let paths = asm_to_osculating(&a);
            ok &= osculating_to_asm(&paths)? == a;
        }
    }
    // independent six-vertex search agrees with the ASM count on tiny sizes
    let mut direct_counts = Vec::new();
    for n in 1..=size.min(3) {
        let direct = enumerate_dwbc_configs(n).len();
        direct_counts.push(direct);
        ok &= direct == enumerate_asms(n)?.len();
    }
    Ok(timed(
        ExperimentReport::new(
            "asm-bijection",
            json!({"size": size}),
            Status::from_bool(ok),
            json!({"objects_roundtripped": objects, "direct_sixvertex_counts": direct_counts}),
        ),
        start,
    ))
}

pub fn asm_lambdadet(size: usize) -> Result<ExperimentReport> {
    if size == 0 || size > 5 {
        return Err(usage("--size must be in 1..=5"));
    }
    let start = Instant::now();
    let mut reps = Vec::new();
    let mut ok = true;
    for n in 1..=size {
        let rep = lambda_det_identity(n)?;
        ok &= rep.status.passed();
        reps.push(rep);
    }
    Ok(timed(
        ExperimentReport::new(
            "asm-lambdadet",
            json!({"size": size}),
            Status::from_bool(ok),
            &reps,
        ),
        start,
    ))
}

pub fn whittaker(
    family: &str,
    rank: usize,
    depth: usize,
    lambda: &str,
    mu: &str,
) -> Result<ExperimentReport> {
    if family != "A" {
        return Err(usage("only --type A is wired to the command line"));
    }
    if rank == 0 || depth == 0 {
        return Err(usage("--rank and --depth must be positive"));
    }
    let lambda = parse_rat_list("lambda", lambda)?;
    let mu = parse_rat_list("mu", mu)?;
    if lambda.len() != rank || mu.len() != rank {
        return Err(usage("--lambda and --mu need exactly --rank entries"));
    }
    let start = Instant::now();
    let cd = CartanData::type_a(rank);
    let hw = HighestWeight { lambda, mu };
    let rep = whittaker_defect(&cd, &hw, depth)?;
    Ok(timed(
        ExperimentReport::new(
            "whittaker-verify",
            json!({"type": family, "rank": rank, "depth": depth,
                   "lambda": rep.lambda, "mu": rep.mu}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

pub fn qsystem_classical(nvars: usize, nmax: u32) -> Result<ExperimentReport> {
    if !(2..=4).contains(&nvars) {
        return Err(usage("--nvars must be 2..=4"));
    }
    let start = Instant::now();
    let rep = qsystem::classical_qsystem_check(nvars, nmax)?;
    Ok(timed(
        ExperimentReport::new(
            "qsystem-classical",
            json!({"nvars": nvars, "nmax": nmax}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

pub fn qsystem_operators(nvars: usize, degree_cap: u32) -> Result<ExperimentReport> {
    if !(2..=3).contains(&nvars) {
        return Err(usage("--nvars must be 2 or 3"));
    }
    let start = Instant::now();
    let rep = qsystem::msystem_relations_check(nvars, degree_cap)?;
    Ok(timed(
        ExperimentReport::new(
            "qsystem-operators",
            json!({"nvars": nvars, "degree_cap": degree_cap}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

pub fn graded_char(nvars: usize, spec_json: &str) -> Result<ExperimentReport> {
    let occupation: Vec<Vec<u32>> = serde_json::from_str(spec_json)
        .map_err(|e| usage(format!("--spec must be a JSON array of arrays: {e}")))?;
    let spec = GradedCharSpec::new(nvars, occupation).map_err(|e| usage(e.to_string()))?;
    let start = Instant::now();
    let rep = qsystem::graded_character(&spec)?;
    Ok(timed(
        ExperimentReport::new(
            "qsystem-graded-char",
            json!({"nvars": nvars, "spec": spec.occupation}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

pub fn macdonald_eigen(
    nvars: usize,
    lambda: Option<&str>,
    max_weight: u32,
) -> Result<ExperimentReport> {
    if !(2..=3).contains(&nvars) {
        return Err(usage("--nvars must be 2 or 3"));
    }
    let start = Instant::now();
    let shapes: Vec<Partition> = match lambda {
        Some(s) => {
            let parts: Vec<u32> = s
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|e| usage(format!("--lambda: {e}")))
                })
                .collect::<Result<_>>()?;
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(usage("--lambda parts must be weakly decreasing"));
            }
            if parts.iter().filter(|&&p| p > 0).count() > nvars {
                return Err(usage("--lambda has more parts than --nvars"));
            }
            vec![Partition::new(parts)]
        }
        None => (0..=max_weight)
            .flat_map(|k| Partition::all_of(k, nvars))
            .collect(),
    };
    let mut reps = Vec::new();
    let mut ok = true;
    for lam in &shapes {
        let rep = qsystem::macdonald_eigencheck(lam, nvars)?;
        ok &= rep.status.passed();
        reps.push(rep);
    }
    // t -> infinity degeneration on a small family
    let fam = qsystem::classical::monomial_test_family::<QRat>(nvars, 2);
    let mut limits = Vec::new();
    for alpha in 1..=nvars {
        for n in 0..=1i64 {
            let rep = qsystem::t_limit_check(alpha, n, &fam)?;
            ok &= rep.status.passed();
            limits.push(rep);
        }
    }
    Ok(timed(
        ExperimentReport::new(
            "macdonald-eigen",
            json!({"nvars": nvars, "shapes": shapes.len(), "max_weight": max_weight}),
            Status::from_bool(ok),
            json!({"eigenchecks": reps, "t_limits": limits}),
        ),
        start,
    ))
}

pub fn dim_exchange(nvars: usize, window: i64, degree_cap: u32) -> Result<ExperimentReport> {
    if !(2..=3).contains(&nvars) || !(0..=2).contains(&window) {
        return Err(usage("--nvars must be 2 or 3 and --window at most 2"));
    }
    let start = Instant::now();
    let e_rep = qsystem::dim_exchange_check(nvars, window, degree_cap, false)?;
    let f_rep = qsystem::dim_exchange_check(nvars, window, degree_cap, true)?;
    let ok = e_rep.status.passed() && f_rep.status.passed();
    Ok(timed(
        ExperimentReport::new(
            "dim-exchange",
            json!({"nvars": nvars, "window": window, "degree_cap": degree_cap}),
            Status::from_bool(ok),
            json!({"e_current": e_rep, "f_current": f_rep}),
        ),
        start,
    ))
}

pub fn qdet(nvars: usize, avec: &str, degree_cap: u32) -> Result<ExperimentReport> {
    let avec: Vec<i64> = avec
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| usage(format!("--avec: {e}")))
        })
        .collect::<Result<_>>()?;
    if avec.is_empty() || avec.len() > 3 || avec.iter().any(|a| a.abs() > 2) {
        return Err(usage("--avec needs 1..=3 entries with |a_i| <= 2"));
    }
    let start = Instant::now();
    let rep = qsystem::quantum_determinant(&avec, nvars, degree_cap)?;
    Ok(timed(
        ExperimentReport::new(
            "qsystem-qdet",
            json!({"nvars": nvars, "avec": avec, "degree_cap": degree_cap}),
            rep.status,
            &rep,
        ),
        start,
    ))
}

/// The registered suites. Experiments run concurrently; reports come back in
/// registration order.
pub fn run_all(suite: &str, seed: u64) -> Result<Vec<ExperimentReport>> {
    type Job = Box<dyn Fn() -> Result<Vec<ExperimentReport>> + Send + Sync>;
    let quick = suite == "quick";
    if !quick && suite != "full" {
        return Err(usage("--suite must be quick or full"));
    }

    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        genfun(None, None, if quick { 8 } else { 10 }, 5, seed)
    }));
    jobs.push(Box::new(move || {
        commute(
            "1/10",
            "1/2",
            "2/3",
            None,
            if quick { 24 } else { 40 },
            if quick { 8 } else { 10 },
        )
        .map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        // negative control: (1/10, 2/3) is NOT conjugate, so failing is passing
        let mut rep = commute("1/10", "1/2", "2/3", Some("1/10"), 24, 8)?;
        rep.experiment = "lorentzian-commute-control".into();
        rep.status = if rep.status == Status::Fail {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(vec![rep])
    }));
    jobs.push(Box::new(move || {
        geodesic_soliton(if quick { 12 } else { 20 }, if quick { 6 } else { 8 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        geodesic_conserve(if quick { 12 } else { 20 }, if quick { 6 } else { 8 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        asm_count(if quick { 5 } else { 6 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        asm_bijection(if quick { 4 } else { 5 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        asm_lambdadet(if quick { 4 } else { 5 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        whittaker("A", 1, if quick { 5 } else { 6 }, "5/7", "1").map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        whittaker("A", 2, if quick { 3 } else { 4 }, "5/7,3/2", "1,1").map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        qsystem_classical(if quick { 3 } else { 4 }, 3).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        qsystem_operators(if quick { 2 } else { 3 }, if quick { 3 } else { 4 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        graded_char(3, "[[2],[0]]").map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        graded_char(3, "[[1,1],[0,0]]").map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        macdonald_eigen(if quick { 2 } else { 3 }, None, if quick { 2 } else { 3 }).map(|r| vec![r])
    }));
    jobs.push(Box::new(move || {
        dim_exchange(2, if quick { 1 } else { 2 }, if quick { 2 } else { 3 }).map(|r| vec![r])
    }));
    if !quick {
        jobs.push(Box::new(move || dim_exchange(3, 2, 3).map(|r| vec![r])));
        jobs.push(Box::new(move || qdet(3, "1,1,1", 1).map(|r| vec![r])));
        jobs.push(Box::new(move || qdet(3, "1,0,-1", 1).map(|r| vec![r])));
    }
    jobs.push(Box::new(move || {
        qdet(2, "1,1", if quick { 1 } else { 2 }).map(|r| vec![r])
    }));

    if jobs.is_empty() {
        return Err(anyhow!(
            "experiment registry is empty: build misconfiguration"
        ));
    }

    use rayon::prelude::*;
    let results: Vec<Result<Vec<ExperimentReport>>> = jobs.par_iter().map(|job| job()).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
