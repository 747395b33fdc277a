use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num::Zero;
use springer_core::affine_weyl::{
    bruhat_leq_fw, elements_up_to_length, enumerate_f_stable, enumerate_f_window, parse_element, AffineWeylElement,
};
use springer_core::certificate::{
    common_witness, derive_seed, fixed_point_set, greedy_submatrices, nonvanishing_verdict, orbit_union,
    ratio_det_closed_form, ratio_groups, ratio_matrix, upper_bound, CandidateRecord, ComponentContext, Method,
    Verdict, VerdictDetail,
};
use springer_core::exact_algebra::{format_rational, rational_det, vandermonde_det, Rational};
use springer_core::oracle::{membership_sample, oracle_fixed_points};
use springer_core::springer_matrix::{
    build_m, chain_orthogonality, chains, conjugate_ts, inverse_holds, resolve_c_prime_reading,
    weighted_orthogonality, CPrimeReading, SpectralParameters,
};

use crate::error::CliError;
use crate::progress::Progress;
use crate::report::{
    assignment_map, BoxEntry, CertificateReport, ComponentReport, IdentityCheck, MethodVerdict, OracleSample,
    ReadingResolution, Report, Status, Summary, VertexVerdicts, SCHEMA_ID, SCOPE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum MethodChoice {
    Certificate,
    Symbolic,
    Randomized,
    Oracle,
    All,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub methods: Vec<MethodChoice>,
    pub seed: u64,
    pub trials: usize,
    pub precision: Option<i64>,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub budget: Option<Duration>,
    pub window: Option<i64>,
    pub symbolic_limit: usize,
    pub timings: bool,
    pub inject_fault: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::Usage(format!("--n must be at least 2, got {}", self.n)));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if matches!(self.precision, Some(p) if p < 1) {
            return Err(CliError::Usage("--precision must be positive".into()));
        }
        Ok(())
    }

    fn core_methods(&self) -> Vec<Method> {
        let all = self.methods.contains(&MethodChoice::All);
        Method::ALL
            .into_iter()
            .filter(|m| {
                all || self.methods.contains(&match m {
                    Method::Certificate => MethodChoice::Certificate,
                    Method::Symbolic => MethodChoice::Symbolic,
                    Method::Randomized => MethodChoice::Randomized,
                })
            })
            .collect()
    }

    fn use_oracle(&self) -> bool {
        self.methods.iter().any(|m| matches!(m, MethodChoice::Oracle | MethodChoice::All))
    }

    fn method_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.core_methods().iter().map(|m| m.name().to_string()).collect();
        if self.use_oracle() {
            v.push("oracle".into());
        }
        v
    }

    pub fn parse(&self, text: &str) -> Result<AffineWeylElement, CliError> {
        parse_element(self.n, text).map_err(|e| CliError::Usage(format!("cannot read element {text:?}: {e}")))
    }

    fn context(&self) -> Result<ComponentContext, CliError> {
        let mut ctx = ComponentContext::with_default(self.n)?;
        ctx.symbolic_limit = self.symbolic_limit;
        Ok(ctx)
    }
}

fn base_report(cfg: &RunConfig, command: &'static str, s: &SpectralParameters) -> Report {
    Report {
        schema: SCHEMA_ID,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        n: cfg.n,
        spectral_parameters: s.values().iter().map(format_rational).collect(),
        seed: cfg.seed,
        trials: cfg.trials,
        methods: cfg.method_names(),
        scope: SCOPE,
        status: Status::Pass,
        partial: false,
        box_elements: vec![],
        components: vec![],
        identities: vec![],
        c_prime_reading: None,
        summary: Summary::default(),
        timings_ms: None,
    }
}

fn finish(mut report: Report, cfg: &RunConfig, timings: BTreeMap<String, u64>) -> Report {
    report.status = if report.partial { report.summary.status().max(Status::Inconclusive) } else { report.summary.status() };
    if cfg.timings {
        report.timings_ms = Some(timings);
    }
    report
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

pub fn enumerate_f(cfg: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let s = SpectralParameters::default_for(cfg.n);
    let mut report = base_report(cfg, "enumerate-f", &s);
    report.methods.clear();
    let elements = match cfg.window {
        Some(c) if c < 1 => return Err(CliError::Usage("--window must be positive".into())),
        Some(c) => {
            let first = enumerate_f_window(cfg.n, c);
            // The scan is trusted only if doubling the window changes nothing.
            report.summary.add(if first == enumerate_f_window(cfg.n, 2 * c) { Status::Pass } else { Status::Inconclusive });
            first
        }
        None => {
            report.summary.add(Status::Pass);
            enumerate_f_stable(cfg.n)?.elements
        }
    };
    report.box_elements = elements.iter().map(BoxEntry::new).collect();
    Ok(finish(report, cfg, BTreeMap::from([("total".to_string(), ms(start.elapsed()))])))
}

fn method_verdict(d: &VerdictDetail, n: usize) -> MethodVerdict {
    MethodVerdict {
        verdict: d.verdict.name(),
        size: d.size,
        reason: d.reason.clone(),
        monomial: d.certificate.as_ref().map(|c| c.monomial.triples(n)),
        coefficient: d.certificate.as_ref().map(|c| format_rational(&c.coefficient)),
        degree_bound: d.degree_bound,
        trials_used: (d.trials_used > 0).then_some(d.trials_used),
        witness: d.witness.as_ref().map(assignment_map),
    }
}

fn overall(verdicts: &[VerdictDetail]) -> Verdict {
    CandidateRecord { y: AffineWeylElement::identity(2), verdicts: verdicts.to_vec() }.overall()
}

fn strings(set: &BTreeSet<AffineWeylElement>) -> Vec<String> {
    set.iter().map(|y| y.to_string()).collect()
}

/// All methods on one component, with a per-`y` comparison against the
/// Bruhat order over every minimal `y` no longer than `x`.
pub fn component_report(
    ctx: &ComponentContext,
    cfg: &RunConfig,
    x: &AffineWeylElement,
    only_y: Option<&AffineWeylElement>,
    fault: bool,
) -> Result<ComponentReport, CliError> {
    let n = cfg.n;
    let expected = upper_bound(x);
    let mut status = Summary::default();
    let mut computed = BTreeMap::new();
    let mut agrees = BTreeMap::new();
    let mut gaps = BTreeMap::new();
    let mut outside = BTreeSet::new();
    let mut records: BTreeMap<String, BTreeMap<AffineWeylElement, Vec<VerdictDetail>>> = BTreeMap::new();
    let mut fault_injected = None;

    for (k, m) in cfg.core_methods().into_iter().enumerate() {
        let mut r = fixed_point_set(ctx, x, m, cfg.seed, cfg.trials)?;
        if fault && k == 0 {
            if let Some(rec) = r.records.iter_mut().rev().find(|r| r.overall() == Verdict::NonZero) {
                rec.verdicts[0].verdict = Verdict::IdenticallyZero;
                rec.verdicts[0].reason = Some("injected fault".into());
                fault_injected = Some(format!("{}: y={} i=0", m.name(), rec.y));
            }
            let accepted: Vec<_> =
                r.records.iter().filter(|r| r.overall() == Verdict::NonZero).map(|r| r.y.clone()).collect();
            let (members, out) = orbit_union(&accepted, &expected);
            r.members = members;
            r.outside_bound = out;
        }
        let ok = r.members == expected && r.outside_bound.is_empty();
        status.add(if !ok { Status::Mismatch } else if r.gaps.is_empty() { Status::Pass } else { Status::Inconclusive });
        computed.insert(m.name().to_string(), strings(&r.members));
        agrees.insert(m.name().to_string(), ok);
        gaps.insert(m.name().to_string(), r.gaps.iter().map(|y| y.to_string()).collect());
        outside.extend(r.outside_bound.iter().cloned());
        records.insert(m.name().to_string(), r.records.into_iter().map(|r| (r.y, r.verdicts)).collect());
    }

    let mut samples = BTreeMap::new();
    if cfg.use_oracle() {
        let o = oracle_fixed_points(ctx, x, cfg.trials, cfg.seed, cfg.precision)?;
        let ok = o.members == expected && o.outside_bound.is_empty();
        status.add(if ok { Status::Pass } else { Status::Mismatch });
        computed.insert("oracle".into(), strings(&o.members));
        agrees.insert("oracle".into(), ok);
        outside.extend(o.outside_bound.iter().cloned());
        samples.extend(o.samples);
    }

    let pool: Vec<AffineWeylElement> = elements_up_to_length(n, x.length())
        .into_iter()
        .filter(|y| y.is_min_coset_rep())
        .filter(|y| only_y.is_none_or(|o| o == y))
        .collect();
    let mut certificates = vec![];
    for y in &pool {
        let is_below = bruhat_leq_fw(y, x)?;
        let mut by_vertex: Vec<BTreeMap<String, MethodVerdict>> = vec![BTreeMap::new(); n];
        let mut seeds = BTreeMap::new();
        let mut witness = None;
        for m in cfg.core_methods() {
            let verdicts = match records.get(m.name()).and_then(|r| r.get(y)) {
                Some(v) => v.clone(),
                None => (0..n)
                    .map(|i| nonvanishing_verdict(ctx, x, y, i, m, cfg.seed, cfg.trials))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let verdict = overall(&verdicts);
            let s = match (verdict, is_below) {
                (Verdict::NonZero, false) | (Verdict::IdenticallyZero, true) => Status::Mismatch,
                (Verdict::Inconclusive, _) => Status::Inconclusive,
                _ => Status::Pass,
            };
            status.add(s);
            if m == Method::Randomized && verdict == Verdict::NonZero {
                if let Some((a, seed)) = common_witness(ctx, x, y, cfg.seed, cfg.trials)? {
                    witness = Some(assignment_map(&a));
                    seeds.insert("common_witness".to_string(), seed);
                }
            }
            for (i, d) in verdicts.iter().enumerate() {
                by_vertex[i].insert(m.name().to_string(), method_verdict(d, n));
            }
        }
        if cfg.core_methods().contains(&Method::Randomized) {
            for i in 0..n {
                let tag = i.to_string();
                seeds.insert(format!("randomized_{i}"), derive_seed(cfg.seed, &[&x.to_string(), &y.to_string(), &tag]));
            }
        }
        let oracle = if cfg.use_oracle() {
            let sample = match samples.remove(y) {
                Some(s) => s,
                None => membership_sample(ctx, x, y, cfg.trials, cfg.seed, cfg.precision)?,
            };
            // One-sided: a miss on a member is only inconclusive.
            status.add(match (sample.member, is_below) {
                (true, false) => Status::Mismatch,
                (false, true) => Status::Inconclusive,
                _ => Status::Pass,
            });
            seeds.insert("oracle".to_string(), sample.seed);
            Some(OracleSample { member: sample.member, trial: sample.trial, witness: sample.witness.as_ref().map(assignment_map) })
        } else {
            None
        };
        certificates.push(CertificateReport {
            x: x.to_string(),
            y: y.to_string(),
            expected: is_below,
            verdicts: by_vertex.into_iter().enumerate().map(|(i, methods)| VertexVerdicts { i, methods }).collect(),
            oracle,
            witness,
            seeds,
        });
    }
    certificates.sort_by(|a, b| a.y.cmp(&b.y));

    Ok(ComponentReport {
        x: x.to_string(),
        word: crate::report::word(x),
        length: x.length(),
        status: status.status(),
        expected: strings(&expected),
        computed,
        agrees,
        gaps,
        outside_bound: outside.iter().map(|y| y.to_string()).collect(),
        certificates,
        fault_injected,
    })
}

pub fn fixed_points(cfg: &RunConfig, x: &str, y: Option<&str>) -> Result<Report, CliError> {
    let start = Instant::now();
    let ctx = cfg.context()?;
    let x = cfg.parse(x)?;
    if !ctx.in_box(&x) {
        return Err(CliError::Usage(format!("{x} is not in the fundamental box")));
    }
    let y = match y {
        Some(t) => {
            let y = cfg.parse(t)?;
            // Fixed points come in W_f-orbits; report the minimal representative.
            Some(y.min_coset_decomposition().1)
        }
        None => None,
    };
    let mut report = base_report(cfg, "fixed-points", &ctx.s);
    let c = component_report(&ctx, cfg, &x, y.as_ref(), cfg.inject_fault)?;
    report.summary.add(c.status);
    report.components.push(c);
    Ok(finish(report, cfg, BTreeMap::from([("total".to_string(), ms(start.elapsed()))])))
}

pub fn verify_theorem(cfg: &RunConfig, progress: &mut Progress) -> Result<Report, CliError> {
    match cfg.n {
        2 | 3 => {}
        4 if cfg.budget.is_some() => {}
        4 => return Err(CliError::Usage("rank 4 sweeps need --budget-seconds".into())),
        n => return Err(CliError::Usage(format!("verify-theorem supports n = 2, 3 and 4, got {n}"))),
    }
    let start = Instant::now();
    let ctx = cfg.context()?;
    let mut report = base_report(cfg, "verify-theorem", &ctx.s);
    let mut timings = BTreeMap::new();
    let total = ctx.box_elements.len();
    for (k, x) in ctx.box_elements.iter().enumerate() {
        if let Some(b) = cfg.budget {
            if start.elapsed() > b {
                report.partial = true;
                progress.event("budget_exceeded", &[("completed", k.into()), ("total", total.into())]);
                break;
            }
        }
        progress.event("component", &[("index", (k + 1).into()), ("total", total.into()), ("x", x.to_string().into())]);
        let t = Instant::now();
        // The fault goes into the last component so that a full sweep is needed to see it.
        let c = component_report(&ctx, cfg, x, None, cfg.inject_fault && k + 1 == total)?;
        timings.insert(format!("x={x}"), ms(t.elapsed()));
        report.summary.add(c.status);
        report.components.push(c);
    }
    timings.insert("total".into(), ms(start.elapsed()));
    Ok(finish(report, cfg, timings))
}

fn identity(name: &str, n: usize, seed: u64, evaluations: usize, degree_bound: u32, failure: Option<String>) -> IdentityCheck {
    IdentityCheck { name: name.into(), n, seed, evaluations, degree_bound, passed: failure.is_none(), detail: failure }
}

pub fn identities(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.n > 5 {
        return Err(CliError::Usage(format!("identities supports n <= 5, got {}", cfg.n)));
    }
    let start = Instant::now();
    let n = cfg.n;
    let f = enumerate_f_stable(n)?.elements;
    let seeds: Vec<u64> = (0..3).map(|k| derive_seed(cfg.seed, &["identities", &k.to_string()])).collect();
    let params: Vec<SpectralParameters> = seeds.iter().map(|&s| SpectralParameters::random(n, s)).collect();
    let mut report = base_report(cfg, "identities", &params[0]);
    report.methods.clear();

    let res = resolve_c_prime_reading(&f, &params)?;
    report.c_prime_reading = Some(ReadingResolution {
        passing: res.passing.iter().map(|r| r.name().to_string()).collect(),
        chosen: res.chosen.map(|r| r.name().to_string()),
    });

    let mut checks = vec![];
    for (&seed, s) in seeds.iter().zip(&params) {
        let long = SpectralParameters::random(n.max(6), seed);
        let (mut evals, mut bad) = (0, None);
        for k in 1..=6 {
            for ch in chains(1, k) {
                evals += 2;
                let target = if ch.len() == 1 { Rational::from_integer(1.into()) } else { Rational::zero() };
                if chain_orthogonality(&ch, &long) != target {
                    bad.get_or_insert(format!("sum c c' fails on {ch:?}"));
                }
                if ch.len() > 2 && !weighted_orthogonality(&ch, &long).is_zero() {
                    bad.get_or_insert(format!("sum c s c' fails on {ch:?}"));
                }
            }
        }
        checks.push(identity("chain-orthogonality", n, seed, evals, 5, bad));

        let (mut evals, mut bad, mut window) = (0, None, 0);
        for w in &f {
            evals += 1;
            window = window.max(build_m(w, s)?.precision() as u32);
            if !inverse_holds(w, s, CPrimeReading::ChainStart)? {
                bad.get_or_insert(format!("M M^-1 != I at {w}"));
            }
        }
        checks.push(identity("inverse", n, seed, evals, window, bad));

        let (mut evals, mut bad) = (0, None);
        for w in &f {
            evals += 1;
            let prec = build_m(w, s)?.precision();
            if let Err(e) = conjugate_ts(w, s, prec) {
                bad.get_or_insert(format!("{w}: {e}"));
            }
        }
        checks.push(identity("conjugation", n, seed, evals, window, bad));

        let values = s.values();
        let vm: Vec<Vec<Rational>> =
            values.iter().map(|v| (0..n).map(|p| num::pow(v.clone(), p)).collect()).collect();
        let (mut evals, mut bad) = (1, None);
        if vandermonde_det(values) != rational_det(&vm) {
            bad = Some("Vandermonde product differs from elimination".to_string());
        }
        if n <= 4 {
            let ctx = ComponentContext::new(n, s.clone())?;
            for x in &ctx.box_elements {
                for y in elements_up_to_length(n, x.length()).into_iter().filter(|y| y.is_min_coset_rep()) {
                    for i in 0..n {
                        let Ok(sel) = greedy_submatrices(x, &y, i) else { continue };
                        let Ok(groups) = ratio_groups(&sel) else { continue };
                        for g in groups.values() {
                            if let Some(closed) = ratio_det_closed_form(g, s) {
                                evals += 1;
                                if closed != rational_det(&ratio_matrix(g, s)) {
                                    bad.get_or_insert(format!("ratio determinant at x={x} y={y} i={i}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(identity("vandermonde", n, seed, evals, n as u32, bad));
    }
    for c in &checks {
        report.summary.add(if c.passed { Status::Pass } else { Status::Mismatch });
    }
    if res.chosen != Some(CPrimeReading::ChainStart) {
        report.summary.add(Status::Mismatch);
    }
    report.identities = checks;
    Ok(finish(report, cfg, BTreeMap::from([("total".to_string(), ms(start.elapsed()))])))
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} n={} status={}\n", r.command, r.n, r.status.name()));
    for b in &r.box_elements {
        out.push_str(&format!("  {}  [{}]  length {}  vertices {:?}\n", b.element, b.word, b.length, b.vertices));
    }
    for c in &r.components {
        out.push_str(&format!("  x={} [{}]: {} expected fixed points, {}\n", c.x, c.word, c.expected.len(), c.status.name()));
        for (m, ok) in &c.agrees {
            out.push_str(&format!("    {m:<11} {} points, {}\n", c.computed[m].len(), if *ok { "agrees" } else { "DIFFERS" }));
        }
        if let Some(f) = &c.fault_injected {
            out.push_str(&format!("    injected fault: {f}\n"));
        }
    }
    if let Some(res) = &r.c_prime_reading {
        out.push_str(&format!("  c' reading: passing {:?}, chosen {:?}\n", res.passing, res.chosen));
    }
    for i in &r.identities {
        out.push_str(&format!(
            "  {:<20} seed {:>20} {:>5} evaluations  {}\n",
            i.name,
            i.seed,
            i.evaluations,
            if i.passed { "ok" } else { "FAILED" }
        ));
    }
    let s = &r.summary;
    out.push_str(&format!("checks {} passed {} failed {} inconclusive {}\n", s.checks, s.passed, s.failed, s.inconclusive));
    out
}
