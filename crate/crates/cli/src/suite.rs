//! The reproducible property-suite runner behind `hybridline check`.
//!
//! Every suite draws its samples from a generator state derived only from
//! `(seed, cover id, suite)`, so a report is a pure function of the config
//! and cover list — two runs with equal inputs emit identical bytes.

use serde::Serialize;
use std::fmt::Write as _;

use hybridline::cover::{basic_nbhd, FourCover, Label};
use hybridline::decompose::{self, Decomposition};
use hybridline::exactsets::{ExactError, Interval, RSet, Rat};
use hybridline::qbase;
use hybridline::qmetric::{self, QMetricError, SplitMix64};
use hybridline::separation::{self, UrysohnSpec};

use crate::CliError;

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Balls,
    Topology,
    Decomposition,
    Normality,
    Urysohn,
    Extractor,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "axioms",
        "balls",
        "topology",
        "decomposition",
        "normality",
        "urysohn",
        "extractor",
        "all",
    ];

    pub fn parse(s: &str) -> Result<Suite, CliError> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "balls" => Suite::Balls,
            "topology" => Suite::Topology,
            "decomposition" => Suite::Decomposition,
            "normality" => Suite::Normality,
            "urysohn" => Suite::Urysohn,
            "extractor" => Suite::Extractor,
            "all" => Suite::All,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown suite {other:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Full configuration of a `check` run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub samples: u64,
    pub levels: u64,
    /// Negative-control hook: replace every synthesized decomposition with
    /// a deliberately broken one so the decomposition suite must report
    /// violations.
    pub corrupt: bool,
}

/// One report line.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: String,
    pub cover_id: String,
    pub check: String,
    pub witness: String,
    pub status: String,
}

#[derive(Debug, Default)]
pub struct SuiteReport {
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == "fail").count()
    }

    /// JSON-lines rendering, one record per line, insertion order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line = serde_json::to_string(r).expect("plain strings always serialize");
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

struct Ctx<'a> {
    suite: &'static str,
    cover_id: &'a str,
    records: &'a mut Vec<Record>,
}

impl Ctx<'_> {
    fn push(&mut self, check: &str, witness: String, ok: bool) {
        self.records.push(Record {
            suite: self.suite.to_string(),
            cover_id: self.cover_id.to_string(),
            check: check.to_string(),
            witness,
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
    }
}

/// Generator for one (cover, suite) cell, derived by hashing the cover id
/// (FNV-1a) into the seed: stable across runs and platforms.
fn sub_rng(seed: u64, cover_id: &str, salt: u64) -> SplitMix64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in cover_id.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    SplitMix64::new(seed ^ h ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn synth(c: &FourCover, corrupt: bool) -> Result<Decomposition, ExactError> {
    if corrupt {
        // F(0) = H(0) = ℝ breaks at least one side of any cover.
        Decomposition::custom(c, vec![RSet::all()], vec![RSet::all()])
    } else {
        Decomposition::synthesize(c)
    }
}

/// Runs the configured suite over every cover and collects the report.
pub fn run_suite(
    cfg: &SuiteConfig,
    covers: &[(String, FourCover)],
) -> Result<SuiteReport, CliError> {
    let mut records = Vec::new();
    if cfg.samples == 0 {
        return Ok(SuiteReport { records });
    }
    let wants = |s: Suite| cfg.suite == Suite::All || cfg.suite == s;
    for (id, cover) in covers {
        if wants(Suite::Axioms) {
            run_axioms(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Balls) {
            run_balls(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Topology) {
            run_topology(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Decomposition) {
            run_decomposition(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Normality) {
            run_normality(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Urysohn) {
            run_urysohn(cfg, id, cover, &mut records)?;
        }
        if wants(Suite::Extractor) {
            run_extractor(cfg, id, cover, &mut records)?;
        }
    }
    Ok(SuiteReport { records })
}

fn run_axioms(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "axioms",
        cover_id: id,
        records,
    };
    let d = synth(c, false)?;
    let seed = sub_rng(cfg.seed, id, 1).next_u64();
    let report = qmetric::check_axioms(c, &d, seed, cfg.samples)?;
    if report.violations.is_empty() {
        ctx.push(
            "quasi-metric-axioms",
            format!("{} triples clean", report.checked),
            true,
        );
    } else {
        for v in report.violations {
            ctx.push("quasi-metric-axioms", v, false);
        }
    }
    Ok(())
}

fn run_balls(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "balls",
        cover_id: id,
        records,
    };
    let d = synth(c, false)?;
    let mut rng = sub_rng(cfg.seed, id, 2);
    let mut bad = 0u64;
    for _ in 0..cfg.samples {
        let x = rng.rat();
        let y = rng.rat();
        let n = rng.below(cfg.levels + 1);
        let b = qmetric::ball(c, &d, &x, n)?;
        let dist = qmetric::qdist(c, &d, &x, &y)?;
        if b.member(&y) != dist.lt_pow2(n) {
            ctx.push(
                "ball-matches-distance",
                format!("x={x} y={y} n={n}: membership and ρ disagree"),
                false,
            );
            bad += 1;
            continue;
        }
        let next = qmetric::ball(c, &d, &x, n + 1)?;
        if !next.subset_of(&b)? {
            ctx.push(
                "ball-nesting",
                format!("x={x} n={n}: level {} ball escapes level {n}", n + 1),
                false,
            );
            bad += 1;
        }
    }
    if bad == 0 {
        ctx.push(
            "ball-matches-distance",
            format!("{} samples agree", cfg.samples),
            true,
        );
    }
    Ok(())
}

fn run_topology(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "topology",
        cover_id: id,
        records,
    };
    let d = synth(c, false)?;
    let mut rng = sub_rng(cfg.seed, id, 3);
    let mut bad = 0u64;
    for _ in 0..cfg.samples {
        let x = rng.rat();
        let k = rng.below(13);
        let r = Rat::dyadic(k);
        let basic = c.local_base_nbhd(&x, &r);
        match qmetric::level_inside_basic(c, &d, &x, &r) {
            Ok((level, desc)) => {
                let kern = qbase::family_min_nbhd(c, &d, &desc, &x)?;
                if !(kern.member(&x) && kern.subset_of(&basic.set)?) {
                    ctx.push(
                        "basic-contains-ball",
                        format!("x={x} k={k}: witness {desc} (level {level}) escapes"),
                        false,
                    );
                    bad += 1;
                }
            }
            Err(e) => {
                ctx.push("basic-contains-ball", format!("x={x} k={k}: {e}"), false);
                bad += 1;
            }
        }
        let n = rng.below(cfg.levels + 1);
        let ball = qmetric::ball(c, &d, &x, n)?;
        match qmetric::radius_inside_ball(c, &x, &ball) {
            Some(kk) => {
                let inner = basic_nbhd(c.label_of(&x), &x, &Rat::dyadic(kk));
                if !inner.subset_of(&ball)? {
                    ctx.push(
                        "ball-contains-basic",
                        format!("x={x} n={n}: radius 2^-{kk} escapes the ball"),
                        false,
                    );
                    bad += 1;
                }
            }
            None => {
                ctx.push(
                    "ball-contains-basic",
                    format!("x={x} n={n}: no dyadic radius fits"),
                    false,
                );
                bad += 1;
            }
        }
    }
    if bad == 0 {
        ctx.push(
            "topology-agreement",
            format!("{} samples agree both ways", cfg.samples),
            true,
        );
    }
    Ok(())
}

fn run_decomposition(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "decomposition",
        cover_id: id,
        records,
    };
    let d = synth(c, cfg.corrupt)?;
    let violations = decompose::validate(&d, cfg.levels)?;
    if violations.is_empty() {
        ctx.push(
            "family-inclusions",
            format!("levels 0..={} validate", cfg.levels),
            true,
        );
    } else {
        for v in violations {
            ctx.push("family-inclusions", format!("{v:?}"), false);
        }
    }
    let mut rng = sub_rng(cfg.seed, id, 4);
    let mut covered = 0u64;
    let mut miss = 0u64;
    for _ in 0..cfg.samples {
        let x = rng.rat();
        if d.a3().member(&x) {
            if d.coverage_f(&x)?.is_some() {
                covered += 1;
            } else {
                ctx.push(
                    "coverage",
                    format!("{x} in A3 but no F level holds it"),
                    false,
                );
                miss += 1;
            }
        } else if d.a4().member(&x) {
            if d.coverage_h(&x)?.is_some() {
                covered += 1;
            } else {
                ctx.push(
                    "coverage",
                    format!("{x} in A4 but no H level holds it"),
                    false,
                );
                miss += 1;
            }
        }
    }
    if miss == 0 {
        ctx.push(
            "coverage",
            format!("{covered} one-sided points covered"),
            true,
        );
    }
    Ok(())
}

fn run_normality(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "normality",
        cover_id: id,
        records,
    };
    let mut rng = sub_rng(cfg.seed, id, 5);
    let pairs = (cfg.samples / 10).clamp(1, 20);
    let mut bad = 0u64;
    let mut checked = 0u64;
    for _ in 0..pairs {
        // Two euclidean-closed sets with a guaranteed positive gap; both are
        // closed in the hybrid topology since it refines the euclidean one.
        let a = rng.rat();
        let w0 = Rat::new(1 + rng.below(8) as i64, 4);
        let gap = Rat::new(1 + rng.below(8) as i64, 4);
        let w1 = Rat::new(1 + rng.below(8) as i64, 4);
        let b0 = &a + &w0;
        let a1 = &b0 + &gap;
        let b1 = &a1 + &w1;
        let lone = &b1 + &Rat::one();
        let c0 = RSet::from_interval(Interval::closed(a.clone(), b0.clone())?);
        let c1 =
            RSet::from_interval(Interval::closed(a1.clone(), b1)?).union(&RSet::point(lone))?;
        let s0 = c0.sample_members(5);
        let s1 = c1.sample_members(5);
        match separation::check_normality(c, &c0, &c1, &s0, &s1) {
            Ok(rep) => {
                checked += rep.pairs_checked;
                for v in rep.violations {
                    ctx.push("separator-disjointness", v, false);
                    bad += 1;
                }
            }
            Err(e) => {
                ctx.push("separator-disjointness", format!("{e}"), false);
                bad += 1;
            }
        }
    }
    if bad == 0 {
        ctx.push(
            "separator-disjointness",
            format!("{checked} separator pairs disjoint"),
            true,
        );
    }
    Ok(())
}

fn run_urysohn(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "urysohn",
        cover_id: id,
        records,
    };
    let mut rng = sub_rng(cfg.seed, id, 6);
    let rounds = cfg.samples.clamp(1, 25);
    let mut bad = 0u64;
    for _ in 0..rounds {
        let x = rng.rat();
        let u = Rat::new(rng.below(16) as i64, 8);
        let label = c.label_of(&x);
        // Keep E on the side the label's neighborhoods extend toward, so
        // the separation is nontrivial whenever possible.
        let e = if label == Label::Left {
            let hi = &x - &(&Rat::one() + &u);
            RSet::from_interval(Interval::closed(&hi - &Rat::one(), hi)?)
        } else {
            let lo = &x + &Rat::one() + &u;
            RSet::from_interval(Interval::closed(lo.clone(), &lo + &Rat::one())?)
        };
        let eps = match separation::choose_epsilon(c, &x, &e) {
            Ok(eps) => eps,
            Err(err) => {
                ctx.push("epsilon-search", format!("x={x}: {err}"), false);
                bad += 1;
                continue;
            }
        };
        let spec = match UrysohnSpec::new(c, x.clone(), eps.clone(), e.clone()) {
            Ok(s) => s,
            Err(err) => {
                ctx.push("spec-invariant", format!("x={x} eps={eps}: {err}"), false);
                bad += 1;
                continue;
            }
        };
        if separation::urysohn_eval(&spec, &x) != Rat::zero() {
            ctx.push("endpoint-values", format!("f({x}) is not 0"), false);
            bad += 1;
        }
        for t in e.sample_members(4) {
            if separation::urysohn_eval(&spec, &t) != Rat::one() {
                ctx.push(
                    "endpoint-values",
                    format!("f({t}) is not 1 on the far set"),
                    false,
                );
                bad += 1;
            }
        }
        let half = &eps / &Rat::int(2);
        let quarter = &eps / &Rat::int(4);
        let probes = [
            x.clone(),
            &x + &half,
            &x + &(&half + &quarter),
            &x - &half,
            rng.rat(),
        ];
        for t in &probes {
            let v = separation::urysohn_eval(&spec, t);
            if v < Rat::zero() || v > Rat::one() {
                ctx.push("range", format!("f({t}) = {v} leaves [0,1]"), false);
                bad += 1;
            }
            if continuity_radius(c, &spec, t, 20, 64).is_none() {
                ctx.push(
                    "one-sided-continuity",
                    format!("x={x} eps={eps}: no basic neighborhood of {t} holds f within 2^-20"),
                    false,
                );
                bad += 1;
            }
        }
    }
    if bad == 0 {
        ctx.push(
            "urysohn",
            format!("{rounds} specs: endpoints, range, continuity at 2^-20"),
            true,
        );
    }
    Ok(())
}

/// Searches upward for a dyadic radius whose basic neighborhood of `t`
/// keeps `f` within `2^-tol` of `f(t)` on a 50-point grid; the grid follows
/// the label of `t`, so right-stub points are only probed rightward.
pub fn continuity_radius(
    c: &FourCover,
    spec: &UrysohnSpec,
    t: &Rat,
    tol: u64,
    max_k: u64,
) -> Option<u64> {
    let ft = separation::urysohn_eval(spec, t);
    let bound = Rat::dyadic(tol);
    'next_k: for k in 0..=max_k {
        let r = Rat::dyadic(k);
        let label = c.label_of(t);
        for i in 0..50i64 {
            let off = &r * &Rat::new(i, 51);
            let candidates: [Option<Rat>; 2] = match label {
                Label::Isolated => [Some(t.clone()), None],
                Label::Right => [Some(t + &off), None],
                Label::Left => [Some(t - &off), None],
                Label::TwoSided => [Some(t + &off), Some(t - &off)],
            };
            for s in candidates.into_iter().flatten() {
                let diff = (&separation::urysohn_eval(spec, &s) - &ft).abs();
                if diff >= bound {
                    continue 'next_k;
                }
            }
        }
        return Some(k);
    }
    None
}

fn run_extractor(
    cfg: &SuiteConfig,
    id: &str,
    c: &FourCover,
    records: &mut Vec<Record>,
) -> Result<(), CliError> {
    let mut ctx = Ctx {
        suite: "extractor",
        cover_id: id,
        records,
    };
    let d = synth(c, false)?;
    let a23 = d.a2().union(d.a3())?;
    let mut rng = sub_rng(cfg.seed, id, 7);
    let rounds = cfg.samples.clamp(1, 24);
    let mut found = 0u64;
    let mut exhausted = 0u64;
    let mut skipped = 0u64;
    let mut bad = 0u64;
    // Accumulation candidates: (k, n, anchor v, deepest rung).
    let mut groups: Vec<(u64, u64, Rat, u64)> = Vec::new();
    for _ in 0..rounds {
        let v = qbase::q_rat(rng.below(13));
        let t = 16 + rng.below(12);
        let x = &v - &Rat::dyadic(t);
        if c.label_of(&x) != Label::Right {
            skipped += 1;
            continue;
        }
        match qmetric::extractor_cover(c, &d, &x, 64) {
            Ok((k, n)) => {
                found += 1;
                match groups
                    .iter_mut()
                    .find(|(gk, gn, gv, _)| *gk == k && *gn == n && gv == &v)
                {
                    Some(g) => g.3 = g.3.max(t),
                    None => groups.push((k, n, v.clone(), t)),
                }
            }
            Err(QMetricError::BoundExhausted { .. }) => exhausted += 1,
            Err(e) => {
                ctx.push("extractor-cover", format!("x={x}: {e}"), false);
                bad += 1;
            }
        }
    }
    for (k, n, v, deepest) in &groups {
        // Certify v as a sampled left-closure point of F(k,n): every probed
        // left window (v−2⁻ᵈ, v] must meet the family.
        let mut is_limit = true;
        for d_exp in deepest + 1..deepest + 6 {
            let probe = v - &Rat::dyadic(d_exp + 1);
            match qmetric::extractor_member(c, &d, *k, *n, &probe) {
                Ok(true) => {}
                _ => {
                    is_limit = false;
                    break;
                }
            }
        }
        if !is_limit {
            continue;
        }
        if a23.member(v) {
            ctx.push(
                "closure-in-a2-a3",
                format!("F({k},{n}) accumulates at {v}, which is one-sided or isolated"),
                true,
            );
        } else {
            ctx.push(
                "closure-in-a2-a3",
                format!("F({k},{n}) accumulates at {v}, which is two-sided or left"),
                false,
            );
            bad += 1;
        }
    }
    if bad == 0 {
        ctx.push(
            "extractor-cover",
            format!("{found} found, {exhausted} exhausted the bound, {skipped} not right-labeled"),
            true,
        );
    }
    Ok(())
}
