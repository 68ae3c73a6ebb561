//! The check suite: each check is a finite, exact property of the library's
//! constructions. Reports are deterministic; wall-clock timings are kept
//! apart so that two runs with the same configuration give identical bytes.

use crate::anodyne::{self, kappa_brute_force, pivot_certificate, PivotFailure};
use crate::error::{dim_cap, invalid, Result};
use crate::fibration::{solve_lift, trivial_fibration, tw_cartesian, LiftingProblem};
use crate::partition::{
    make_partition, mapping_space, mapping_space_oracle, section3_map_in, section3_report, ChainPosets, MapMode,
    Section3Map,
};
use crate::scaled::{verify_certificate, DecorationKind, DecoratedSet, ScaledInclusion, ScaledSet};
use crate::sset::{
    hom_enum, isomorphic, join, nerve, opposite, ordmap, product, simplex_family, standard, FinitePoset, Simplex,
    SimplexKind, SimplicialMap, SimplicialSet,
};
use crate::{io, tw, zoo};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

pub const CHECKS: [&str; 12] = [
    "decomposition",
    "infrastructure",
    "kappa",
    "mapping-space",
    "pivot",
    "poset-maps",
    "q-scaling",
    "r-identities",
    "spot-lifts",
    "trivial-fibration",
    "tw-cartesian",
    "tw-oracle",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Upper bound on level parameters `n`; each check clips its own range.
    pub level: Option<usize>,
}

/// A zoo object handed to the checks in place of the built-in one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub name: String,
    pub n: usize,
    /// `flat`, `sharp`, or absent for the object's own scaling.
    #[serde(default)]
    pub scaling: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub caps: Caps,
    pub objects: Vec<ObjectSpec>,
    pub checks: Vec<String>,
    pub report: Option<PathBuf>,
    pub timings: Option<PathBuf>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            caps: Caps::default(),
            objects: Vec::new(),
            checks: CHECKS.iter().map(|s| s.to_string()).collect(),
            report: None,
            timings: None,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.caps.level {
            if l > dim_cap() {
                return invalid(format!("level cap {l} exceeds the dimension cap {}", dim_cap()));
            }
        }
        for c in &self.checks {
            if !CHECKS.contains(&c.as_str()) {
                return invalid(format!("unknown check {c}"));
            }
        }
        for o in &self.objects {
            if o.name != "q" {
                return invalid(format!("only q can be substituted, not {}", o.name));
            }
            if !matches!(o.scaling.as_deref(), None | Some("flat") | Some("sharp")) {
                return invalid(format!("unknown scaling {:?}", o.scaling));
            }
        }
        Ok(())
    }

    fn upto(&self, n: usize) -> usize {
        self.caps.level.map_or(n, |l| l.min(n))
    }

    /// `Q(n)`, or its substitute.
    fn q(&self, n: usize) -> Result<ScaledSet> {
        let q = zoo::SimplexObject::Q.level(n)?.set;
        match self.objects.iter().rev().find(|o| o.name == "q" && o.n == n).and_then(|o| o.scaling.as_deref()) {
            Some("flat") => Ok(DecoratedSet::flat(&q.base)),
            Some("sharp") => Ok(DecoratedSet::sharp(&q.base)),
            _ => Ok(q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// What was checked, and the first failure if any.
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

/// Accumulates sub-results of one check.
struct Log {
    passed: bool,
    detail: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { passed: true, detail: Vec::new() }
    }

    fn claim(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.passed = false;
            self.detail.push(format!("FAILED {what}"));
        } else {
            self.detail.push(what);
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.claim(false, format!("{what}: {e}"));
                None
            }
        }
    }
}

pub fn run_check(name: &str, cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let mut log = Log::new();
    match name {
        "tw-oracle" => tw_oracle(cfg, &mut log),
        "tw-cartesian" => tw_cartesian_check(cfg, &mut log),
        "kappa" => kappa(cfg, &mut log),
        "pivot" => pivot(cfg, &mut log),
        "decomposition" => decomposition(cfg, &mut log),
        "mapping-space" => mapping_spaces(&mut log),
        "poset-maps" => poset_maps(cfg, &mut log),
        "r-identities" => r_identities(cfg, &mut log),
        "q-scaling" => q_scaling(cfg, &mut log),
        "trivial-fibration" => trivial(&mut log),
        "infrastructure" => infrastructure(cfg, &mut log),
        "spot-lifts" => spot_lifts(cfg, &mut log),
        _ => return invalid(format!("unknown check {name}")),
    }
    Ok(CheckOutcome { name: name.to_string(), passed: log.passed, detail: log.detail })
}

/// Run the configured checks concurrently; the report is ordered by name.
pub fn run_suite(cfg: &SuiteConfig) -> Result<(SuiteReport, Vec<(String, Duration)>)> {
    cfg.validate()?;
    let names: BTreeSet<&str> = cfg.checks.iter().map(|s| s.as_str()).collect();
    let results: Vec<Result<(CheckOutcome, Duration)>> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| {
                s.spawn(move || {
                    let t = Instant::now();
                    run_check(n, cfg).map(|o| (o, t.elapsed()))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    let mut checks = Vec::new();
    let mut timings = Vec::new();
    for r in results {
        let (o, t) = r?;
        timings.push((o.name.clone(), t));
        checks.push(o);
    }
    let passed = checks.iter().all(|c| c.passed);
    let report = SuiteReport { seed: cfg.seed, passed, checks };
    if let Some(p) = &cfg.report {
        write_file(p, &report_text(&report))?;
    }
    if let Some(p) = &cfg.timings {
        let doc: serde_json::Map<String, serde_json::Value> =
            timings.iter().map(|(n, t)| (n.clone(), serde_json::json!(t.as_secs_f64()))).collect();
        write_file(p, &io::to_text(&serde_json::Value::Object(doc)))?;
    }
    Ok((report, timings))
}

pub fn report_text(r: &SuiteReport) -> String {
    io::to_text(&serde_json::to_value(r).expect("reports serialise"))
}

fn write_file(p: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(p, text).map_err(|e| crate::Error::Invalid(format!("writing {}: {e}", p.display())))
}

fn sharp(x: &SimplicialSet) -> ScaledSet {
    ScaledSet::sharp(x)
}

fn posets_upto(k: usize) -> impl Iterator<Item = FinitePoset> {
    (1..=k).flat_map(FinitePoset::natural_posets)
}

/// `tw(N(P)_♯)` against the nerve of the twisted arrow poset, through the
/// vertex map that matches pairs, compatibly with the projections.
fn tw_oracle(_cfg: &SuiteConfig, log: &mut Log) {
    let mut count = 0;
    for p in posets_upto(4) {
        let Some(t) = log.result(tw::tw(&sharp(&nerve(&p)), 3), "tw") else { return };
        let oracle = nerve(&tw::tw_poset(&p)).skeleton(3);
        let pairs: Vec<(usize, usize)> =
            (0..p.len()).cartesian_product(0..p.len()).filter(|&(a, b)| p.leq(a, b)).collect();
        let k = p.len();
        // product vertices are (a, b) at a·|P| + b
        let proj = t.projection.vertex_map();
        let vmap: Option<Vec<usize>> =
            proj.iter().map(|&v| pairs.iter().position(|&(a, b)| a * k + b == v)).collect();
        let ok = vmap.is_some_and(|vm| {
            SimplicialMap::from_vertex_map(&t.nerve.set, &oracle, &vm).is_ok_and(|f| {
                let back: Vec<usize> = vm.iter().map(|&o| pairs[o].0 * k + pairs[o].1).collect();
                f.is_isomorphism() && back == proj
            })
        });
        count += 1;
        if !ok {
            log.claim(false, format!("tw oracle on {:?}", p.covers()));
            return;
        }
    }
    log.claim(true, format!("{count} posets with at most 4 elements: isomorphic over the projections"));
}

fn tw_cartesian_check(cfg: &SuiteConfig, log: &mut Log) {
    for n in 0..=cfg.upto(2) {
        if let Some(r) = log.result(tw_cartesian(&sharp(&standard(n)), 3), "tw") {
            log.claim(r.passed(), format!("tw(Δ{n}♯) Cartesian fibration at dim 3 ({} squares)", r.squares));
        }
    }
}

fn kappa(_cfg: &SuiteConfig, log: &mut Log) {
    let (count, bad) = kappa_brute_force(6);
    log.claim(count > 0 && bad.is_empty(), format!("{count} (dull family, pivot) pairs for n ≤ 6, {} failures", bad.len()));
}

fn pivot(cfg: &SuiteConfig, log: &mut Log) {
    match pivot_certificate(3, &[vec![0], vec![3]], &[[0, 2, 3], [1, 2, 3]], Some(2)) {
        Ok(Ok(run)) => log.claim(run.verdict.is_valid(), "{{0},{3}} with {023,123}, pivot 2"),
        other => log.claim(false, format!("{{0}},{{3}} pivot 2: {other:?}")),
    }
    if let Some(q1) = log.result(cfg.q(1), "Q(1)") {
        let thin: Vec<[usize; 3]> = q1.cell_vertices().into_iter().map(|v| [v[0], v[1], v[2]]).collect();
        let r = pivot_certificate(3, &[vec![0], vec![3]], &thin, Some(1));
        log.claim(matches!(r, Ok(Err(PivotFailure::Hypothesis { .. }))), "pivot 1 under the Q(1) scaling fails the hypothesis");
    }
    for n in 1..=cfg.upto(2) {
        for i in 1..=n {
            let which = if i < n { "fibstep1" } else { "fibstep1 (diamond)" };
            if let Some(c) = log.result(anodyne::fibstep1(n, i), which) {
                let verdict = if i < n && cfg.objects.iter().any(|o| o.name == "q" && o.n == n) {
                    // re-check against the substituted Q(n)
                    cfg.q(n).and_then(|q| {
                        let incl = ScaledInclusion::induced(&q, c.inclusion.sub.clone());
                        verify_certificate(&c.certificate, &incl)
                    })
                } else {
                    Ok(c.verdict.clone())
                };
                let ok = verdict.as_ref().is_ok_and(|v| v.is_valid());
                log.claim(ok, format!("{which}({n},{i}) certificate"));
            }
            if let Some(c) = log.result(anodyne::fibstep2(n, i), "fibstep2") {
                log.claim(c.verdict.is_valid(), format!("fibstep2({n},{i}) certificate"));
            }
        }
    }
    // the substituted Q(1) also feeds fibstep1(1, 1) through its codomain
    if cfg.objects.iter().any(|o| o.name == "q" && o.n == 1) {
        if let (Some(c), Some(q)) = (log.result(anodyne::fibstep1(1, 1), "fibstep1"), log.result(cfg.q(1), "Q(1)")) {
            // keep the extra triangles of the diamond scaling, swap the rest
            let own = zoo::SimplexObject::Q.level(1).map(|l| l.set.cells().clone()).unwrap_or_default();
            let extra: Vec<usize> = c.inclusion.target.cells().difference(&own).copied().collect();
            if c.inclusion.target.base != q.base {
                log.claim(false, "the substitute for Q(1) has the wrong underlying set");
                return;
            }
            let Some(target) = log.result(q.with(extra), "diamond scaling") else { return };
            let incl = ScaledInclusion::induced(&target, c.inclusion.sub.clone());
            let ok = verify_certificate(&c.certificate, &incl).is_ok_and(|v| v.is_valid());
            log.claim(ok, "fibstep1(1,1) against the substituted Q(1)");
        }
    }
}

fn decomposition(cfg: &SuiteConfig, log: &mut Log) {
    use std::cmp::Ordering::*;
    for n in 0..=cfg.upto(2) {
        let Some(b) = log.result(zoo::b_level(n), "B") else { return };
        let b = b.base;
        let all: BTreeSet<_> = b.all_ids().into_iter().collect();
        let union = zoo::b_union(n, &b, |_, _| true);
        log.claim(union.is_ok_and(|u| u == all), format!("n={n}: the σ_(r,s) cover B"));
        let regions = (zoo::b_region(n, &b, Greater), zoo::b_region(n, &b, Less), zoo::b_region(n, &b, Equal));
        if let (Ok(plus), Ok(minus), Ok(zero)) = regions {
            let meet: BTreeSet<_> = plus.intersection(&minus).copied().collect();
            log.claim(meet == zero, format!("n={n}: B⁺ ∩ B⁻ = B⁰"));
            log.claim(zoo::a_sub(n, &b) == zero, format!("n={n}: Aⁿ = B⁰"));
        } else {
            log.claim(false, format!("n={n}: regions"));
        }
        let mut all_w = true;
        for (r, s) in (0..=n).cartesian_product(0..=n).filter(|(r, s)| r > s) {
            let ok = (|| -> Result<bool> {
                let sigma = zoo::sigma_rs(n, r, s)?;
                let stage = zoo::b_union(n, &b, |u, v| u >= v && u - v < r - s)?;
                let w = zoo::w_subcomplex(n, &b, r, s)?;
                Ok(zoo::preimage(&b, &sigma, &stage) == zoo::preimage(&b, &sigma, &w))
            })();
            all_w &= ok.unwrap_or(false);
        }
        log.claim(all_w, format!("n={n}: W_(r,s) is the preimage of the earlier stage"));
        if let Some((c, s)) = log.result(anodyne::xi(n), "xi") {
            log.claim(c.verdict.is_valid() && s.verdict.is_valid(), format!("n={n}: xi certificates"));
        }
    }
}

fn mapping_spaces(log: &mut Log) {
    let mut cases = 0;
    for p in posets_upto(4) {
        let k = p.len();
        for mask in 1..(1u32 << k) - 1 {
            let j1: Vec<usize> = (0..k).filter(|&x| mask >> x & 1 == 1).collect();
            let j0: Vec<usize> = (0..k).filter(|&x| mask >> x & 1 == 0).collect();
            let Ok(part) = make_partition(&p, &j0, &j1) else { continue };
            for mode in j0.iter().map(|&j| MapMode::Right(j)).chain([MapMode::TwoSided]) {
                let (Ok(a), Ok(b)) = (mapping_space(&part, mode), mapping_space_oracle(&part, mode, 2)) else {
                    log.claim(false, format!("construction failed on {:?} with J₁ = {j1:?}", p.covers()));
                    return;
                };
                cases += 1;
                if isomorphic(&a.skeleton(2), &b).is_none() {
                    log.claim(false, format!("{:?}, J₁ = {j1:?}, {mode:?}", p.covers()));
                    return;
                }
            }
        }
    }
    log.claim(true, format!("{cases} (partition, mode) cases agree with the necklace oracle"));
    let chain = FinitePoset::chain(2);
    for j1 in [vec![2], vec![1, 2]] {
        let j0: Vec<usize> = (0..3).filter(|x| !j1.contains(x)).collect();
        let ok = make_partition(&chain, &j0, &j1)
            .and_then(|part| mapping_space(&part, MapMode::Right(0)))
            .is_ok_and(|m| isomorphic(&m, &standard(1)).is_some());
        log.claim(ok, format!("[2] with J₁ = {j1:?} gives Δ¹"));
    }
}

fn poset_maps(cfg: &SuiteConfig, log: &mut Log) {
    use Section3Map::*;
    for n in 0..=cfg.upto(3) {
        let ok = tw::retraction_pair(n).and_then(|rp| {
            let ri = rp.i.then(&rp.r)?;
            Ok(ri.same_as(&SimplicialMap::identity(&rp.q.set.base)))
        });
        log.claim(ok.unwrap_or(false), format!("n={n}: rₙ∘iₙ = id"));
    }
    for n in 0..=cfg.upto(2) {
        let Some(cp) = log.result(ChainPosets::new(n), "chain posets") else { return };
        let m = |w| section3_map_in(&cp, w);
        let pairs = [(SAlpha, RAlpha, "r_α s_α"), (SBeta, RBeta, "r_β s_β")];
        for (s, r, what) in pairs {
            let ok = m(s).and_then(|s| m(r).and_then(|r| s.then(&r))).is_ok_and(|f| f.is_identity());
            log.claim(ok, format!("n={n}: {what} = id"));
        }
        let same = |a, b| matches!((m(a), m(b)), (Ok(x), Ok(y)) if x.image == y.image);
        log.claim(same(HRho(n + 1), H), format!("n={n}: h_ρ at i = n+1 is H"));
        log.claim(same(HRho(0), G), format!("n={n}: h_ρ at 0 is G"));
        let maps = [B, G, GNoCone, H, SAlpha, SBeta, S, RAlpha, RBeta, Collapse].into_iter().chain((0..=n + 1).map(HRho));
        let mut bad = Vec::new();
        for w in maps {
            match section3_report(w, n, 2) {
                Ok(r) if r.descent.holds() && r.preserves_marking => {}
                Ok(r) => bad.push(r.name),
                Err(e) => bad.push(format!("{}: {e}", w.name())),
            }
        }
        log.claim(bad.is_empty(), format!("n={n}: named maps descend and preserve markings {bad:?}"));
    }
    let wrong = section3_report(WrongB, 1, 2);
    log.claim(wrong.is_ok_and(|r| !r.descent.holds()), "negative control: B without the reversal does not descend");
}

fn r_identities(cfg: &SuiteConfig, log: &mut Log) {
    for n in 0..=cfg.upto(3) {
        let ok = (|| -> Result<bool> {
            let c = zoo::mu(n)?.then(&zoo::psi(n)?)?;
            Ok(c.same_as(&SimplicialMap::identity(&zoo::t_level(n)?.base)))
        })();
        log.claim(ok.unwrap_or(false), format!("n={n}: ψₙ∘μₙ = id"));
    }
    for n in 0..=cfg.upto(2) {
        log.claim(zoo::r_poset(n).len() == 6 * (n + 1), format!("n={n}: |Rₙ| = 6(n+1)"));
        let ok = (|| -> Result<bool> {
            let r = zoo::r_level(n)?;
            let bar: Vec<usize> = (0..r.base.count(0)).map(|v| zoo::r_bar(n, v)).collect();
            let f = SimplicialMap::from_vertex_map(&r.base, &opposite(&r.base), &bar)?;
            Ok(f.is_isomorphism() && r.preserved_by(&f, &r.dual()))
        })();
        log.claim(ok.unwrap_or(false), format!("n={n}: bar involution is a scaled iso onto the dual"));
    }
    for n in 0..=cfg.upto(1) {
        let ok = (|| -> Result<bool> {
            let r = zoo::r_level(n)?;
            for sigma in ordmap::monotone_maps(n, 1) {
                if !r.preserved_by(&zoo::phi1(n, &sigma)?, &r) || !r.preserved_by(&zoo::phi2(n, &sigma)?, &r) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        log.claim(ok.unwrap_or(false), format!("n={n}: φ¹, φ² are scaled"));
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn q_scaling(cfg: &SuiteConfig, log: &mut Log) {
    for n in 0..=cfg.upto(4) {
        let Some(q) = log.result(cfg.q(n), "Q") else { return };
        let want = 2 * binom(n + 1, 3) + 2 * binom(n + 2, 3);
        log.claim(q.count() == want, format!("n={n}: {} thin triangles, expected {want}", q.count()));
        let inv = zoo::tau(n).is_ok_and(|t| q.preserved_by(&t, &q.dual()));
        log.claim(inv, format!("n={n}: τ-invariant"));
    }
}

fn to_point(x: &SimplicialSet) -> Result<SimplicialMap> {
    SimplicialMap::from_vertex_map(x, &standard(0), &vec![0; x.count(0)])
}

fn trivial(log: &mut Log) {
    let ok = tw::m_y(&sharp(&standard(1)), 1, 2).and_then(|m| trivial_fibration(&m.pi, 2));
    match ok {
        Ok(r) => log.claim(r.passed(), format!("π: m_y(Δ¹♯, 1) → fiber, trivial at dim 2 ({} squares)", r.squares)),
        Err(e) => log.claim(false, format!("m_y: {e}")),
    }
    let neg = to_point(&standard(1)).and_then(|p| trivial_fibration(&p, 1));
    let ok = neg.is_ok_and(|r| {
        r.counterexample.is_some_and(|c| c.shape == "∂Δ^1" && solve_lift(&c.problem).is_none())
    });
    log.claim(ok, "negative control: Δ¹ → Δ⁰ fails at ∂Δ¹ ⊂ Δ¹");
}

/// Face/degeneracy identities on every simplex up to `dmax`.
fn identities_hold(x: &SimplicialSet, dmax: usize) -> bool {
    for d in 0..=dmax {
        for s in x.all_simplices(d) {
            if !s.is_normal() {
                return false;
            }
            for j in 0..=d {
                let t = x.degeneracy(&s, j);
                if x.face(&t, j) != s || x.face(&t, j + 1) != s {
                    return false;
                }
                for i in 0..j {
                    if x.face(&t, i) != x.degeneracy(&x.face(&s, i), j - 1) {
                        return false;
                    }
                }
                for i in j + 2..=d + 1 {
                    if x.face(&t, i) != x.degeneracy(&x.face(&s, i - 1), j) {
                        return false;
                    }
                }
            }
            if d >= 2 {
                for j in 0..=d {
                    for i in 0..j {
                        if x.face(&x.face(&s, j), i) != x.face(&x.face(&s, i), j - 1) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Degenerate simplices are unique: distinct normal forms, the expected count.
fn ez_unique(x: &SimplicialSet, dmax: usize) -> bool {
    (0..=dmax).all(|d| {
        let all = x.all_simplices(d);
        let distinct: BTreeSet<&Simplex> = all.iter().collect();
        let want: usize = (0..=d).map(|k| x.count(k) * ordmap::surjections(d, k).len()).sum();
        distinct.len() == all.len() && all.len() == want
    })
}

fn infrastructure(cfg: &SuiteConfig, log: &mut Log) {
    let mut samples: Vec<(String, SimplicialSet)> = vec![
        ("Δ³".into(), standard(3)),
        ("Λ³₁".into(), simplex_family(SimplexKind::Horn, 3, Some(1)).unwrap()),
        ("Δ¹×Δ²".into(), product(&standard(1), &standard(2)).set),
    ];
    if let Ok((quotient, _)) = crate::sset::collapse(
        &standard(2),
        &[[crate::sset::SimplexId::new(1, 0)].into_iter().collect()],
    ) {
        samples.push(("Δ²/Δ^{01}".into(), quotient));
    }
    for name in zoo::ZooName::all() {
        for n in 0..=cfg.upto(1) {
            if let Ok(l) = zoo::zoo_level(name, n, None) {
                samples.push((format!("{name:?}({n})"), l.set.base));
            }
        }
    }
    let bad: Vec<&str> = samples
        .iter()
        .filter(|(_, x)| x.validate().is_err() || !identities_hold(x, 2) || !ez_unique(x, 3))
        .map(|(n, _)| n.as_str())
        .collect();
    log.claim(bad.is_empty(), format!("simplicial identities and EZ normal forms on {} sets {bad:?}", samples.len()));

    let (mut ops, mut bad) = (0, Vec::new());
    for p in posets_upto(5) {
        ops += 1;
        if isomorphic(&nerve(&p.opposite()), &opposite(&nerve(&p))).is_none() {
            bad.push(format!("op {:?}", p.covers()));
        }
    }
    let small: Vec<FinitePoset> = posets_upto(4).collect();
    for (p, q) in small.iter().cartesian_product(&small) {
        if p.len() + q.len() <= 6 {
            ops += 1;
            let pr = product(&nerve(p), &nerve(q)).set;
            if isomorphic(&pr, &nerve(&p.product(q))).is_none() {
                bad.push(format!("× {:?} {:?}", p.covers(), q.covers()));
            }
        }
        if p.len() + q.len() <= 5 {
            ops += 1;
            if isomorphic(&join(&nerve(p), &nerve(q)).set, &nerve(&p.ordinal_sum(q))).is_none() {
                bad.push(format!("⋆ {:?} {:?}", p.covers(), q.covers()));
            }
        }
    }
    log.claim(bad.is_empty(), format!("{ops} product/join/opposite comparisons with poset nerves {bad:?}"));

    let mut trips = 0;
    let mut bad = Vec::new();
    for name in zoo::ZooName::all() {
        for n in 0..=cfg.upto(2) {
            let Ok(level) = zoo::zoo_level(name, n, None) else { continue };
            trips += 1;
            let text = io::to_text(&io::decorated_to_json(&level.set));
            let back = io::parse(&text).and_then(|v| io::decorated_from_json(&v));
            let ok = back.is_ok_and(|b| {
                b.kind == DecorationKind::Scaling
                    && isomorphic(&level.set.base, &b.base).is_some_and(|f| level.set.preserved_by(&f, &b))
                    && io::to_text(&io::decorated_to_json(&b)) == text
            });
            if !ok {
                bad.push(format!("{name:?}({n})"));
            }
        }
    }
    log.claim(bad.is_empty(), format!("{trips} zoo objects survive a JSON round trip {bad:?}"));
}

/// Random horn-filling problems into nerves, solved by backtracking and
/// compared with exhaustive enumeration.
fn spot_lifts(cfg: &SuiteConfig, log: &mut Log) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let posets: Vec<FinitePoset> = posets_upto(4).collect();
    let mut tally = (0, 0);
    for _ in 0..24 {
        let p = &posets[rng.random_range(0..posets.len())];
        let n = rng.random_range(1..=3);
        let i = rng.random_range(0..=n);
        let x = nerve(p);
        let h = simplex_family(SimplexKind::Horn, n, Some(i)).unwrap();
        let tops = hom_enum(&h, &x);
        if tops.is_empty() {
            continue;
        }
        let top = &tops[rng.random_range(0..tops.len())];
        let d = standard(n);
        let ok = (|| -> Result<bool> {
            let incl = SimplicialMap::from_vertex_map(&h, &d, &(0..=n).collect::<Vec<_>>())?;
            let prob = LiftingProblem::new(incl.clone(), to_point(&x)?, top.clone(), to_point(&d)?)?;
            let brute = hom_enum(&d, &x).into_iter().any(|f| incl.then(&f).is_ok_and(|g| g.same_as(top)));
            let found = solve_lift(&prob);
            let valid = found.as_ref().is_none_or(|f| incl.then(f).is_ok_and(|g| g.same_as(top)));
            if found.is_some() {
                tally.0 += 1;
            } else {
                tally.1 += 1;
            }
            Ok(found.is_some() == brute && valid)
        })();
        if !ok.unwrap_or(false) {
            log.claim(false, format!("Λ^{n}_{i} into {:?}", p.covers()));
            return;
        }
    }
    log.claim(true, format!("{} solvable and {} unsolvable sampled horns agree with enumeration", tally.0, tally.1));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(check: &str) -> SuiteConfig {
        SuiteConfig { checks: vec![check.into()], ..SuiteConfig::default() }
    }

    #[test]
    fn empty_suite_passes() {
        let (r, t) = run_suite(&SuiteConfig { checks: vec![], ..SuiteConfig::default() }).unwrap();
        assert!(r.passed && r.checks.is_empty() && t.is_empty());
    }

    #[test]
    fn flat_q1_breaks_pivot_check() {
        let mut cfg = only("pivot");
        cfg.caps.level = Some(1);
        assert!(run_suite(&cfg).unwrap().0.passed);
        cfg.objects.push(ObjectSpec { name: "q".into(), n: 1, scaling: Some("flat".into()) });
        let (r, _) = run_suite(&cfg).unwrap();
        assert!(!r.passed);
        assert!(r.checks[0].detail.iter().any(|d| d.starts_with("FAILED")));
    }

    #[test]
    fn config_validation() {
        assert!(run_suite(&only("nope")).is_err());
        let mut cfg = only("pivot");
        cfg.objects.push(ObjectSpec { name: "r".into(), n: 1, scaling: None });
        assert!(cfg.validate().is_err());
        let parsed: SuiteConfig = serde_json::from_str(r#"{"checks": ["kappa"], "seed": 3}"#).unwrap();
        assert_eq!(parsed.seed, 3);
        assert!(serde_json::from_str::<SuiteConfig>(r#"{"chekcs": []}"#).is_err());
    }

    #[test]
    fn report_is_ordered_and_deterministic() {
        let cfg = SuiteConfig {
            checks: vec!["spot-lifts".into(), "q-scaling".into()],
            seed: 7,
            caps: Caps { level: Some(2) },
            ..SuiteConfig::default()
        };
        let (a, _) = run_suite(&cfg).unwrap();
        let (b, _) = run_suite(&cfg).unwrap();
        assert_eq!(report_text(&a), report_text(&b));
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["q-scaling", "spot-lifts"]);
        assert!(a.passed, "{a:?}");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 3), 0);
    }
}
