//! Differential verification: every route to the cave polynomial, and the
//! structural identities linking stalactites, truncations and the Möbius
//! function, checked on one instance or on a seeded campaign.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algorithms::{
    box_polynomial, cave_polynomial, interval_mobius_brute_force, mobius_interval, mobius_polynomial,
    mobius_table, mobius_table_from_intervals, signed_counts, snapper_from_cave, snapper_from_independence,
    stalactite_decomposition, stalactite_polynomial, LexOrder, MobiusTable, StalactiteDecomposition,
};
use crate::error::{Error, Result};
use crate::generate::{campaign_configs, random_polymatroid, GeneratorConfig, Strategy};
use crate::geometry::{independence_points, is_cave, truncate};
use crate::point::LatticePoint;
use crate::poly::MultiPoly;
use crate::polymatroid::{is_m_convex, Polymatroid, RankFunction};
use crate::subset::full_mask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// cave = stalactite = box = Möbius
    FourWayEquality,
    /// the stalactite polynomial does not depend on the lex order
    OrderInvariance,
    /// recurrence table = sum of interval closed forms
    MobiusTable,
    /// interval closed form = raw interval recurrence
    IntervalClosedForm,
    /// signed stalactite counts = μ
    SignedCounts,
    /// every truncation is M-convex
    TruncationConvexity,
    /// signed counts of a truncation agree with those of the whole
    TruncationCounts,
    /// coefficients sum to 1
    CoefficientSum,
    /// coefficient signs are `(-1)^(rk - |n|)`
    CancellationFree,
    /// both Snapper formulas expand to the same polynomial, which is 1 at 0
    SnapperRoutes,
    /// the support of the cave polynomial is the stalactite union
    Support,
    /// the stalactite union passes the cave predicate
    CavePredicate,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::FourWayEquality,
        Check::OrderInvariance,
        Check::MobiusTable,
        Check::IntervalClosedForm,
        Check::SignedCounts,
        Check::TruncationConvexity,
        Check::TruncationCounts,
        Check::CoefficientSum,
        Check::CancellationFree,
        Check::SnapperRoutes,
        Check::Support,
        Check::CavePredicate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FourWayEquality => "four-way-equality",
            Check::OrderInvariance => "order-invariance",
            Check::MobiusTable => "mobius-table",
            Check::IntervalClosedForm => "interval-closed-form",
            Check::SignedCounts => "signed-counts",
            Check::TruncationConvexity => "truncation-convexity",
            Check::TruncationCounts => "truncation-counts",
            Check::CoefficientSum => "coefficient-sum",
            Check::CancellationFree => "cancellation-free",
            Check::SnapperRoutes => "snapper-routes",
            Check::Support => "support",
            Check::CavePredicate => "cave-predicate",
        }
    }

    /// Runs this check alone; the error side is a counterexample description.
    pub fn run(self, poly: &Polymatroid) -> Result<(), String> {
        Context::new(poly).run(self)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceDescriptor {
    pub p: usize,
    pub rank: u64,
    pub cage: LatticePoint,
    pub points: Vec<LatticePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
}

impl InstanceDescriptor {
    pub fn of(poly: &Polymatroid) -> Self {
        InstanceDescriptor {
            p: poly.dim(),
            rank: poly.rank(),
            cage: poly.cage().clone(),
            points: poly.points().iter().cloned().collect(),
            generator: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Outcome of every check on one instance. The elapsed time is kept out of
/// the serialized form so that reports are reproducible byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub instance: InstanceDescriptor,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }
}

pub fn verify_instance(poly: &Polymatroid) -> VerificationReport {
    let start = Instant::now();
    let ctx = Context::new(poly);
    let checks = Check::ALL
        .into_iter()
        .map(|check| {
            let result = ctx.run(check);
            CheckOutcome {
                check,
                passed: result.is_ok(),
                counterexample: result.err(),
            }
        })
        .collect();
    VerificationReport {
        instance: InstanceDescriptor::of(poly),
        checks,
        elapsed: start.elapsed(),
    }
}

/// Per-call caches shared between checks.
struct Context<'a> {
    poly: &'a Polymatroid,
    identity: LexOrder,
    independence: OnceCell<BTreeSet<LatticePoint>>,
    cave: OnceCell<Result<MultiPoly>>,
    mobius: OnceCell<MobiusTable>,
    decomposition: OnceCell<Result<StalactiteDecomposition>>,
}

type Outcome = std::result::Result<(), String>;

fn text<T>(r: &Result<T>) -> std::result::Result<&T, String> {
    r.as_ref().map_err(ToString::to_string)
}

fn diff(a: &MultiPoly, b: &MultiPoly) -> String {
    match a.checked_sub(b) {
        Ok(d) => d.to_string(),
        Err(e) => e.to_string(),
    }
}

fn order_label(order: &LexOrder) -> String {
    let items: Vec<String> = order.priority().iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", items.join(","))
}

impl<'a> Context<'a> {
    fn new(poly: &'a Polymatroid) -> Self {
        Context {
            poly,
            identity: LexOrder::identity(poly.dim()),
            independence: OnceCell::new(),
            cave: OnceCell::new(),
            mobius: OnceCell::new(),
            decomposition: OnceCell::new(),
        }
    }

    fn independence(&self) -> &BTreeSet<LatticePoint> {
        self.independence
            .get_or_init(|| independence_points(self.poly).into_points())
    }

    fn cave(&self) -> std::result::Result<&MultiPoly, String> {
        text(self.cave.get_or_init(|| cave_polynomial(self.poly)))
    }

    fn mobius(&self) -> &MobiusTable {
        self.mobius.get_or_init(|| mobius_table(self.poly))
    }

    fn decomposition(&self) -> std::result::Result<&StalactiteDecomposition, String> {
        text(
            self.decomposition
                .get_or_init(|| stalactite_decomposition(self.poly, &self.identity)),
        )
    }

    fn run(&self, check: Check) -> Outcome {
        match check {
            Check::FourWayEquality => self.four_way(),
            Check::OrderInvariance => self.order_invariance(),
            Check::MobiusTable => self.mobius_routes(),
            Check::IntervalClosedForm => self.interval_closed_form(),
            Check::SignedCounts => self.signed_counts(),
            Check::TruncationConvexity => self.truncation_convexity(),
            Check::TruncationCounts => self.truncation_counts(),
            Check::CoefficientSum => self.coefficient_sum(),
            Check::CancellationFree => self.cancellation_free(),
            Check::SnapperRoutes => self.snapper_routes(),
            Check::Support => self.support(),
            Check::CavePredicate => self.cave_predicate(),
        }
    }

    fn four_way(&self) -> Outcome {
        let cave = self.cave()?;
        let others = [
            ("stalactite", stalactite_polynomial(self.poly, &self.identity)),
            ("box", box_polynomial(self.poly)),
            ("mobius", mobius_polynomial(self.poly)),
        ];
        for (name, q) in others {
            let q = text(&q)?;
            if q != cave {
                return Err(format!("{name} - cave = {}", diff(q, cave)));
            }
        }
        Ok(())
    }

    fn order_invariance(&self) -> Outcome {
        let p = self.poly.dim();
        let orders = if p <= 4 {
            LexOrder::all(p)
        } else {
            let reversed = LexOrder::new((0..p).rev().collect()).map_err(|e| e.to_string())?;
            vec![self.identity.clone(), reversed]
        };
        let base = stalactite_polynomial(self.poly, &self.identity).map_err(|e| e.to_string())?;
        for order in orders {
            let q = stalactite_polynomial(self.poly, &order).map_err(|e| e.to_string())?;
            if q != base {
                return Err(format!(
                    "order {}: difference from identity order = {}",
                    order_label(&order),
                    diff(&q, &base)
                ));
            }
        }
        Ok(())
    }

    fn mobius_routes(&self) -> Outcome {
        let recurrence = self.mobius();
        let intervals = mobius_table_from_intervals(self.poly).map_err(|e| e.to_string())?;
        for n in self.independence() {
            let (a, b) = (recurrence.get(n), intervals.get(n));
            if a != b {
                return Err(format!("at {n}: recurrence {a}, interval sum {b}"));
            }
        }
        Ok(())
    }

    fn interval_closed_form(&self) -> Outcome {
        let points = self.independence();
        for m in points {
            for (a, brute) in interval_mobius_brute_force(points, m) {
                let closed = mobius_interval(m, &a).map_err(|e| e.to_string())?;
                if closed != brute {
                    return Err(format!("μ({m}, {a}): closed form {closed}, recurrence {brute}"));
                }
            }
        }
        Ok(())
    }

    fn signed_counts(&self) -> Outcome {
        let counts = signed_counts(self.poly, &self.identity).map_err(|e| e.to_string())?;
        let points = self.independence();
        if let Some(stray) = counts.keys().find(|n| !points.contains(*n)) {
            return Err(format!(
                "stalactite point {stray} lies outside the independence region"
            ));
        }
        for n in points {
            let c = counts.get(n).copied().unwrap_or(0);
            let mu = self.mobius().get(n);
            if c != mu {
                return Err(format!("at {n}: signed count {c}, μ {mu}"));
            }
        }
        Ok(())
    }

    fn truncation_convexity(&self) -> Outcome {
        for n in self.independence() {
            let t = truncate(self.poly, n).map_err(|e| format!("at {n}: {e}"))?;
            match is_m_convex(t.points()) {
                Ok(Ok(())) => {}
                Ok(Err(witness)) => return Err(format!("at {n}: {witness}")),
                Err(e) => return Err(format!("at {n}: {e}")),
            }
        }
        Ok(())
    }

    fn truncation_counts(&self) -> Outcome {
        let whole = signed_counts(self.poly, &self.identity).map_err(|e| e.to_string())?;
        for n in self.independence() {
            let t = truncate(self.poly, n).map_err(|e| format!("at {n}: {e}"))?;
            let part = signed_counts(&t, &self.identity).map_err(|e| e.to_string())?;
            for m in independence_points(&t).points().iter().filter(|m| n.is_below(m)) {
                let (a, b) = (
                    whole.get(m).copied().unwrap_or(0),
                    part.get(m).copied().unwrap_or(0),
                );
                if a != b {
                    return Err(format!("truncation at {n}, point {m}: whole {a}, truncation {b}"));
                }
            }
        }
        Ok(())
    }

    fn coefficient_sum(&self) -> Outcome {
        let sum = self.cave()?.coefficient_sum();
        if sum == 1.into() {
            Ok(())
        } else {
            Err(format!("coefficient sum is {sum}"))
        }
    }

    fn cancellation_free(&self) -> Outcome {
        let rank = self.poly.rank();
        for (n, &c) in self.cave()?.terms() {
            if c.signum() != crate::algorithms::sign(rank, n.degree()) {
                return Err(format!("coefficient {c} at {n}"));
            }
        }
        Ok(())
    }

    fn snapper_routes(&self) -> Outcome {
        let from_cave = snapper_from_cave(self.poly).map_err(|e| e.to_string())?;
        let from_independence = snapper_from_independence(self.poly).map_err(|e| e.to_string())?;
        let (a, b) = (from_cave.expand(), from_independence.expand());
        if a != b {
            return Err(format!("cave route expands to {a}, independence sum to {b}"));
        }
        let zero = vec![0; self.poly.dim()];
        for (name, q) in [
            ("cave route", &from_cave),
            ("independence sum", &from_independence),
        ] {
            let v = q.eval(&zero).map_err(|e| e.to_string())?;
            if v != 1.into() {
                return Err(format!("{name} is {v} at zero"));
            }
        }
        Ok(())
    }

    fn support(&self) -> Outcome {
        let support: BTreeSet<LatticePoint> = self.cave()?.terms().keys().cloned().collect();
        let union = self.decomposition()?.union();
        if support == union {
            return Ok(());
        }
        let first = support.symmetric_difference(&union).next().expect("sets differ");
        Err(format!(
            "{first} is in {} but not in {}",
            if support.contains(first) {
                "the support"
            } else {
                "the stalactite union"
            },
            if support.contains(first) {
                "the stalactite union"
            } else {
                "the support"
            },
        ))
    }

    fn cave_predicate(&self) -> Outcome {
        let union = self.decomposition()?.union();
        let report = is_cave(&union, &self.identity).map_err(|e| e.to_string())?;
        match report.failure {
            None => Ok(()),
            Some(failure) => Err(serde_json::to_string(&failure).unwrap_or_else(|e| e.to_string())),
        }
    }
}

/// Repeatedly replaces `poly` by a smaller polymatroid on which `still_fails`
/// holds: first deleting a coordinate, then lowering a cage entry, then
/// lowering the rank.
pub fn shrink_by(poly: &Polymatroid, still_fails: impl Fn(&Polymatroid) -> bool) -> Polymatroid {
    let mut current = poly.clone();
    'outer: loop {
        for candidate in shrink_candidates(&current) {
            if still_fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

pub fn shrink(poly: &Polymatroid, check: Check) -> Polymatroid {
    shrink_by(poly, |q| check.run(q).is_err())
}

fn shrink_candidates(poly: &Polymatroid) -> Vec<Polymatroid> {
    let rk = poly.rank_function();
    let p = poly.dim();
    let cage = poly.cage().coords().to_vec();
    let mut out = Vec::new();
    let mut push = |p: usize, values: Vec<u32>, cage: Vec<u32>| {
        if let Ok(next) =
            RankFunction::new(p, values, LatticePoint::new(cage)).and_then(|rk| Polymatroid::from_rank(&rk))
        {
            out.push(next);
        }
    };

    if p > 1 {
        for k in 0..p {
            let low = (1u32 << k) - 1;
            let values = (0..=full_mask(p - 1))
                .map(|mask| rk.rank_of((mask & low) | ((mask & !low) << 1)))
                .collect();
            let mut smaller = cage.clone();
            smaller.remove(k);
            push(p - 1, values, smaller);
        }
    }

    for i in 0..p {
        if cage[i] == 0 {
            continue;
        }
        let mut cap = cage.clone();
        cap[i] -= 1;
        let cap_point = LatticePoint::new(cap.clone());
        // rank of the intersection with the box below `cap`
        let values = (0..=full_mask(p))
            .map(|mask| {
                let mut best = u64::MAX;
                let mut sub = mask;
                loop {
                    let v = u64::from(rk.rank_of(sub)) + cap_point.mask_sum(mask & !sub);
                    best = best.min(v);
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & mask;
                }
                best as u32
            })
            .collect();
        push(p, values, cap);
    }

    let r = rk.rank();
    if r > 0 {
        let values = rk.values().iter().map(|&v| v.min(r - 1)).collect();
        push(p, values, cage);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub seed: u64,
    pub p: usize,
    pub rank: u64,
    pub base_points: usize,
    pub failed: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShrunkCounterexample {
    pub instance: InstanceDescriptor,
    pub counterexample: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub strategy: Strategy,
    pub check: Check,
    pub counterexample: String,
    pub instance: InstanceDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<ShrunkCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub config: GeneratorConfig,
    pub count: usize,
    pub passed: usize,
    pub failed: usize,
    pub instances: Vec<InstanceSummary>,
    pub failures: Vec<Failure>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Generates `count` instances from `cfg` (the dimension cycles through
/// `1..=cfg.p`), verifies each, and aggregates the results sorted by seed.
pub fn verify_campaign(cfg: &GeneratorConfig, count: usize, shrink_failures: bool) -> Result<CampaignReport> {
    cfg.validate()?;
    if count == 0 {
        return Err(Error::InvalidConfig("count must be at least 1".into()));
    }
    let mut instances = Vec::with_capacity(count);
    let mut failures = Vec::new();
    for instance_cfg in campaign_configs(cfg, count) {
        let poly = random_polymatroid(&instance_cfg)?;
        let report = verify_instance(&poly);
        for outcome in report.failures() {
            let mut instance = report.instance.clone();
            instance.generator = Some(instance_cfg.clone());
            let shrunk = shrink_failures.then(|| {
                let small = shrink(&poly, outcome.check);
                ShrunkCounterexample {
                    instance: InstanceDescriptor::of(&small),
                    counterexample: outcome.check.run(&small).err().unwrap_or_default(),
                }
            });
            failures.push(Failure {
                seed: instance_cfg.seed,
                strategy: instance_cfg.strategy,
                check: outcome.check,
                counterexample: outcome.counterexample.clone().unwrap_or_default(),
                instance,
                shrunk,
            });
        }
        instances.push(InstanceSummary {
            seed: instance_cfg.seed,
            p: poly.dim(),
            rank: poly.rank(),
            base_points: poly.len(),
            failed: report.failures().map(|c| c.check).collect(),
        });
    }
    instances.sort_by_key(|s| s.seed);
    failures.sort_by_key(|f| (f.seed, f.check));
    let failed = instances.iter().filter(|s| !s.failed.is_empty()).count();
    Ok(CampaignReport {
        config: cfg.clone(),
        count,
        passed: count - failed,
        failed,
        instances,
        failures,
    })
}
