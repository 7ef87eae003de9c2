//! The elimination pipeline from a piecewise system to verified crossing
//! limit cycles, together with the case table of known upper bounds.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rat::{fmt_rat, rat};
use crate::algebra::realsol::{back_substitute as back_sub, eliminant_roots, residual};
use crate::algebra::{self, AlgebraError, Elimination, Outcome, Poly, Rat, UniPoly, Var, NVARS};
use crate::dynamics::{self, IntegratorConfig, OracleCycle, Verification};
use crate::matcher::{self, MatchError, MatchingSystem, Topology};
use crate::systems::{is_continuous, Continuity, LinearSaddle, PiecewiseSystem, Zone, ZoneKind};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundInfo {
    AtMost { limit: usize, case: String, advisory: Option<String> },
    Annulus { case: String },
    NoPeriodicSolution { case: String },
    NotCovered { reason: String },
}

impl BoundInfo {
    /// Largest number of limit cycles the matched theorem allows.
    pub fn max_cycles(&self) -> Option<usize> {
        match self {
            BoundInfo::AtMost { limit, .. } => Some(*limit),
            BoundInfo::Annulus { .. } | BoundInfo::NoPeriodicSolution { .. } => Some(0),
            BoundInfo::NotCovered { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BoundInfo::AtMost { limit, case, .. } => format!("bound <={limit} ({case})"),
            BoundInfo::Annulus { case } => format!("no limit cycle (annulus; {case})"),
            BoundInfo::NoPeriodicSolution { case } => format!("no periodic solution ({case})"),
            BoundInfo::NotCovered { reason } => format!("not covered: {reason}"),
        }
    }
}

fn at_most(limit: usize, case: &str, advisory: Option<String>) -> BoundInfo {
    BoundInfo::AtMost { limit, case: case.into(), advisory }
}

fn not_covered(reason: impl Into<String>) -> BoundInfo {
    BoundInfo::NotCovered { reason: reason.into() }
}

fn zero(r: &Rat) -> bool {
    r.is_zero()
}

/// The theorem bound for the six covered configurations, which place
/// the center on the left, the switching lines at x = 0 or x = -1, 1, the
/// three-zone center at x = -1 and the saddles unshifted.
pub fn theorem_bound(ps: &PiecewiseSystem) -> BoundInfo {
    let unshifted = |z: &Zone| z.offset.is_zero();
    match ps.zones.len() {
        2 => {
            let Some(s) = ps.zones[1].saddle() else {
                return not_covered(format!("{} zone on the right is not a linear saddle", ps.zones[1].kind.label()));
            };
            if matches!(ps.zones[0].kind, ZoneKind::LinearSaddle(_) | ZoneKind::Hamiltonian(_)) {
                return not_covered(format!("{} zone on the left", ps.zones[0].kind.label()));
            }
            if !ps.boundaries[0].is_zero() || !ps.zones.iter().all(unshifted) {
                return not_covered("switching line or zone offsets differ from the x = 0 layout of the theorems");
            }
            let continuous = is_continuous(ps).continuous;
            match &ps.zones[0].kind {
                ZoneKind::DoubleCenter(d) => {
                    if continuous {
                        return BoundInfo::Annulus { case: "double-center/saddle, continuous".into() };
                    }
                    at_most(1, "double-center/saddle, discontinuous", Some(double_center_discriminant(&d.n, s)))
                }
                ZoneKind::GlobalCenter(g) => {
                    if continuous {
                        return BoundInfo::NoPeriodicSolution { case: "global-center/saddle, continuous".into() };
                    }
                    at_most(1, "global-center/saddle, discontinuous", Some(global_center_condition(&g.xi, s)))
                }
                ZoneKind::GeneralCenter(g) => {
                    if continuous {
                        return BoundInfo::Annulus { case: "general-center/saddle, continuous".into() };
                    }
                    let two = rat(2);
                    let three = rat(3);
                    let stated = &two * &g.b * &s.delta * &s.mu * &g.q - &three * &s.mu * &s.mu * &g.q * &g.q;
                    if stated.is_negative() {
                        return not_covered("general-center/saddle with 2 b delta mu q - 3 mu^2 q^2 < 0");
                    }
                    let derived = &g.b * &s.delta * &s.mu * &g.q - &three * &s.mu * &s.mu * &g.q * &g.q;
                    let adv = format!(
                        "matching equations have a real crossing pair iff b delta mu q - 3 mu^2 q^2 > 0 (here {})",
                        fmt_rat(&derived)
                    );
                    at_most(2, "general-center/saddle, discontinuous", Some(adv))
                }
                k => not_covered(format!("{} zone on the left", k.label())),
            }
        }
        3 => {
            let (Some(s1), Some(s2)) = (ps.zones[1].saddle(), ps.zones[2].saddle()) else {
                let kinds: Vec<&str> = ps.zones.iter().map(|z| z.kind.label()).collect();
                return not_covered(format!("{} zones; the middle and right zones must be linear saddles", kinds.join("/")));
            };
            if matches!(ps.zones[0].kind, ZoneKind::LinearSaddle(_) | ZoneKind::Hamiltonian(_)) {
                return not_covered(format!("{} zone on the left", ps.zones[0].kind.label()));
            }
            if ps.boundaries != [rat(-1), rat(1)]
                || !ps.zones[0].offset.is_one()
                || !unshifted(&ps.zones[1])
                || !unshifted(&ps.zones[2])
            {
                return not_covered("switching lines or offsets differ from the x = -1, 1 layout of the theorems");
            }
            match &ps.zones[0].kind {
                ZoneKind::DoubleCenter(d) => double_center_three(&d.n, s1, s2),
                ZoneKind::GlobalCenter(g) => global_center_three(&g.xi, s1, s2),
                ZoneKind::GeneralCenter(g) => general_center_three(&g.b, &g.q, s1, s2),
                k => not_covered(format!("{} zone on the left", k.label())),
            }
        }
        n => not_covered(format!("{n} zones; only two or three are treated")),
    }
}

/// Sign of (12 mu / (n delta^2)) (delta - n mu), which decides whether the
/// two-zone quadratic has two real roots.
fn double_center_discriminant(n: &Rat, s: &LinearSaddle) -> String {
    if zero(n) || zero(&s.delta) {
        return "discriminant undefined (n delta = 0)".into();
    }
    let d = rat(12) * &s.mu / (n * &s.delta * &s.delta) * (&s.delta - n * &s.mu);
    let verdict = if d.is_positive() { "a crossing pair exists" } else { "no crossing pair" };
    format!("discriminant (12 mu/(n delta^2))(delta - n mu) = {}: {verdict}", fmt_rat(&d))
}

fn global_center_condition(xi: &Rat, s: &LinearSaddle) -> String {
    if zero(&s.delta) {
        return "stated condition undefined (delta = 0)".into();
    }
    let md = &s.mu / &s.delta;
    let c1 = &s.mu * &s.delta * (rat(2) * xi + &md);
    let c2 = xi * &md;
    let holds = c1.is_positive() && c2.is_negative();
    format!(
        "stated condition mu delta (2 xi + mu/delta) > 0 and xi mu/delta < 0 {}",
        if holds { "holds" } else { "fails" }
    )
}

fn double_center_three(n: &Rat, s1: &LinearSaddle, s2: &LinearSaddle) -> BoundInfo {
    let (d1, d2) = (&s1.delta, &s2.delta);
    if !zero(d1) && !zero(d2) && !zero(n) {
        return at_most(4, "double-center/saddle/saddle, delta1 delta2 n != 0", None);
    }
    if zero(d1) && !zero(d2) && !zero(n) {
        return at_most(2, "double-center/saddle/saddle, delta1 = 0, delta2 n != 0", None);
    }
    if zero(d1) && zero(n) {
        let k = (&s1.mu + &s1.beta)
            * (rat(2) * d2 * &s1.gamma + (&s2.mu - &s2.beta) * (&s1.mu - &s1.beta));
        if zero(&k) {
            return BoundInfo::Annulus { case: "double-center/saddle/saddle, delta1 = n = 0".into() };
        }
    }
    not_covered("double-center/saddle/saddle outside the theorem's cases")
}

fn global_center_three(xi: &Rat, s1: &LinearSaddle, s2: &LinearSaddle) -> BoundInfo {
    if zero(&s1.delta) || zero(&s2.delta) {
        return not_covered("global-center/saddle/saddle needs delta1 delta2 != 0");
    }
    let l1 = -(&s1.beta + &s1.mu);
    match (zero(&l1), zero(xi)) {
        (false, false) => at_most(4, "global-center/saddle/saddle, l1 xi != 0", None),
        (false, true) => at_most(3, "global-center/saddle/saddle, l1 != 0, xi = 0", None),
        (true, false) => at_most(2, "global-center/saddle/saddle, l1 = 0, xi != 0", None),
        (true, true) => BoundInfo::NoPeriodicSolution { case: "global-center/saddle/saddle, l1 = xi = 0".into() },
    }
}

fn general_center_three(b: &Rat, q: &Rat, s1: &LinearSaddle, s2: &LinearSaddle) -> BoundInfo {
    let (d1, d2) = (&s1.delta, &s2.delta);
    let case = |s: &str| format!("general-center/saddle/saddle, {s}");
    if !zero(d1) && !zero(d2) {
        if zero(&(b * d1 - rat(6) * (&s1.beta + &s1.mu) * q)) {
            return at_most(2, &case("b delta1 - 6(beta1 + mu1) q = 0"), None);
        }
        if !zero(q) {
            return at_most(4, &case("delta1 delta2 q != 0"), None);
        }
        if !zero(b) {
            return at_most(3, &case("q = 0, b delta1 delta2 != 0"), None);
        }
        return not_covered(case("b = q = 0"));
    }
    let sq = &s1.beta * &s1.beta - &s1.mu * &s1.mu;
    let annulus = zero(d1)
        && zero(&(rat(-4) * &sq * d2))
        && zero(&(rat(8) * d2 * &s1.gamma + rat(4) * (&s1.beta - &s1.mu) * (&s2.beta - &s2.mu)));
    if annulus {
        return BoundInfo::Annulus { case: case("delta1 = 0 annulus condition") };
    }
    if zero(d1) && !zero(d2) {
        let exact = !zero(&(rat(-4) * &sq * q));
        let adv = if exact { "exactly one limit cycle since -4(beta1^2 - mu1^2) q != 0" } else { "-4(beta1^2 - mu1^2) q = 0" };
        return at_most(1, &case("delta1 = 0, delta2 != 0"), Some(adv.into()));
    }
    not_covered(case("delta2 = 0"))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("unsupported configuration: {0}")]
    NotCovered(String),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("positive-dimensional solution set")]
    PositiveDimensional,
    #[error("the matching equations have no common solution")]
    Inconsistent,
}

/// Default elimination order and the surviving unknown.
pub fn default_order(ms: &MatchingSystem) -> (Vec<Var>, Var) {
    match ms.topology {
        Topology::TwoZone => (vec![Var::Y2], Var::Y1),
        Topology::ThreeZone => (vec![Var::Y3, Var::Y4, Var::Y2], Var::Y1),
    }
}

/// Successive resultants of the matching equations in `order`.
pub fn eliminate_system(ms: &MatchingSystem, order: &[Var]) -> Result<Elimination, SolveError> {
    Ok(algebra::eliminate(&ms.equations, order)?)
}

/// Univariate eliminant in the unknown left over by `order`.
pub fn eliminate(ms: &MatchingSystem, order: &[Var]) -> Result<UniPoly, SolveError> {
    let survivor = survivor(&ms.unknowns, order);
    let el = eliminate_system(ms, order)?;
    match &el.outcome {
        Outcome::Finite(_) => el.univariate(survivor).ok_or(SolveError::PositiveDimensional),
        Outcome::PositiveDimensional => Err(SolveError::PositiveDimensional),
        Outcome::Inconsistent => Err(SolveError::Inconsistent),
    }
}

fn survivor(unknowns: &[Var], order: &[Var]) -> Var {
    *unknowns.iter().find(|v| !order.contains(v)).expect("order must leave one unknown")
}

/// Full real solutions over one root of the eliminant, as tuples in the
/// order of `ms.unknowns`.
pub fn back_substitute(ms: &MatchingSystem, el: &Elimination, root: f64) -> Vec<Vec<f64>> {
    let s = survivor(&ms.unknowns, &el.order);
    back_sub(el, s, root, &ms.equations, &ms.unknowns)
        .into_iter()
        .map(|vals| ms.unknowns.iter().map(|v| vals[v.0 as usize]).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub refine_tol: f64,
    pub verify: bool,
    /// Elimination order; the default eliminates the inner ordinates first.
    pub order: Option<Vec<Var>>,
    pub integrator: IntegratorConfig,
    /// Run the shooting oracle with this many grid points.
    pub oracle_grid: Option<usize>,
    pub window: Option<(f64, f64)>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            refine_tol: 1e-12,
            verify: true,
            order: None,
            integrator: IntegratorConfig::default(),
            oracle_grid: None,
            window: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateCycle {
    pub boundaries: Vec<f64>,
    /// Crossing ordinates per boundary, ascending.
    pub ordinates: Vec<Vec<f64>>,
    /// Isolating interval of the eliminant root that produced the tuple.
    pub interval: (String, String),
    pub multiplicity: usize,
    pub residual: f64,
    pub ordering_ok: bool,
    pub distinct_ok: bool,
    pub regular_ok: bool,
    pub status: Verification,
    pub closure: Option<f64>,
    pub drift: Option<f64>,
    pub period: Option<f64>,
}

impl CandidateCycle {
    pub fn screened(&self) -> bool {
        self.ordering_ok && self.distinct_ok && self.regular_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRecord {
    pub window: (f64, f64),
    pub grid: usize,
    pub cycles: Vec<OracleCycle>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub continuity: Continuity,
    pub bound: BoundInfo,
    pub topology: Topology,
    pub abbreviations: Vec<(String, String)>,
    pub equations: Vec<String>,
    pub degeneracy: Option<String>,
    pub elimination_order: Vec<String>,
    pub eliminant: Option<String>,
    pub eliminant_degree: Option<usize>,
    pub squarefree_degree: Option<usize>,
    pub eliminant_real_roots: usize,
    pub positive_dimensional: bool,
    pub annulus: bool,
    pub candidates: Vec<CandidateCycle>,
    pub verified: usize,
    pub bound_respected: bool,
    pub diagnostics: Vec<String>,
    pub oracle: Option<OracleRecord>,
}

impl SolveReport {
    pub fn verified_cycles(&self) -> impl Iterator<Item = &CandidateCycle> {
        self.candidates.iter().filter(|c| c.status == Verification::Verified)
    }
}

fn supported(ps: &PiecewiseSystem) -> Result<(), SolveError> {
    if !(2..=3).contains(&ps.zones.len()) {
        return Err(SolveError::NotCovered(format!("{} zones; only two or three are treated", ps.zones.len())));
    }
    Ok(())
}

/// Crossing ordinates per boundary for a solution tuple.
fn per_boundary(topology: Topology, t: &[f64]) -> Vec<Vec<f64>> {
    let sorted = |a: f64, b: f64| if a <= b { vec![a, b] } else { vec![b, a] };
    match topology {
        Topology::TwoZone => vec![sorted(t[0], t[1])],
        Topology::ThreeZone => vec![sorted(t[0], t[1]), sorted(t[3], t[2])],
    }
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Runs the whole pipeline: continuity, theorem bound, matching system,
/// elimination, isolation, back-substitution, screens and verification.
pub fn solve(ps: &PiecewiseSystem, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    supported(ps)?;
    let continuity = is_continuous(ps);
    let bound = theorem_bound(ps);
    let ms = matcher::build(ps)?;
    let (default, _) = default_order(&ms);
    let order = opts.order.clone().unwrap_or(default);
    let mut report = SolveReport {
        continuity,
        bound,
        topology: ms.topology,
        abbreviations: ms.abbreviations.iter().map(|(n, v)| (n.to_string(), fmt_rat(v))).collect(),
        equations: ms.equations.iter().map(|e| e.to_string()).collect(),
        degeneracy: ms.degeneracy.clone(),
        elimination_order: order.iter().map(|v| v.name().to_string()).collect(),
        eliminant: None,
        eliminant_degree: None,
        squarefree_degree: None,
        eliminant_real_roots: 0,
        positive_dimensional: false,
        annulus: false,
        candidates: vec![],
        verified: 0,
        bound_respected: true,
        diagnostics: vec![],
        oracle: None,
    };
    let el = eliminate_system(&ms, &order)?;
    match &el.outcome {
        Outcome::Inconsistent => report.diagnostics.push("matching equations are inconsistent: no crossing tuple".into()),
        Outcome::PositiveDimensional => {
            report.positive_dimensional = true;
            report.annulus = annulus_check(ps, &ms, opts);
            report.diagnostics.push("an intermediate resultant vanished: positive-dimensional solution set".into());
        }
        Outcome::Finite(_) => {
            let s = survivor(&ms.unknowns, &order);
            match el.univariate(s) {
                None => report.diagnostics.push("final equations are not univariate".into()),
                Some(u) => candidates(ps, &ms, &el, &u, opts, &mut report)?,
            }
        }
    }
    report.verified = report.verified_cycles().count();
    if let Some(limit) = report.bound.max_cycles() {
        if report.verified > limit {
            report.bound_respected = false;
            report.diagnostics.push(format!("{} verified cycles exceed the theorem bound {limit}", report.verified));
        }
    }
    if let Some(grid) = opts.oracle_grid {
        report.oracle = Some(oracle_record(ps, &report, grid, opts));
    }
    Ok(report)
}

fn candidates(
    ps: &PiecewiseSystem,
    ms: &MatchingSystem,
    el: &Elimination,
    u: &UniPoly,
    opts: &SolveOptions,
    report: &mut SolveReport,
) -> Result<(), SolveError> {
    report.eliminant = Some(Poly::from_unipoly(u, survivor(&ms.unknowns, &el.order)).to_string());
    report.eliminant_degree = Some(u.degree());
    report.squarefree_degree = Some(u.squarefree().degree());
    let roots = eliminant_roots(u, opts.refine_tol)?;
    report.eliminant_real_roots = roots.len();
    let singular: Vec<bool> = (0..ps.boundaries.len())
        .map(|b| [b, b + 1].iter().any(|&z| matches!(ps.zones[z].kind, ZoneKind::GlobalCenter(_))))
        .collect();
    let mut seen: Vec<Vec<f64>> = vec![];
    for r in &roots {
        let tuples = back_substitute(ms, el, r.interval.value());
        if tuples.is_empty() {
            report.diagnostics.push(format!("root {:.12} of the eliminant is extraneous", r.interval.value()));
        }
        for t in tuples {
            if seen.iter().any(|o| o.iter().zip(&t).all(|(a, b)| near(*a, *b, 1e-9))) {
                continue;
            }
            seen.push(t.clone());
            let mut vals = [0.0; NVARS];
            for (v, x) in ms.unknowns.iter().zip(&t) {
                vals[v.0 as usize] = *x;
            }
            let res = ms.equations.iter().map(|e| residual(e, &vals)).fold(0.0, f64::max);
            let idx = |v: Var| ms.unknowns.iter().position(|w| *w == v).unwrap();
            let ordering_ok = ms.ordering.iter().all(|(a, b)| t[idx(*a)] < t[idx(*b)]);
            let ordinates = per_boundary(ms.topology, &t);
            let distinct_ok = ordinates.iter().all(|o| !near(o[0], o[1], 1e-9));
            let regular_ok =
                ordinates.iter().enumerate().all(|(b, o)| !singular[b] || o.iter().all(|y| y.abs() > 1e-9));
            report.candidates.push(CandidateCycle {
                boundaries: (0..ps.boundaries.len()).map(|i| ps.boundary_f64(i)).collect(),
                ordinates,
                interval: (fmt_rat(&r.interval.lo), fmt_rat(&r.interval.hi)),
                multiplicity: r.multiplicity,
                residual: res,
                ordering_ok,
                distinct_ok,
                regular_ok,
                status: Verification::Unverified,
                closure: None,
                drift: None,
                period: None,
            });
        }
    }
    // the swap symmetry produces each crossing set twice; keep the ordered copy
    report.candidates.retain(|c| c.ordering_ok || !c.distinct_ok);
    for c in report.candidates.iter_mut() {
        if c.multiplicity > 1 {
            report.diagnostics.push(format!(
                "degenerate candidate at {:?}, multiplicity {}",
                c.ordinates, c.multiplicity
            ));
        }
        if !c.screened() {
            let why = if !c.distinct_ok {
                "coincident crossing points"
            } else if !c.regular_ok {
                "integral singular locus"
            } else {
                "ordering"
            };
            c.status = Verification::Rejected(why.into());
            continue;
        }
        if opts.verify {
            let (v, check) = dynamics::verify_candidate(ps, &c.ordinates, &opts.integrator);
            c.status = v;
            c.closure = Some(check.closure);
            c.drift = Some(check.max_drift);
            c.period = Some(check.period);
        }
    }
    report.candidates.retain(|c| c.distinct_ok);
    Ok(())
}

/// Default oracle window: the candidates' bounding box doubled, joined with
/// [-10, 10].
pub fn default_window(report: &SolveReport) -> (f64, f64) {
    let ys: Vec<f64> = report.candidates.iter().flat_map(|c| c.ordinates[0].iter().copied()).collect();
    let (lo, hi) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    if ys.is_empty() {
        return (-10.0, 10.0);
    }
    let (mid, half) = (0.5 * (lo + hi), (hi - lo).max(1e-3));
    ((mid - half).min(-10.0), (mid + half).max(10.0))
}

fn oracle_record(ps: &PiecewiseSystem, report: &SolveReport, grid: usize, opts: &SolveOptions) -> OracleRecord {
    let window = opts.window.unwrap_or_else(|| default_window(report));
    let res = dynamics::shooting_oracle(ps, 0, window, grid, &opts.integrator);
    let verified: Vec<&CandidateCycle> = report
        .verified_cycles()
        .filter(|c| c.ordinates[0].iter().all(|y| *y >= window.0 && *y <= window.1))
        .collect();
    let agree = res.cycles.len() == verified.len()
        && res.cycles.iter().all(|o| verified.iter().any(|c| o.matches(&c.ordinates, 1e-5)));
    OracleRecord { window, grid, cycles: res.cycles, agree }
}

/// True iff the matching system is positive-dimensional and the flow shows
/// at least two distinct closed orbits.
pub fn annulus_check(ps: &PiecewiseSystem, ms: &MatchingSystem, opts: &SolveOptions) -> bool {
    let (order, _) = default_order(ms);
    let positive = match algebra::eliminate(&ms.equations, &order) {
        Ok(el) => el.outcome == Outcome::PositiveDimensional,
        Err(_) => false,
    };
    if !positive {
        return false;
    }
    let window = opts.window.unwrap_or((-10.0, 10.0));
    let flow = dynamics::Flow::new(ps);
    let mut orbits: Vec<Vec<Vec<f64>>> = vec![];
    for y in dynamics::closed_orbits(ps, 0, window, 400, 1e-7, &opts.integrator) {
        let Ok((_, _, log)) = flow.displacement(0, y, &opts.integrator) else { continue };
        let mut per = vec![vec![]; ps.boundaries.len()];
        for c in &log {
            per[c.boundary].push(c.y);
        }
        for p in &mut per {
            p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        let same = |o: &Vec<Vec<f64>>| {
            o.len() == per.len()
                && o.iter().zip(&per).all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| near(*x, *y, 1e-6)))
        };
        if !orbits.iter().any(same) {
            orbits.push(per);
        }
    }
    orbits.len() >= 2
}
