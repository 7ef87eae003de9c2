//! Numerical ground truth: adaptive integration of the piecewise flow, return
//! maps on the switching lines and a shooting oracle for periodic orbits.

use serde::Serialize;

use crate::systems::{CompiledZone, PiecewiseSystem, ZoneKind};

#[derive(Clone, Debug)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    pub event_tol: f64,
    pub max_time: f64,
    /// Integration stops once |x| or |y| exceeds this.
    pub window: f64,
    pub max_step: f64,
    /// Keep every accepted step in the trajectory.
    pub record: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-11,
            atol: 1e-12,
            event_tol: 1e-10,
            max_time: 200.0,
            window: 1e3,
            max_step: 0.25,
            record: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub t: f64,
    pub boundary: usize,
    /// +1 when moving right, -1 when moving left.
    pub direction: i8,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Terminal {
    ReachedBoundary,
    TimeLimit,
    HitEquilibrium,
    LeftWindow,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<(f64, f64, f64)>,
    pub crossing: Option<Crossing>,
    pub terminal: Terminal,
    pub end: (f64, f64),
    pub time: f64,
    /// Largest relative change of the zone's first integral along the arc.
    pub drift: f64,
    pub min_speed: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynError {
    #[error("not an entry point: the velocity at ({0}, {1}) points out of the strip")]
    NotEntryPoint(f64, f64),
    #[error("sliding point, not crossing: at y = {y} the adjacent fields push in opposite directions")]
    Sliding { boundary: usize, y: f64 },
    #[error("tangency at y = {y}: the field is parallel to the switching line")]
    Tangency { boundary: usize, y: f64 },
    #[error("no return to the line: arc ended with {0:?}")]
    NoReturn(Terminal),
    #[error("the orbit started in the opposite direction")]
    WrongDirection,
}

// Dormand-Prince 5(4) tableau; the field is autonomous so the nodes are unused.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn rk_step(z: &CompiledZone, s: (f64, f64), h: f64) -> ((f64, f64), (f64, f64)) {
    let mut k = [(0.0, 0.0); 7];
    k[0] = z.field(s.0, s.1);
    for i in 1..7 {
        let (mut x, mut y) = s;
        for j in 0..i {
            x += h * A[i][j] * k[j].0;
            y += h * A[i][j] * k[j].1;
        }
        k[i] = z.field(x, y);
    }
    let mut out = s;
    for j in 0..6 {
        out.0 += h * A[6][j] * k[j].0;
        out.1 += h * A[6][j] * k[j].1;
    }
    let mut err = (0.0, 0.0);
    for j in 0..7 {
        err.0 += h * E[j] * k[j].0;
        err.1 += h * E[j] * k[j].1;
    }
    (out, err)
}

/// A piecewise system compiled for repeated floating-point evaluation.
#[derive(Clone, Debug)]
pub struct Flow {
    pub zones: Vec<CompiledZone>,
    pub bounds: Vec<f64>,
    singular_y0: Vec<bool>,
}

impl Flow {
    pub fn new(ps: &PiecewiseSystem) -> Flow {
        Flow {
            zones: ps.zones.iter().map(|z| z.compiled()).collect(),
            bounds: (0..ps.boundaries.len()).map(|i| ps.boundary_f64(i)).collect(),
            singular_y0: ps.zones.iter().map(|z| matches!(z.kind, ZoneKind::GlobalCenter(_))).collect(),
        }
    }

    pub fn strip(&self, zone: usize) -> (f64, f64) {
        let lo = if zone == 0 { f64::NEG_INFINITY } else { self.bounds[zone - 1] };
        let hi = self.bounds.get(zone).copied().unwrap_or(f64::INFINITY);
        (lo, hi)
    }

    /// Whether y = 0 is the singular line of the integral of a zone next to
    /// the boundary.
    pub fn singular_at(&self, boundary: usize, y: f64) -> bool {
        y.abs() < 1e-9 && (self.singular_y0[boundary] || self.singular_y0[boundary + 1])
    }

    /// Direction in which the flow crosses boundary `b` at ordinate y.
    pub fn crossing_direction(&self, b: usize, y: f64) -> Result<i8, DynError> {
        let c = self.bounds[b];
        let (l, r) = (self.zones[b].field(c, y).0, self.zones[b + 1].field(c, y).0);
        let scale = 1e-13 * (1.0 + y.abs());
        if l.abs() <= scale || r.abs() <= scale {
            return Err(DynError::Tangency { boundary: b, y });
        }
        if l.signum() != r.signum() {
            return Err(DynError::Sliding { boundary: b, y });
        }
        Ok(if l > 0.0 { 1 } else { -1 })
    }

    /// Integrates inside one strip until the orbit reaches a strip boundary.
    pub fn integrate_arc(&self, zone: usize, start: (f64, f64), cfg: &IntegratorConfig) -> Result<Trajectory, DynError> {
        let z = &self.zones[zone];
        let (lo, hi) = self.strip(zone);
        let v0 = z.field(start.0, start.1);
        if ((start.0 - lo).abs() <= cfg.event_tol && v0.0 < 0.0) || ((start.0 - hi).abs() <= cfg.event_tol && v0.0 > 0.0) {
            return Err(DynError::NotEntryPoint(start.0, start.1));
        }
        let i0 = z.integral(start.0, start.1);
        let iscale = i0.abs().max(1.0);
        let mut drift = 0.0f64;
        let mut s = start;
        let mut t = 0.0;
        let speed0 = v0.0.hypot(v0.1);
        let mut min_speed = speed0;
        let mut h = (0.01 / speed0.max(1e-3)).min(cfg.max_step);
        let mut prev_err = 1e-4f64;
        let mut slow = 0;
        let mut samples = if cfg.record { vec![(0.0, s.0, s.1)] } else { vec![] };
        let finish = |samples, crossing, terminal, end: (f64, f64), time, drift, min_speed| {
            Ok(Trajectory { samples, crossing, terminal, end, time, drift, min_speed })
        };
        loop {
            if t >= cfg.max_time {
                return finish(samples, None, Terminal::TimeLimit, s, t, drift, min_speed);
            }
            h = h.min(cfg.max_time - t).min(cfg.max_step);
            let (next, e) = rk_step(z, s, h);
            let sc0 = cfg.atol + cfg.rtol * s.0.abs().max(next.0.abs());
            let sc1 = cfg.atol + cfg.rtol * s.1.abs().max(next.1.abs());
            let err = (((e.0 / sc0).powi(2) + (e.1 / sc1).powi(2)) / 2.0).sqrt();
            if !err.is_finite() {
                h *= 0.1;
                if h < 1e-14 {
                    return finish(samples, None, Terminal::LeftWindow, s, t, drift, min_speed);
                }
                continue;
            }
            if err > 1.0 {
                h *= (0.9 * err.powf(-0.2)).max(0.1);
                if h < 1e-14 {
                    return finish(samples, None, Terminal::HitEquilibrium, s, t, drift, min_speed);
                }
                continue;
            }
            // boundary event inside this step
            let out_lo = next.0 < lo;
            let out_hi = next.0 > hi;
            if out_lo || out_hi {
                let c = if out_lo { lo } else { hi };
                let (hs, hit) = self.locate(z, s, h, c, cfg.event_tol);
                let hit = (c, hit.1);
                let tt = t + hs;
                drift = drift.max((z.integral(hit.0, hit.1) - i0).abs() / iscale);
                if cfg.record {
                    samples.push((tt, hit.0, hit.1));
                }
                let (boundary, direction) = if out_lo { (zone - 1, -1) } else { (zone, 1) };
                let crossing = Crossing { t: tt, boundary, direction, y: hit.1 };
                return finish(samples, Some(crossing), Terminal::ReachedBoundary, hit, tt, drift, min_speed);
            }
            t += h;
            s = next;
            let v = z.field(s.0, s.1);
            let speed = v.0.hypot(v.1);
            min_speed = min_speed.min(speed);
            drift = drift.max((z.integral(s.0, s.1) - i0).abs() / iscale);
            if cfg.record {
                samples.push((t, s.0, s.1));
            }
            if s.0.abs() > cfg.window || s.1.abs() > cfg.window {
                return finish(samples, None, Terminal::LeftWindow, s, t, drift, min_speed);
            }
            slow = if speed < 1e-12 { slow + 1 } else { 0 };
            if slow >= 10 {
                return finish(samples, None, Terminal::HitEquilibrium, s, t, drift, min_speed);
            }
            let err = err.max(1e-10);
            let fac = 0.9 * err.powf(-0.7 / 5.0) * prev_err.powf(0.4 / 5.0);
            h *= fac.clamp(0.2, 5.0);
            prev_err = err;
        }
    }

    /// Step length within (0, h] that lands on x = c, by regula falsi with the
    /// Illinois modification on the step length.
    fn locate(&self, z: &CompiledZone, s: (f64, f64), h: f64, c: f64, tol: f64) -> (f64, (f64, f64)) {
        let g = |hh: f64| {
            let p = if hh == 0.0 { s } else { rk_step(z, s, hh).0 };
            (p.0 - c, p)
        };
        let (mut a, mut b) = (0.0, h);
        let (mut ga, mut pa) = g(a);
        let (mut gb, mut pb) = g(b);
        let mut side = 0;
        for _ in 0..200 {
            if ga.abs() <= tol {
                return (a, pa);
            }
            if gb.abs() <= tol {
                return (b, pb);
            }
            let m = if (gb - ga).abs() > 0.0 { b - gb * (b - a) / (gb - ga) } else { 0.5 * (a + b) };
            let m = if m > a && m < b { m } else { 0.5 * (a + b) };
            let (gm, pm) = g(m);
            if gm.signum() == ga.signum() {
                a = m;
                ga = gm;
                pa = pm;
                if side == -1 {
                    gb *= 0.5;
                }
                side = -1;
            } else {
                b = m;
                gb = gm;
                pb = pm;
                if side == 1 {
                    ga *= 0.5;
                }
                side = 1;
            }
            if b - a < 1e-15 * h.max(1e-300) {
                break;
            }
        }
        if ga.abs() < gb.abs() {
            (a, pa)
        } else {
            (b, pb)
        }
    }

    /// Follows the flow from (c_b, y) until it next crosses boundary b in the
    /// same direction.  Returns the new ordinate and the crossing log (the
    /// last entry is the return).
    pub fn return_map(&self, b: usize, y: f64, cfg: &IntegratorConfig) -> Result<(f64, Vec<Crossing>, Vec<Trajectory>), DynError> {
        let dir = self.crossing_direction(b, y)?;
        let mut zone = if dir > 0 { b + 1 } else { b };
        let mut pt = (self.bounds[b], y);
        let mut log = vec![];
        let mut arcs = vec![];
        let mut elapsed = 0.0;
        for _ in 0..64 {
            let mut c = cfg.clone();
            c.max_time = cfg.max_time - elapsed;
            let arc = self.integrate_arc(zone, pt, &c)?;
            elapsed += arc.time;
            let Some(mut hit) = arc.crossing else { return Err(DynError::NoReturn(arc.terminal)) };
            arcs.push(arc);
            hit.t = elapsed;
            let d = self.crossing_direction(hit.boundary, hit.y)?;
            if d != hit.direction {
                return Err(DynError::Sliding { boundary: hit.boundary, y: hit.y });
            }
            log.push(hit);
            if hit.boundary == b && hit.direction == dir {
                return Ok((hit.y, log, arcs));
            }
            zone = if hit.direction > 0 { hit.boundary + 1 } else { hit.boundary };
            pt = (self.bounds[hit.boundary], hit.y);
        }
        Err(DynError::NoReturn(Terminal::TimeLimit))
    }

    /// Displacement d(y) = P(y) - y together with the crossing direction.
    pub fn displacement(&self, b: usize, y: f64, cfg: &IntegratorConfig) -> Result<(f64, i8, Vec<Crossing>), DynError> {
        let dir = self.crossing_direction(b, y)?;
        let (p, log, _) = self.return_map(b, y, cfg)?;
        Ok((p - y, dir, log))
    }
}

pub fn integrate_arc(ps: &PiecewiseSystem, zone: usize, start: (f64, f64), cfg: &IntegratorConfig) -> Result<Trajectory, DynError> {
    Flow::new(ps).integrate_arc(zone, start, cfg)
}

pub fn return_map(ps: &PiecewiseSystem, b: usize, y: f64, direction: i8, cfg: &IntegratorConfig) -> Result<(f64, Vec<Crossing>), DynError> {
    let flow = Flow::new(ps);
    if flow.crossing_direction(b, y)? != direction {
        return Err(DynError::WrongDirection);
    }
    flow.return_map(b, y, cfg).map(|(p, log, _)| (p, log))
}

/// A periodic orbit found by shooting, described by its crossing ordinates
/// on each boundary, sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCycle {
    pub ordinates: Vec<Vec<f64>>,
}

impl OracleCycle {
    fn from_log(nb: usize, log: &[Crossing]) -> OracleCycle {
        let mut ordinates = vec![vec![]; nb];
        for c in log {
            ordinates[c.boundary].push(c.y);
        }
        for o in &mut ordinates {
            o.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        OracleCycle { ordinates }
    }

    pub fn matches(&self, other: &[Vec<f64>], tol: f64) -> bool {
        self.ordinates.len() == other.len()
            && self.ordinates.iter().zip(other).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|(p, q)| (p - q).abs() <= tol * (1.0 + q.abs()))
            })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleResult {
    /// Fixed points of the displacement function on the scanned boundary.
    pub fixed_points: Vec<f64>,
    /// Distinct orbits with the crossing pattern of the matching system.
    pub cycles: Vec<OracleCycle>,
    /// Orbits with some other crossing pattern.
    pub other_cycles: Vec<OracleCycle>,
    pub skipped: usize,
}

/// Scans d(y) on a uniform grid of boundary b, bisects every sign change
/// between neighbours that cross in the same direction, and keeps the roots
/// where d is genuinely small (the map can jump across separatrices).
pub fn shooting_oracle(ps: &PiecewiseSystem, b: usize, range: (f64, f64), grid: usize, cfg: &IntegratorConfig) -> OracleResult {
    assert!(grid >= 16, "grid must have at least 16 points");
    let flow = Flow::new(ps);
    let ys: Vec<f64> = (0..=grid).map(|i| range.0 + (range.1 - range.0) * i as f64 / grid as f64).collect();
    let vals: Vec<Option<(f64, i8)>> = ys
        .iter()
        .map(|&y| {
            if flow.singular_at(b, y) {
                return None;
            }
            flow.displacement(b, y, cfg).ok().map(|(d, dir, _)| (d, dir))
        })
        .collect();
    let mut out = OracleResult { skipped: vals.iter().filter(|v| v.is_none()).count(), ..Default::default() };
    let mut roots = vec![];
    for i in 0..grid {
        let (Some((da, sa)), Some((db, sb))) = (vals[i], vals[i + 1]) else { continue };
        if sa != sb {
            continue;
        }
        if da == 0.0 {
            roots.push(ys[i]);
            continue;
        }
        if da.signum() == db.signum() || db == 0.0 {
            continue;
        }
        let (mut lo, mut hi, mut dlo) = (ys[i], ys[i + 1], da);
        let mut ok = true;
        while hi - lo > 1e-9 {
            let m = 0.5 * (lo + hi);
            match flow.displacement(b, m, cfg) {
                Ok((dm, s, _)) if s == sa => {
                    if dm.signum() == dlo.signum() {
                        lo = m;
                        dlo = dm;
                    } else {
                        hi = m;
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            roots.push(0.5 * (lo + hi));
        }
    }
    if let Some((d, _)) = vals[grid] {
        if d == 0.0 {
            roots.push(ys[grid]);
        }
    }
    let nb = ps.boundaries.len();
    for y in roots {
        let Ok((d, _, log)) = flow.displacement(b, y, cfg) else { continue };
        if d.abs() > 1e-6 * (1.0 + y.abs()) {
            continue;
        }
        out.fixed_points.push(y);
        let cyc = OracleCycle::from_log(nb, &log);
        let expected = cyc.ordinates.iter().all(|o| o.len() == 2);
        let list = if expected { &mut out.cycles } else { &mut out.other_cycles };
        if !list.iter().any(|c| c.matches(&cyc.ordinates, 1e-6)) {
            list.push(cyc);
        }
    }
    out
}

/// Number of grid ordinates whose orbit closes up to `tol`: two or more
/// separated closures indicate a band of periodic orbits.
pub fn closed_orbits(ps: &PiecewiseSystem, b: usize, range: (f64, f64), grid: usize, tol: f64, cfg: &IntegratorConfig) -> Vec<f64> {
    let flow = Flow::new(ps);
    (0..=grid)
        .map(|i| range.0 + (range.1 - range.0) * i as f64 / grid as f64)
        .filter(|&y| !flow.singular_at(b, y))
        .filter(|&y| matches!(flow.displacement(b, y, cfg), Ok((d, _, _)) if d.abs() < tol))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Verification {
    Unverified,
    Verified,
    Rejected(String),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LoopCheck {
    pub closure: f64,
    pub max_drift: f64,
    pub period: f64,
    #[serde(skip)]
    pub samples: Vec<(f64, f64, f64)>,
}

/// Integrates the loop through the candidate's crossing points, starting at
/// the lowest ordinate on boundary 0, and checks that every hit matches the
/// candidate, that each arc conserves its integral and keeps clear of
/// equilibria, and that the orbit closes.
pub fn verify_candidate(ps: &PiecewiseSystem, ordinates: &[Vec<f64>], cfg: &IntegratorConfig) -> (Verification, LoopCheck) {
    let flow = Flow::new(ps);
    let mut check = LoopCheck::default();
    let reject = |r: String, c| (Verification::Rejected(r), c);
    for (b, ys) in ordinates.iter().enumerate() {
        if ys.iter().any(|&y| flow.singular_at(b, y)) {
            return reject("integral singular locus".into(), check);
        }
    }
    let y0 = ordinates[0].iter().cloned().fold(f64::INFINITY, f64::min);
    let mut c = cfg.clone();
    c.record = true;
    let (p, log, arcs) = match flow.return_map(0, y0, &c) {
        Ok(r) => r,
        Err(e) => return reject(e.to_string(), check),
    };
    for a in &arcs {
        check.max_drift = check.max_drift.max(a.drift);
        let base = check.samples.last().map(|s| s.0).unwrap_or(0.0);
        check.samples.extend(a.samples.iter().map(|s| (s.0 + base, s.1, s.2)));
    }
    check.period = log.last().map(|h| h.t).unwrap_or(0.0);
    check.closure = (p - y0).abs();
    let expected: usize = ordinates.iter().map(|o| o.len()).sum();
    if log.len() != expected {
        return reject(format!("arc leaves zone: {} crossings instead of {expected}", log.len()), check);
    }
    for h in &log {
        let ok = ordinates[h.boundary].iter().any(|&y| (y - h.y).abs() <= 1e-5 * (1.0 + y.abs()));
        if !ok {
            return reject(format!("crossing at y = {:.9} on boundary {} is not a candidate ordinate", h.y, h.boundary), check);
        }
    }
    let mut seen: Vec<Vec<bool>> = ordinates.iter().map(|o| vec![false; o.len()]).collect();
    for h in &log {
        let o = &ordinates[h.boundary];
        let k = (0..o.len())
            .min_by(|&i, &j| (o[i] - h.y).abs().partial_cmp(&(o[j] - h.y).abs()).unwrap())
            .unwrap();
        seen[h.boundary][k] = true;
    }
    if seen.iter().flatten().any(|s| !s) {
        return reject("orbit misses a candidate ordinate".into(), check);
    }
    if check.closure > 1e-6 {
        return reject(format!("orbit does not close: gap {:.3e}", check.closure), check);
    }
    if check.max_drift > 1e-8 {
        return reject(format!("first integral drift {:.3e}", check.max_drift), check);
    }
    for (k, a) in arcs.iter().enumerate() {
        if a.min_speed < 1e-6 {
            let zone = if log[k].direction > 0 { log[k].boundary } else { log[k].boundary + 1 };
            return reject(format!("arc in zone {zone} passes an equilibrium (speed {:.2e})", a.min_speed), check);
        }
    }
    (Verification::Verified, check)
}
