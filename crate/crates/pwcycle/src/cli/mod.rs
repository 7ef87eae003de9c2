//! Command-line front end: load a system file, analyze, solve, sweep a
//! parameter and export phase-portrait data.

pub mod portrait;
pub mod spec;
pub mod sweep;

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::rat::fmt_rat;
use crate::dynamics::Verification;
use crate::solver::{self, SolveError, SolveOptions, SolveReport};
use crate::systems::{is_continuous, PiecewiseSystem};

pub use spec::{parse_spec, to_spec, write_spec, SpecError, SystemSpecFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotCovered(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 2 for unusable input, 3 for configurations outside the theory, 4 for
    /// internal failures (including a verified count above the theorem bound).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec { .. } | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::NotCovered(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NotCovered(r) => CliError::NotCovered(format!("not covered: {r}")),
            e => CliError::Internal(e.to_string()),
        }
    }
}

/// Reads and validates a system file.
pub fn load(path: &Path) -> Result<(SystemSpecFile, PiecewiseSystem), CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    load_str(&src, &path.display().to_string())
}

pub fn load_str(src: &str, name: &str) -> Result<(SystemSpecFile, PiecewiseSystem), CliError> {
    let wrap = |source| CliError::Spec { path: name.to_string(), source };
    let spec = parse_spec(src).map_err(wrap)?;
    let ps = spec.build().map_err(wrap)?;
    Ok((spec, ps))
}

/// Flags shared by the commands; unset values fall back to the file's
/// `[options]` table.
#[derive(Clone, Debug, Default)]
pub struct CommonOpts {
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub window: Option<(f64, f64)>,
    pub verify: bool,
}

impl CommonOpts {
    pub fn solve_options(&self, spec: &SystemSpecFile) -> Result<SolveOptions, CliError> {
        let mut o = SolveOptions { verify: self.verify, ..Default::default() };
        if let Some(t) = self.tol.or(spec.options.tol) {
            if !(t > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
            }
            o.refine_tol = t;
        }
        o.oracle_grid = self.grid.or(spec.options.grid);
        if let Some(g) = o.oracle_grid {
            if g < 16 {
                return Err(CliError::Usage(format!("oracle grid must have at least 16 points, got {g}")));
            }
        }
        o.window = self.window.or(spec.options.window.map(|w| (w[0], w[1])));
        if let Some((lo, hi)) = o.window {
            if !(lo < hi) {
                return Err(CliError::Usage(format!("window {lo}:{hi} is empty")));
            }
        }
        Ok(o)
    }
}

/// Parses `LO:HI`.
pub fn parse_range(s: &str) -> Result<(String, String), CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("expected LO:HI, got {s:?}")))?;
    Ok((lo.trim().to_string(), hi.trim().to_string()))
}

pub fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let (lo, hi) = parse_range(s)?;
    let num = |t: &str| t.parse::<f64>().map_err(|_| CliError::Usage(format!("not a number: {t:?}")));
    let w = (num(&lo)?, num(&hi)?);
    if !(w.0 < w.1) {
        return Err(CliError::Usage(format!("window {s} is empty")));
    }
    Ok(w)
}

fn supported(ps: &PiecewiseSystem) -> Result<(), CliError> {
    if !(2..=3).contains(&ps.zones.len()) {
        return Err(CliError::NotCovered(format!(
            "not covered: {} zones; only two or three are treated",
            ps.zones.len()
        )));
    }
    Ok(())
}

/// One-line classification, e.g. `discontinuous; bound <=2 (...)`.
pub fn summary(ps: &PiecewiseSystem) -> String {
    let c = if is_continuous(ps).continuous { "continuous" } else { "discontinuous" };
    format!("{c}; {}", solver::theorem_bound(ps).describe())
}

pub fn cmd_analyze(ps: &PiecewiseSystem) -> Result<String, CliError> {
    supported(ps)?;
    let mut out = String::new();
    let _ = writeln!(out, "{}", summary(ps));
    let cont = is_continuous(ps);
    for m in &cont.mismatches {
        let _ = writeln!(
            out,
            "  fields differ on x = {} (at y = {}: jump {:.6}, {:.6})",
            fmt_rat(&ps.boundaries[m.boundary]),
            m.y,
            m.gap.0,
            m.gap.1
        );
    }
    for (i, z) in ps.zones.iter().enumerate() {
        let (lo, hi) = ps.strip(i);
        let _ = writeln!(out, "zone {i} ({}): {z}", strip_label(lo, hi));
        let (hl, hr) = (lo.max(-1e300), hi.min(1e300));
        for (x, y) in z.equilibria() {
            let place = if x > hl && x < hr {
                "real"
            } else if (x - hl).abs() < 1e-12 || (x - hr).abs() < 1e-12 {
                "on the switching line"
            } else {
                "virtual"
            };
            let _ = writeln!(out, "  equilibrium ({:.12}, {:.12}) {place}", x + 0.0, y + 0.0);
        }
        if let Err(e) = z.check() {
            let _ = writeln!(out, "  note: {e}");
        }
        if let Some(s) = z.saddle() {
            if let Ok(seps) = s.separatrices() {
                let off = crate::algebra::rat::to_f64(&z.offset);
                for ((px, py), m) in seps {
                    let _ = writeln!(out, "  separatrix through ({:.12}, {:.12}) slope {m:.12}", px - off + 0.0, py + 0.0);
                }
            }
        }
    }
    match solver::theorem_bound(ps) {
        solver::BoundInfo::AtMost { advisory: Some(a), .. } => {
            let _ = writeln!(out, "note: {a}");
        }
        _ => {}
    }
    Ok(out)
}

fn strip_label(lo: f64, hi: f64) -> String {
    match (lo.is_finite(), hi.is_finite()) {
        (false, true) => format!("x < {hi}"),
        (true, false) => format!("x > {lo}"),
        (true, true) => format!("{lo} < x < {hi}"),
        (false, false) => "whole plane".into(),
    }
}

pub fn run_solve(ps: &PiecewiseSystem, opts: &SolveOptions) -> Result<SolveReport, CliError> {
    supported(ps)?;
    let report = solver::solve(ps, opts)?;
    Ok(report)
}

/// Fails with exit code 4 when more cycles were verified than the theorem
/// allows.
pub fn check_bound(report: &SolveReport) -> Result<(), CliError> {
    if report.bound_respected {
        Ok(())
    } else {
        Err(CliError::Internal(format!(
            "{} verified cycles exceed the theorem bound: {}",
            report.verified,
            report.bound.describe()
        )))
    }
}

pub fn report_json(report: &SolveReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize") + "\n"
}

pub fn report_table(ps: &PiecewiseSystem, report: &SolveReport) -> String {
    let mut out = String::new();
    let c = if report.continuity.continuous { "continuous" } else { "discontinuous" };
    let _ = writeln!(out, "{c}; {}", report.bound.describe());
    match (&report.eliminant, report.positive_dimensional) {
        (_, true) => {
            let _ = writeln!(out, "matching system is positive-dimensional; annulus of closed orbits: {}", report.annulus);
        }
        (Some(e), _) => {
            let _ = writeln!(
                out,
                "eliminant: {e}\n  degree {}, squarefree degree {}, real roots {}",
                report.eliminant_degree.unwrap_or(0),
                report.squarefree_degree.unwrap_or(0),
                report.eliminant_real_roots
            );
        }
        _ => {}
    }
    if report.candidates.is_empty() {
        let _ = writeln!(out, "no crossing candidates");
    } else {
        let _ = writeln!(out, "{:>3}  {:<10} {:>20} {:>20}  status", "#", "boundary", "lower y", "upper y");
    }
    for (k, cand) in report.candidates.iter().enumerate() {
        for (b, ys) in cand.ordinates.iter().enumerate() {
            let status = if b == 0 { status_text(cand) } else { String::new() };
            let idx = if b == 0 { (k + 1).to_string() } else { String::new() };
            let _ = writeln!(
                out,
                "{idx:>3}  {:<10} {:>20.12} {:>20.12}  {status}",
                format!("x = {}", fmt_rat(&ps.boundaries[b])),
                ys[0],
                ys[1]
            );
        }
    }
    let _ = writeln!(out, "verified cycles: {}", report.verified);
    if let Some(o) = &report.oracle {
        let _ = writeln!(
            out,
            "oracle: {} cycles on y in [{}, {}] (grid {}); {}",
            o.cycles.len(),
            o.window.0,
            o.window.1,
            o.grid,
            if o.agree { "agrees" } else { "DISAGREES" }
        );
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

fn status_text(c: &solver::CandidateCycle) -> String {
    match &c.status {
        Verification::Verified => format!(
            "verified (closure {:.1e}, period {:.6})",
            c.closure.unwrap_or(0.0),
            c.period.unwrap_or(0.0)
        ),
        Verification::Unverified => "unverified".into(),
        Verification::Rejected(r) => format!("rejected: {r}"),
    }
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
