//! Parameter sweeps.  Output columns:
//!
//! - `value`: the parameter value of the sample
//! - `eliminant_real_roots`: distinct real roots of the eliminant (empty when
//!   the matching system is positive-dimensional or the sample failed)
//! - `verified`: verified crossing limit cycles
//! - `bound`: the theorem's maximum, `0` for the annulus and no-periodic-orbit
//!   cases, empty when no theorem applies
//! - `status`: `ok`, `positive-dimensional` or an error message

use rayon::prelude::*;

use super::spec::{Num, SystemSpecFile};
use super::CliError;
use crate::algebra::rat::{fmt_rat, parse_rat, to_f64};
use crate::algebra::Rat;
use crate::solver::{self, SolveOptions};

#[derive(Clone, Debug, PartialEq)]
pub enum ParamPath {
    /// `ZONE.NAME`, with zones counted from 0 left to right.
    Zone(usize, String),
    /// A name from the `[parameters]` table.
    Global(String),
}

impl ParamPath {
    pub fn parse(s: &str) -> Result<ParamPath, CliError> {
        match s.split_once('.') {
            Some((z, name)) => {
                let z = z.parse().map_err(|_| CliError::Usage(format!("bad zone index in {s:?}")))?;
                Ok(ParamPath::Zone(z, name.to_string()))
            }
            None => Ok(ParamPath::Global(s.to_string())),
        }
    }

    fn set(&self, spec: &mut SystemSpecFile, v: &Rat) -> Result<(), CliError> {
        let value = Num::Text(fmt_rat(v));
        match self {
            ParamPath::Zone(z, name) => {
                let n = spec.zones.len();
                let zone = spec
                    .zones
                    .get_mut(*z)
                    .ok_or_else(|| CliError::Usage(format!("zone {z} does not exist ({n} zones)")))?;
                let slot = zone
                    .field_mut(name)
                    .ok_or_else(|| CliError::Usage(format!("zone {z} has no numeric field {name:?}")))?;
                *slot = Some(value);
            }
            ParamPath::Global(name) => {
                let slot = spec
                    .parameters
                    .get_mut(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown parameter {name:?}")))?;
                *slot = value;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub param: ParamPath,
    pub lo: Rat,
    pub hi: Rat,
    pub samples: usize,
}

impl SweepSpec {
    pub fn new(param: &str, lo: &str, hi: &str, samples: usize) -> Result<SweepSpec, CliError> {
        let num = |s: &str| parse_rat(s).map_err(|e| CliError::Usage(format!("range bound {s:?}: {e}")));
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo >= hi {
            return Err(CliError::Usage(format!("range must satisfy lo < hi, got {}:{}", fmt_rat(&lo), fmt_rat(&hi))));
        }
        if samples < 2 {
            return Err(CliError::Usage("a sweep needs at least 2 samples".into()));
        }
        Ok(SweepSpec { param: ParamPath::parse(param)?, lo, hi, samples })
    }

    /// Evenly spaced exact sample values, both ends included.
    pub fn values(&self) -> Vec<Rat> {
        let n = Rat::from_integer(((self.samples - 1) as i64).into());
        (0..self.samples)
            .map(|i| &self.lo + (&self.hi - &self.lo) * Rat::from_integer((i as i64).into()) / &n)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: Rat,
    pub eliminant_real_roots: Option<usize>,
    pub verified: Option<usize>,
    pub bound: Option<usize>,
    pub status: String,
}

fn sample(spec: &SystemSpecFile, sw: &SweepSpec, v: &Rat, opts: &SolveOptions) -> SweepRow {
    let mut row = SweepRow { value: v.clone(), eliminant_real_roots: None, verified: None, bound: None, status: "ok".into() };
    let mut s = spec.clone();
    let ps = match sw.param.set(&mut s, v).map_err(|e| e.to_string()).and_then(|_| s.build().map_err(|e| e.to_string())) {
        Ok(ps) => ps,
        Err(e) => {
            row.status = e;
            return row;
        }
    };
    row.bound = solver::theorem_bound(&ps).max_cycles();
    match solver::solve(&ps, opts) {
        Ok(r) => {
            row.verified = Some(r.verified);
            if r.positive_dimensional {
                row.status = "positive-dimensional".into();
            } else {
                row.eliminant_real_roots = Some(r.eliminant_real_roots);
            }
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

/// Runs every sample, in parallel, and returns the rows in parameter order.
pub fn run(spec: &SystemSpecFile, sw: &SweepSpec, opts: &SolveOptions) -> Result<Vec<SweepRow>, CliError> {
    // reject a bad path before spending any time
    let mut probe = spec.clone();
    sw.param.set(&mut probe, &sw.lo)?;
    Ok(sw.values().par_iter().map(|v| sample(spec, sw, v, opts)).collect())
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(["value", "eliminant_real_roots", "verified", "bound", "status"]).unwrap();
    let opt = |o: Option<usize>| o.map(|n| n.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            format!("{}", to_f64(&r.value)),
            opt(r.eliminant_real_roots),
            opt(r.verified),
            opt(r.bound),
            r.status.clone(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
