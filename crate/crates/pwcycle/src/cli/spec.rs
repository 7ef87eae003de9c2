//! The system description file: a TOML document with exact rational literals.
//!
//! ```toml
//! version = 1
//! boundaries = [-1, 1]
//!
//! [parameters]
//! a = "-7/10"
//!
//! [[zones]]
//! kind = "general-center"
//! offset = 1
//! b = "4*a"
//! q = 1
//!
//! [[zones]]
//! kind = "hamiltonian"
//! h = "y^2 + y/2 - x^2 - x/4"
//! ```
//!
//! Numbers may be integers, decimals (read exactly, so 0.8 is 4/5) or strings
//! holding an expression over the `[parameters]` names.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::parse::parse_poly_with;
use crate::algebra::rat::{fmt_rat, parse_rat};
use crate::algebra::{Poly, Rat, Var};
use crate::systems::{
    DoubleCenter, GeneralCenterG, GlobalCenter, LinearSaddle, PiecewiseSystem, Zone, ZoneKind,
};

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    fn source(&self) -> String {
        match self {
            Num::Int(i) => i.to_string(),
            // Display gives the shortest decimal that reads back to the same float
            Num::Float(f) => format!("{f}"),
            Num::Text(s) => s.clone(),
        }
    }
}

impl From<&Rat> for Num {
    fn from(r: &Rat) -> Num {
        Num::Text(fmt_rat(r))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ZoneSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_scale: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Num>,
    /// Polynomial Hamiltonian in x and y.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpecFile {
    pub version: u32,
    pub boundaries: Vec<Num>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, Num>,
    pub zones: Vec<ZoneSpec>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: Options,
}

fn is_default(o: &Options) -> bool {
    *o == Options::default()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

const FIELDS: [(&str, &[&str]); 5] = [
    ("double-center", &["l", "n", "p"]),
    ("global-center", &["xi"]),
    ("general-center", &["a", "b", "p", "q", "r", "s"]),
    ("saddle", &["alpha", "beta", "delta", "mu", "gamma"]),
    ("hamiltonian", &["h"]),
];

impl ZoneSpec {
    fn fields(&self) -> Vec<(&'static str, Option<&Num>)> {
        vec![
            ("l", self.l.as_ref()),
            ("n", self.n.as_ref()),
            ("p", self.p.as_ref()),
            ("xi", self.xi.as_ref()),
            ("a", self.a.as_ref()),
            ("b", self.b.as_ref()),
            ("q", self.q.as_ref()),
            ("r", self.r.as_ref()),
            ("s", self.s.as_ref()),
            ("alpha", self.alpha.as_ref()),
            ("beta", self.beta.as_ref()),
            ("delta", self.delta.as_ref()),
            ("mu", self.mu.as_ref()),
            ("gamma", self.gamma.as_ref()),
        ]
    }

    pub fn field_mut(&mut self, name: &str) -> Option<&mut Option<Num>> {
        Some(match name {
            "offset" => &mut self.offset,
            "time_scale" => &mut self.time_scale,
            "l" => &mut self.l,
            "n" => &mut self.n,
            "p" => &mut self.p,
            "xi" => &mut self.xi,
            "a" => &mut self.a,
            "b" => &mut self.b,
            "q" => &mut self.q,
            "r" => &mut self.r,
            "s" => &mut self.s,
            "alpha" => &mut self.alpha,
            "beta" => &mut self.beta,
            "delta" => &mut self.delta,
            "mu" => &mut self.mu,
            "gamma" => &mut self.gamma,
            _ => return None,
        })
    }
}

pub fn parse_spec(src: &str) -> Result<SystemSpecFile, SpecError> {
    toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map(|s| line_col(src, s.start)).unwrap_or((0, 0));
        SpecError::Syntax { line, column, message: e.message().trim().to_string() }
    })
}

struct Scope {
    params: BTreeMap<String, Rat>,
}

impl Scope {
    fn poly(&self, src: &str, xy: bool, what: &str) -> Result<Poly, SpecError> {
        parse_poly_with(src, |id| {
            if xy && (id == "x" || id == "y") {
                return Var::from_name(id).map(Poly::var);
            }
            self.params.get(id).map(|r| Poly::constant(r.clone()))
        })
        .map_err(|e| SpecError::Invalid(format!("{what}: {e}")))
    }

    fn value(&self, n: &Num, what: &str) -> Result<Rat, SpecError> {
        if let Num::Float(f) = n {
            if !f.is_finite() {
                return Err(SpecError::Invalid(format!("{what}: not a finite number")));
            }
        }
        let src = n.source();
        if let Ok(r) = parse_rat(src.trim()) {
            return Ok(r);
        }
        let p = self.poly(&src, false, what)?;
        p.constant_value()
            .ok_or_else(|| SpecError::Invalid(format!("{what}: {src:?} is not a number")))
    }
}

impl SystemSpecFile {
    pub fn build(&self) -> Result<PiecewiseSystem, SpecError> {
        if self.version != 1 {
            return Err(SpecError::Invalid(format!("unsupported version {}", self.version)));
        }
        let mut scope = Scope { params: BTreeMap::new() };
        for (name, v) in &self.parameters {
            if name == "x" || name == "y" || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(SpecError::Invalid(format!("invalid parameter name {name:?}")));
            }
            let r = scope.value(v, &format!("parameter {name}"))?;
            scope.params.insert(name.clone(), r);
        }
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, b)| scope.value(b, &format!("boundary {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut zones = vec![];
        for (i, z) in self.zones.iter().enumerate() {
            zones.push(build_zone(&scope, z, i)?);
        }
        let ps = PiecewiseSystem::new(zones, boundaries).map_err(|e| SpecError::Invalid(e.to_string()))?;
        Ok(ps)
    }
}

fn build_zone(scope: &Scope, z: &ZoneSpec, i: usize) -> Result<Zone, SpecError> {
    let Some((_, allowed)) = FIELDS.iter().find(|(k, _)| *k == z.kind) else {
        let kinds: Vec<&str> = FIELDS.iter().map(|(k, _)| *k).collect();
        return Err(SpecError::Invalid(format!("zone {i}: unknown kind {:?} (expected one of {})", z.kind, kinds.join(", "))));
    };
    for (name, v) in z.fields() {
        if v.is_some() && !allowed.contains(&name) {
            return Err(SpecError::Invalid(format!("zone {i}: field {name} does not belong to a {} zone", z.kind)));
        }
    }
    if z.h.is_some() && z.kind != "hamiltonian" {
        return Err(SpecError::Invalid(format!("zone {i}: field h only belongs to a hamiltonian zone")));
    }
    let get = |name: &str| -> Result<Rat, SpecError> {
        let v = z.fields().into_iter().find(|(k, _)| *k == name).and_then(|(_, v)| v.cloned());
        match v {
            Some(v) => scope.value(&v, &format!("zone {i} field {name}")),
            None => Ok(Rat::from_integer(0.into())),
        }
    };
    let require = |name: &str| -> Result<Rat, SpecError> {
        if z.fields().iter().any(|(k, v)| *k == name && v.is_some()) {
            get(name)
        } else {
            Err(SpecError::Invalid(format!("zone {i}: missing field {name}")))
        }
    };
    let kind = match z.kind.as_str() {
        "double-center" => ZoneKind::DoubleCenter(DoubleCenter { l: get("l")?, n: require("n")?, p: get("p")? }),
        "global-center" => ZoneKind::GlobalCenter(GlobalCenter { xi: require("xi")? }),
        "general-center" => ZoneKind::GeneralCenter(GeneralCenterG {
            a: get("a")?,
            b: get("b")?,
            p: get("p")?,
            q: get("q")?,
            r: get("r")?,
            s: get("s")?,
        }),
        "saddle" => ZoneKind::LinearSaddle(LinearSaddle {
            alpha: require("alpha")?,
            beta: get("beta")?,
            delta: get("delta")?,
            mu: get("mu")?,
            gamma: get("gamma")?,
        }),
        _ => {
            let src = z.h.as_ref().ok_or_else(|| SpecError::Invalid(format!("zone {i}: missing field h")))?;
            ZoneKind::Hamiltonian(scope.poly(src, true, &format!("zone {i} field h"))?)
        }
    };
    let mut zone = Zone::new(kind);
    if let Some(o) = &z.offset {
        zone.offset = scope.value(o, &format!("zone {i} offset"))?;
    }
    if let Some(t) = &z.time_scale {
        zone.time_scale = scope.value(t, &format!("zone {i} time_scale"))?;
    }
    if let Err(e) = zone.check() {
        // a center-type linear part in saddle form is what continuity with a
        // double or cubic center requires, so it is accepted
        let linear_center = matches!(&zone.kind, ZoneKind::LinearSaddle(s) if s.alpha.is_one())
            && !zone.time_scale.is_zero();
        if !linear_center {
            return Err(SpecError::Invalid(format!("zone {i}: {e}")));
        }
    }
    Ok(zone)
}

/// Spec file describing `ps` with every value written as an exact rational.
pub fn to_spec(ps: &PiecewiseSystem) -> SystemSpecFile {
    let zones = ps
        .zones
        .iter()
        .map(|z| {
            let mut s = ZoneSpec::default();
            let n = |r: &Rat| Some(Num::from(r));
            match &z.kind {
                ZoneKind::DoubleCenter(d) => {
                    s.kind = "double-center".into();
                    (s.l, s.n, s.p) = (n(&d.l), n(&d.n), n(&d.p));
                }
                ZoneKind::GlobalCenter(g) => {
                    s.kind = "global-center".into();
                    s.xi = n(&g.xi);
                }
                ZoneKind::GeneralCenter(g) => {
                    s.kind = "general-center".into();
                    (s.a, s.b, s.p, s.q, s.r, s.s) = (n(&g.a), n(&g.b), n(&g.p), n(&g.q), n(&g.r), n(&g.s));
                }
                ZoneKind::LinearSaddle(l) => {
                    s.kind = "saddle".into();
                    (s.alpha, s.beta, s.delta, s.mu, s.gamma) =
                        (n(&l.alpha), n(&l.beta), n(&l.delta), n(&l.mu), n(&l.gamma));
                }
                ZoneKind::Hamiltonian(h) => {
                    s.kind = "hamiltonian".into();
                    s.h = Some(h.to_string());
                }
            }
            s.offset = n(&z.offset);
            s.time_scale = n(&z.time_scale);
            s
        })
        .collect();
    SystemSpecFile {
        version: 1,
        boundaries: ps.boundaries.iter().map(Num::from).collect(),
        parameters: BTreeMap::new(),
        zones,
        options: Options::default(),
    }
}

pub fn write_spec(spec: &SystemSpecFile) -> String {
    toml::to_string(spec).expect("spec files always serialize")
}
