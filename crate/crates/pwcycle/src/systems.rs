//! Zone vector fields, their first integrals, and the piecewise container.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::realsol::{back_substitute, eliminant_roots};
use crate::algebra::{eliminate, rat, ratio, CompiledPoly, Outcome, Poly, Rat, Var};
use crate::algebra::rat::{fmt_rat, from_f64, to_f64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SystemError {
    #[error("invalid {kind}: {reason}")]
    Invariant { kind: &'static str, reason: String },
    #[error("degenerate linear part")]
    DegenerateLinearPart,
    #[error("separatrix formula degenerate for delta = 0; use eigenvectors")]
    SeparatrixDegenerate,
    #[error("zone count {zones} does not match boundary count {boundaries} + 1")]
    ZoneCount { zones: usize, boundaries: usize },
    #[error("boundaries must be strictly increasing")]
    BoundaryOrder,
}

fn invariant(kind: &'static str, reason: impl Into<String>) -> SystemError {
    SystemError::Invariant { kind, reason: reason.into() }
}

/// Quadratic perturbation of the linear center, before rotation.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralQuadCenter {
    pub a1: Rat,
    pub b1: Rat,
    pub c1: Rat,
    pub a2: Rat,
    pub b2: Rat,
    pub c2: Rat,
}

/// x' = -y + l x^2 + m x y + n y^2,  y' = x + p x^2 + q x y.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalQuadCenter {
    pub l: Rat,
    pub m: Rat,
    pub n: Rat,
    pub p: Rat,
    pub q: Rat,
}

impl NormalQuadCenter {
    pub fn is_hamiltonian(&self) -> bool {
        self.m.is_zero() && self.q == -rat(2) * &self.l && !self.n.is_zero()
    }

    pub fn to_double_center(&self) -> Option<DoubleCenter> {
        if self.is_hamiltonian() {
            Some(DoubleCenter { l: self.l.clone(), n: self.n.clone(), p: self.p.clone() })
        } else {
            None
        }
    }
}

/// Rotates by theta so that the y^2 coefficient of the second component
/// vanishes.  The rotated coefficients are exact values of doubles.
pub fn rotate_to_normal(g: &GeneralQuadCenter) -> (f64, NormalQuadCenter) {
    let cubic = [
        g.c2.clone(),
        &g.c1 + &g.b2,
        &g.b1 + &g.a2,
        g.a1.clone(),
    ];
    let theta = if cubic.iter().all(|c| c.is_zero()) {
        0.0
    } else if g.a1.is_zero() {
        std::f64::consts::FRAC_PI_2
    } else {
        let p = crate::algebra::UniPoly::new(cubic.to_vec());
        let roots = p.real_roots(1e-15).expect("odd degree cubic");
        roots[0].value().atan()
    };
    let (s, c) = theta.sin_cos();
    let f = |x: f64, y: f64| -> (f64, f64) {
        let q1 = to_f64(&g.a1) * x * x + to_f64(&g.b1) * x * y + to_f64(&g.c1) * y * y;
        let q2 = to_f64(&g.a2) * x * x + to_f64(&g.b2) * x * y + to_f64(&g.c2) * y * y;
        (q1, q2)
    };
    // quadratic part in rotated coordinates
    let rot = |u: f64, v: f64| -> (f64, f64) {
        let (x, y) = (u * c + v * s, -u * s + v * c);
        let (q1, q2) = f(x, y);
        (c * q1 - s * q2, s * q1 + c * q2)
    };
    let form = |k: usize| -> (f64, f64, f64) {
        let pick = |t: (f64, f64)| if k == 0 { t.0 } else { t.1 };
        let a = pick(rot(1.0, 0.0));
        let cc = pick(rot(0.0, 1.0));
        let b = pick(rot(1.0, 1.0)) - a - cc;
        (a, b, cc)
    };
    let (l, m, n) = form(0);
    let (p, q, _r) = form(1);
    let ex = |v: f64| from_f64(v);
    (theta, NormalQuadCenter { l: ex(l), m: ex(m), n: ex(n), p: ex(p), q: ex(q) })
}

/// Residual of the cubic trigonometric coefficient that the rotation removes.
pub fn rotation_residual(g: &GeneralQuadCenter, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    to_f64(&g.a1) * s.powi(3)
        + to_f64(&(&g.b1 + &g.a2)) * s * s * c
        + to_f64(&(&g.c1 + &g.b2)) * c * c * s
        + to_f64(&g.c2) * c.powi(3)
}

/// Hamiltonian quadratic center with centers at (0,0) and (0,1/n).
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCenter {
    pub l: Rat,
    pub n: Rat,
    pub p: Rat,
}

impl DoubleCenter {
    pub fn new(l: Rat, n: Rat, p: Rat) -> Result<Self, SystemError> {
        if n.is_zero() {
            return Err(invariant("double center", "n must be nonzero"));
        }
        Ok(DoubleCenter { l, n, p })
    }
}

/// Integrable quadratic system with a unique center at (0, xi).
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalCenter {
    pub xi: Rat,
}

impl GlobalCenter {
    pub fn new(xi: Rat) -> Result<Self, SystemError> {
        if !xi.is_positive() {
            return Err(invariant("global center", "xi must be positive"));
        }
        Ok(GlobalCenter { xi })
    }
}

/// Cubic Hamiltonian G = p x^3 + q y^3 + r x^2 y + s x y^2 - x^2/2 - a x y - b y^2/2.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralCenterG {
    pub a: Rat,
    pub b: Rat,
    pub p: Rat,
    pub q: Rat,
    pub r: Rat,
    pub s: Rat,
}

impl GeneralCenterG {
    /// The origin is a center iff b - a^2 > 0.
    pub fn has_center(&self) -> bool {
        (&self.b - &self.a * &self.a).is_positive()
    }
}

/// x' = -beta x - delta y + mu,  y' = alpha x + beta y + gamma.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSaddle {
    pub alpha: Rat,
    pub beta: Rat,
    pub delta: Rat,
    pub mu: Rat,
    pub gamma: Rat,
}

impl LinearSaddle {
    pub fn new(alpha: Rat, beta: Rat, delta: Rat, mu: Rat, gamma: Rat) -> Result<Self, SystemError> {
        let s = LinearSaddle { alpha, beta, delta, mu, gamma };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), SystemError> {
        if self.alpha.is_zero() {
            if !self.gamma.is_zero() || self.beta.is_zero() {
                return Err(invariant("linear saddle", "alpha = 0 requires gamma = 0 and beta != 0"));
            }
        } else if self.alpha.is_one() {
            if self.delta >= &self.beta * &self.beta {
                return Err(invariant("linear saddle", "alpha = 1 requires delta < beta^2"));
            }
        } else {
            return Err(invariant("linear saddle", "alpha must be 0 or 1"));
        }
        Ok(())
    }

    fn det(&self) -> Rat {
        &self.alpha * &self.delta - &self.beta * &self.beta
    }

    /// Equilibrium (exact) and the positive eigenvalue.
    pub fn saddle_data(&self) -> Result<((Rat, Rat), f64), SystemError> {
        let d = self.det();
        if d.is_zero() {
            return Err(SystemError::DegenerateLinearPart);
        }
        let x = -(&self.beta * &self.mu + &self.delta * &self.gamma) / &d;
        let y = (&self.alpha * &self.mu + &self.beta * &self.gamma) / &d;
        let ev = if self.alpha.is_zero() {
            to_f64(&self.beta).abs()
        } else {
            to_f64(&(&self.beta * &self.beta - &self.delta)).sqrt()
        };
        Ok(((x, y), ev))
    }

    /// The two invariant lines through the saddle, as (point, slope).
    pub fn separatrices(&self) -> Result<[((f64, f64), f64); 2], SystemError> {
        if self.delta.is_zero() {
            return Err(SystemError::SeparatrixDegenerate);
        }
        let disc = &self.beta * &self.beta - &self.alpha * &self.delta;
        if !disc.is_positive() {
            return Err(invariant("linear saddle", "the linear part has no real eigenvectors"));
        }
        let ((x, y), _) = self.saddle_data()?;
        let pt = (to_f64(&x), to_f64(&y));
        let disc = to_f64(&disc).sqrt();
        let (b, d) = (to_f64(&self.beta), to_f64(&self.delta));
        Ok([(pt, -(b + disc) / d), (pt, -(b - disc) / d)])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZoneKind {
    DoubleCenter(DoubleCenter),
    GlobalCenter(GlobalCenter),
    GeneralCenter(GeneralCenterG),
    LinearSaddle(LinearSaddle),
    /// Any polynomial Hamiltonian in x and y.
    Hamiltonian(Poly),
}

impl ZoneKind {
    pub fn label(&self) -> &'static str {
        match self {
            ZoneKind::DoubleCenter(_) => "double-center",
            ZoneKind::GlobalCenter(_) => "global-center",
            ZoneKind::GeneralCenter(_) => "general-center",
            ZoneKind::LinearSaddle(_) => "saddle",
            ZoneKind::Hamiltonian(_) => "hamiltonian",
        }
    }
}

/// First integral num/den; den is 1 except for the global center.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstIntegral {
    pub num: Poly,
    pub den: Poly,
}

impl FirstIntegral {
    pub fn is_polynomial(&self) -> bool {
        self.den.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }
}

/// One strip of the plane.  The field is `time_scale` times the kind's
/// normal form evaluated at (x + offset, y); a negative scale reverses time.
#[derive(Clone, Debug, PartialEq)]
pub struct Zone {
    pub kind: ZoneKind,
    pub offset: Rat,
    pub time_scale: Rat,
}

impl Zone {
    pub fn new(kind: ZoneKind) -> Zone {
        Zone { kind, offset: Rat::zero(), time_scale: Rat::one() }
    }

    pub fn with_offset(mut self, offset: Rat) -> Zone {
        self.offset = offset;
        self
    }

    pub fn with_time_scale(mut self, s: Rat) -> Zone {
        self.time_scale = s;
        self
    }

    pub fn check(&self) -> Result<(), SystemError> {
        if self.time_scale.is_zero() {
            return Err(invariant("zone", "time scale must be nonzero"));
        }
        match &self.kind {
            ZoneKind::DoubleCenter(d) if d.n.is_zero() => Err(invariant("double center", "n must be nonzero")),
            ZoneKind::GlobalCenter(g) if !g.xi.is_positive() => Err(invariant("global center", "xi must be positive")),
            ZoneKind::LinearSaddle(s) => s.check(),
            ZoneKind::Hamiltonian(h) if h.vars().iter().any(|v| *v != Var::X && *v != Var::Y) => {
                Err(invariant("hamiltonian", "only x and y may appear"))
            }
            _ => Ok(()),
        }
    }

    fn shifted_x(&self) -> Poly {
        &Poly::var(Var::X) + &Poly::constant(self.offset.clone())
    }

    fn shift(&self, p: &Poly) -> Poly {
        p.substitute(Var::X, &self.shifted_x())
    }

    pub fn hamiltonian(&self) -> FirstIntegral {
        let x = Poly::var(Var::X);
        let y = Poly::var(Var::Y);
        let c = |r: &Rat| Poly::constant(r.clone());
        let half = ratio(1, 2);
        let third = ratio(1, 3);
        let (num, den) = match &self.kind {
            ZoneKind::DoubleCenter(d) => {
                let f = &(&(&(&x.pow(2) + &y.pow(2)).scale(&half) - &(&c(&d.l) * &(&x.pow(2) * &y)))
                    - &(&c(&(&d.n * &third)) * &y.pow(3)))
                    + &(&c(&(&d.p * &third)) * &x.pow(3));
                (f, Poly::int(1))
            }
            ZoneKind::GlobalCenter(g) => {
                let n = &(&x.pow(2) - &y) + &c(&(&g.xi * &half));
                (n, y.pow(2))
            }
            ZoneKind::GeneralCenter(g) => {
                let terms = [
                    (&g.p, x.pow(3)),
                    (&g.q, y.pow(3)),
                    (&g.r, &x.pow(2) * &y),
                    (&g.s, &x * &y.pow(2)),
                    (&-half.clone(), x.pow(2)),
                    (&-g.a.clone(), &x * &y),
                    (&-(&g.b * &half), y.pow(2)),
                ];
                let mut f = Poly::zero();
                for (k, m) in terms {
                    f = &f + &m.scale(k);
                }
                (f, Poly::int(1))
            }
            ZoneKind::LinearSaddle(s) => {
                let f = &(&(&x.scale(&-s.gamma.clone()) + &y.scale(&s.mu)) - &(&x * &y).scale(&s.beta))
                    - &(&x.pow(2).scale(&s.alpha) + &y.pow(2).scale(&s.delta)).scale(&half);
                (f, Poly::int(1))
            }
            ZoneKind::Hamiltonian(h) => (h.clone(), Poly::int(1)),
        };
        FirstIntegral { num: self.shift(&num), den: self.shift(&den) }
    }

    /// Exact field components (P, Q) as polynomials in x and y.
    pub fn field(&self) -> (Poly, Poly) {
        let (p, q) = match &self.kind {
            ZoneKind::GlobalCenter(g) => {
                let x = self.shifted_x();
                let y = Poly::var(Var::Y);
                let p = &(&y - &x.pow(2).scale(&rat(2))) - &Poly::constant(g.xi.clone());
                let q = (&x * &y).scale(&rat(-2));
                (p, q)
            }
            ZoneKind::DoubleCenter(_) => {
                let f = self.hamiltonian().num;
                (-f.derivative(Var::Y), f.derivative(Var::X))
            }
            _ => {
                let h = self.hamiltonian().num;
                (h.derivative(Var::Y), -h.derivative(Var::X))
            }
        };
        (p.scale(&self.time_scale), q.scale(&self.time_scale))
    }

    pub fn compiled(&self) -> CompiledZone {
        let (p, q) = self.field();
        let h = self.hamiltonian();
        CompiledZone {
            p: CompiledPoly::new(&p),
            q: CompiledPoly::new(&q),
            num: CompiledPoly::new(&h.num),
            den: CompiledPoly::new(&h.den),
            rational: !h.is_polynomial(),
        }
    }

    pub fn vector_field(&self, x: f64, y: f64) -> (f64, f64) {
        self.compiled().field(x, y)
    }

    /// Linear saddle data in plane coordinates (offset applied).
    pub fn saddle(&self) -> Option<&LinearSaddle> {
        match &self.kind {
            ZoneKind::LinearSaddle(s) => Some(s),
            _ => None,
        }
    }

    /// Real equilibria, found by eliminating y from P = Q = 0.
    pub fn equilibria(&self) -> Vec<(f64, f64)> {
        let (p, q) = self.field();
        let rename = |e: &Poly| e.substitute(Var::X, &Poly::var(Var::Y1)).substitute(Var::Y, &Poly::var(Var::Y2));
        let eqs = [rename(&p), rename(&q)];
        let unknowns = [Var::Y1, Var::Y2];
        let Ok(el) = eliminate(&eqs, &[Var::Y2]) else { return vec![] };
        let mut out = vec![];
        match &el.outcome {
            Outcome::Finite(_) => {
                let Some(u) = el.univariate(Var::Y1) else { return vec![] };
                let Ok(roots) = eliminant_roots(&u, 1e-14) else { return vec![] };
                for r in roots {
                    for s in back_substitute(&el, Var::Y1, r.interval.value(), &eqs, &unknowns) {
                        out.push((s[2], s[3]));
                    }
                }
            }
            _ => {
                // the eliminant vanished: try the other variable first
                let Ok(el) = eliminate(&eqs, &[Var::Y1]) else { return vec![] };
                if let Some(u) = el.univariate(Var::Y2) {
                    if let Ok(roots) = eliminant_roots(&u, 1e-14) {
                        for r in roots {
                            for s in back_substitute(&el, Var::Y2, r.interval.value(), &eqs, &unknowns) {
                                out.push((s[2], s[3]));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Floating-point evaluator for a zone's field and first integral.
#[derive(Clone, Debug)]
pub struct CompiledZone {
    pub p: CompiledPoly,
    pub q: CompiledPoly,
    pub num: CompiledPoly,
    pub den: CompiledPoly,
    pub rational: bool,
}

impl CompiledZone {
    pub fn field(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.eval_xy(x, y), self.q.eval_xy(x, y))
    }

    pub fn integral(&self, x: f64, y: f64) -> f64 {
        if self.rational {
            self.num.eval_xy(x, y) / self.den.eval_xy(x, y)
        } else {
            self.num.eval_xy(x, y)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseSystem {
    pub zones: Vec<Zone>,
    pub boundaries: Vec<Rat>,
}

impl PiecewiseSystem {
    pub fn new(zones: Vec<Zone>, boundaries: Vec<Rat>) -> Result<Self, SystemError> {
        let ps = PiecewiseSystem { zones, boundaries };
        ps.check()?;
        Ok(ps)
    }

    /// Structural checks only; zone invariants are checked by `check_zones`.
    pub fn check(&self) -> Result<(), SystemError> {
        if self.zones.len() != self.boundaries.len() + 1 {
            return Err(SystemError::ZoneCount { zones: self.zones.len(), boundaries: self.boundaries.len() });
        }
        if self.boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SystemError::BoundaryOrder);
        }
        Ok(())
    }

    pub fn check_zones(&self) -> Result<(), SystemError> {
        self.zones.iter().try_for_each(|z| z.check())
    }

    pub fn boundary_f64(&self, i: usize) -> f64 {
        to_f64(&self.boundaries[i])
    }

    /// Index of the zone containing abscissa x (boundaries belong to neither side;
    /// ties go right).
    pub fn zone_at(&self, x: f64) -> usize {
        self.boundaries.iter().take_while(|c| to_f64(c) <= x).count()
    }

    pub fn strip(&self, zone: usize) -> (f64, f64) {
        let lo = if zone == 0 { f64::NEG_INFINITY } else { self.boundary_f64(zone - 1) };
        let hi = if zone == self.boundaries.len() { f64::INFINITY } else { self.boundary_f64(zone) };
        (lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub boundary: usize,
    pub y: String,
    pub gap: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Continuity {
    pub continuous: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Exact identity test of the adjacent fields on every switching line.
pub fn is_continuous(ps: &PiecewiseSystem) -> Continuity {
    let mut mismatches = vec![];
    for (i, c) in ps.boundaries.iter().enumerate() {
        let (pl, ql) = ps.zones[i].field();
        let (pr, qr) = ps.zones[i + 1].field();
        let dp = (&pl - &pr).eval_partial(Var::X, c);
        let dq = (&ql - &qr).eval_partial(Var::X, c);
        if dp.is_zero() && dq.is_zero() {
            continue;
        }
        // smallest integer |y| where the restrictions differ
        let witness = (0..)
            .flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
            .map(rat)
            .find(|y| {
                !dp.eval_partial(Var::Y, y).is_zero() || !dq.eval_partial(Var::Y, y).is_zero()
            })
            .unwrap();
        let gap = (
            to_f64(&dp.eval_partial(Var::Y, &witness).constant_value().unwrap()),
            to_f64(&dq.eval_partial(Var::Y, &witness).constant_value().unwrap()),
        );
        mismatches.push(Mismatch { boundary: i, y: fmt_rat(&witness), gap });
    }
    Continuity { continuous: mismatches.is_empty(), mismatches }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.field();
        write!(f, "{} zone: x' = {p}, y' = {q}", self.kind.label())
    }
}
