//! Matching systems: the polynomial equations whose solutions are the crossing
//! ordinates of periodic orbits.

use crate::algebra::rat::{rat, ratio};
use crate::algebra::{AlgebraError, Poly, Rat, Var};
use crate::systems::{FirstIntegral, PiecewiseSystem, Zone, ZoneKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    TwoZone,
    ThreeZone,
}

/// Where an equation came from: a level equality inside one zone between two
/// points of the same boundary, or a transport across a zone between both of
/// its boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Level { zone: usize, boundary: usize },
    Transport { zone: usize, from: usize, to: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchingSystem {
    pub unknowns: Vec<Var>,
    pub equations: Vec<Poly>,
    pub topology: Topology,
    /// Strict inequalities `a < b`.
    pub ordering: Vec<(Var, Var)>,
    pub provenance: Vec<Provenance>,
    pub boundaries: Vec<Rat>,
    /// The customary shorthand parameters (l1, m1, ...) when the zones belong to
    /// one of its families.
    pub abbreviations: Vec<(&'static str, Rat)>,
    /// Set when the equations cannot cut out finitely many points.
    pub degeneracy: Option<String>,
}

/// The same system rewritten in u = y1 + y2, v = y1 - y2, w = y3 + y4,
/// z = y3 - y4, with the two transport equations replaced by their sum and
/// difference.
#[derive(Clone, Debug, PartialEq)]
pub struct SumDiffSystem {
    pub unknowns: [Var; 4],
    pub equations: Vec<Poly>,
}

impl SumDiffSystem {
    /// Back to (y1, y2, y3, y4).
    pub fn ordinates(u: f64, v: f64, w: f64, z: f64) -> [f64; 4] {
        [(u + v) / 2.0, (u - v) / 2.0, (w + z) / 2.0, (w - z) / 2.0]
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchError {
    #[error("a level equation is not divisible by the ordinate difference: {0}")]
    NotAntisymmetric(AlgebraError),
    #[error("expected {expected} zones, found {found}")]
    ZoneCount { expected: usize, found: usize },
}

fn restrict(h: &Poly, c: &Rat, y: Var) -> Poly {
    h.eval_partial(Var::X, c).substitute(Var::Y, &Poly::var(y))
}

/// `I(ca, ya) = I(cb, yb)` with denominators cleared.
fn level_equality(h: &FirstIntegral, ca: &Rat, ya: Var, cb: &Rat, yb: Var) -> Poly {
    let na = restrict(&h.num, ca, ya);
    let nb = restrict(&h.num, cb, yb);
    if h.is_polynomial() {
        return &na - &nb;
    }
    &(&na * &restrict(&h.den, cb, yb)) - &(&nb * &restrict(&h.den, ca, ya))
}

/// Level equality of two points on one boundary, with the factor ya - yb removed.
fn same_line_level(h: &FirstIntegral, c: &Rat, ya: Var, yb: Var) -> Result<Poly, MatchError> {
    let e = level_equality(h, c, ya, c, yb);
    e.div_exact(&(&Poly::var(ya) - &Poly::var(yb))).map_err(MatchError::NotAntisymmetric)
}

fn degeneracy(eqs: &[Poly]) -> Option<String> {
    if eqs.iter().any(|e| e.is_zero()) {
        return Some("one-parameter family: an equation vanishes identically".into());
    }
    let prim: Vec<Poly> = eqs.iter().map(|e| e.primitive()).collect();
    for i in 0..prim.len() {
        if prim[i].is_constant() {
            continue;
        }
        for j in i + 1..prim.len() {
            if prim[i] == prim[j] {
                return Some(format!("one-parameter family: equations {} and {} coincide", i + 1, j + 1));
            }
        }
    }
    None
}

/// Two zones meeting at x = c.  Unknowns y1 < y2 on the line.
pub fn build_two_zone_integrals(left: &FirstIntegral, right: &FirstIntegral, c: &Rat) -> Result<MatchingSystem, MatchError> {
    let equations = vec![
        same_line_level(left, c, Var::Y1, Var::Y2)?,
        same_line_level(right, c, Var::Y1, Var::Y2)?,
    ];
    Ok(MatchingSystem {
        unknowns: vec![Var::Y1, Var::Y2],
        degeneracy: degeneracy(&equations),
        equations,
        topology: Topology::TwoZone,
        ordering: vec![(Var::Y1, Var::Y2)],
        provenance: vec![Provenance::Level { zone: 0, boundary: 0 }, Provenance::Level { zone: 1, boundary: 0 }],
        boundaries: vec![c.clone()],
        abbreviations: vec![],
    })
}

/// Three zones with boundaries c1 < c2.  On x = c1 the orbit crosses at
/// y1 < y2, on x = c2 at y4 < y3; the middle zone carries y1 to y4 and y2 to y3.
pub fn build_three_zone_integrals(
    left: &FirstIntegral,
    mid: &FirstIntegral,
    right: &FirstIntegral,
    c1: &Rat,
    c2: &Rat,
) -> Result<MatchingSystem, MatchError> {
    let equations = vec![
        same_line_level(left, c1, Var::Y1, Var::Y2)?,
        level_equality(mid, c1, Var::Y1, c2, Var::Y4),
        level_equality(mid, c1, Var::Y2, c2, Var::Y3),
        same_line_level(right, c2, Var::Y3, Var::Y4)?,
    ];
    Ok(MatchingSystem {
        unknowns: vec![Var::Y1, Var::Y2, Var::Y3, Var::Y4],
        degeneracy: degeneracy(&equations),
        equations,
        topology: Topology::ThreeZone,
        ordering: vec![(Var::Y1, Var::Y2), (Var::Y4, Var::Y3)],
        provenance: vec![
            Provenance::Level { zone: 0, boundary: 0 },
            Provenance::Transport { zone: 1, from: 0, to: 1 },
            Provenance::Transport { zone: 1, from: 0, to: 1 },
            Provenance::Level { zone: 2, boundary: 1 },
        ],
        boundaries: vec![c1.clone(), c2.clone()],
        abbreviations: vec![],
    })
}

pub fn build_two_zone(left: &Zone, right: &Zone, c: &Rat) -> Result<MatchingSystem, MatchError> {
    let mut ms = build_two_zone_integrals(&left.hamiltonian(), &right.hamiltonian(), c)?;
    ms.abbreviations = abbreviations(&[left, right]);
    Ok(ms)
}

pub fn build_three_zone(left: &Zone, mid: &Zone, right: &Zone, c1: &Rat, c2: &Rat) -> Result<MatchingSystem, MatchError> {
    let mut ms = build_three_zone_integrals(&left.hamiltonian(), &mid.hamiltonian(), &right.hamiltonian(), c1, c2)?;
    ms.abbreviations = abbreviations(&[left, mid, right]);
    Ok(ms)
}

/// Matching system of a two- or three-zone piecewise system.
pub fn build(ps: &PiecewiseSystem) -> Result<MatchingSystem, MatchError> {
    match ps.zones.len() {
        2 => build_two_zone(&ps.zones[0], &ps.zones[1], &ps.boundaries[0]),
        3 => build_three_zone(&ps.zones[0], &ps.zones[1], &ps.zones[2], &ps.boundaries[0], &ps.boundaries[1]),
        n => Err(MatchError::ZoneCount { expected: 3, found: n }),
    }
}

/// Shorthand parameters for the three-zone families, scaled as each family's
/// own derivation scales them.
fn abbreviations(zones: &[&Zone]) -> Vec<(&'static str, Rat)> {
    if zones.len() != 3 {
        return vec![];
    }
    let (Some(s1), Some(s2)) = (zones[1].saddle(), zones[2].saddle()) else { return vec![] };
    match zones[0].kind {
        ZoneKind::DoubleCenter(_) => vec![
            ("l1", -(&s1.mu + &s1.beta)),
            ("m1", &s1.mu - &s1.beta),
            ("l2", -(&s2.mu - &s2.beta)),
        ],
        ZoneKind::GlobalCenter(_) => vec![
            ("l1", -(&s1.beta + &s1.mu)),
            ("m1", &s1.beta - &s1.mu),
            ("l2", &s2.beta - &s2.mu),
        ],
        ZoneKind::GeneralCenter(_) => vec![
            ("l1", (&s1.beta + &s1.mu) * rat(-2)),
            ("m1", (&s1.beta - &s1.mu) * rat(2)),
            ("l2", (&s2.beta - &s2.mu) * rat(2)),
            ("k1", &s1.gamma * rat(4)),
        ],
        _ => vec![],
    }
}

/// Rewrites a three-zone system in sum and difference variables.
pub fn to_sum_diff(ms: &MatchingSystem) -> SumDiffSystem {
    assert_eq!(ms.topology, Topology::ThreeZone, "sum/difference form needs four ordinates");
    let half = ratio(1, 2);
    let (u, v, w, z) = (Poly::var(Var::U), Poly::var(Var::V), Poly::var(Var::W), Poly::var(Var::Z));
    let subs = [
        (Var::Y1, (&u + &v).scale(&half)),
        (Var::Y2, (&u - &v).scale(&half)),
        (Var::Y3, (&w + &z).scale(&half)),
        (Var::Y4, (&w - &z).scale(&half)),
    ];
    let e: Vec<Poly> = ms
        .equations
        .iter()
        .map(|e| subs.iter().fold(e.clone(), |acc, (var, by)| acc.substitute(*var, by)))
        .collect();
    SumDiffSystem {
        unknowns: [Var::U, Var::V, Var::W, Var::Z],
        equations: vec![e[0].clone(), &e[1] + &e[2], &e[1] - &e[2], e[3].clone()],
    }
}

/// Substitutes u = y1 + y2 and so on back into a sum/difference system.
pub fn from_sum_diff(sd: &SumDiffSystem) -> Vec<Poly> {
    let y = |i| Poly::var(Var::ordinate(i));
    let subs = [
        (Var::U, &y(0) + &y(1)),
        (Var::V, &y(0) - &y(1)),
        (Var::W, &y(2) + &y(3)),
        (Var::Z, &y(2) - &y(3)),
    ];
    sd.equations
        .iter()
        .map(|e| subs.iter().fold(e.clone(), |acc, (var, by)| acc.substitute(*var, by)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::systems::{GeneralCenterG, GlobalCenter, LinearSaddle};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn proportional(a: &Poly, b: &Poly) -> bool {
        a.primitive() == b.primitive()
    }

    fn ex43() -> (Zone, Zone) {
        let left = Zone::new(ZoneKind::GeneralCenter(GeneralCenterG {
            a: rat(0),
            b: rat(4),
            p: rat(0),
            q: rat(1),
            r: rat(0),
            s: rat(0),
        }));
        let right = Zone::new(ZoneKind::LinearSaddle(
            LinearSaddle::new(rat(1), rat(0), rat(-1), ratio(-1, 2), rat(-2)).unwrap(),
        ))
        .with_time_scale(rat(-1));
        (left, right)
    }

    #[test]
    fn general_center_and_saddle() {
        let (l, r) = ex43();
        let ms = build_two_zone(&l, &r, &rat(0)).unwrap();
        assert!(proportional(&ms.equations[0], &p("y1^2 + y1*y2 + y2^2 - 2*(y1 + y2)")));
        assert!(proportional(&ms.equations[1], &p("y1 + y2 - 1")));
        assert!(ms.degeneracy.is_none());
    }

    #[test]
    fn global_center_and_saddle() {
        let l = Zone::new(ZoneKind::GlobalCenter(GlobalCenter::new(ratio(4, 5)).unwrap()));
        let r = Zone::new(ZoneKind::LinearSaddle(
            LinearSaddle::new(rat(0), rat(-1), rat(-1), rat(-1), rat(0)).unwrap(),
        ));
        let ms = build_two_zone(&l, &r, &rat(0)).unwrap();
        assert!(proportional(&ms.equations[0], &p("y1*y2 - 2/5*(y1 + y2)")));
        assert!(proportional(&ms.equations[1], &p("y1 + y2 - 2")));
    }

    #[test]
    fn identical_zones_degenerate() {
        let (l, _) = ex43();
        let ms = build_two_zone(&l, &l, &rat(0)).unwrap();
        assert!(ms.degeneracy.unwrap().contains("one-parameter family"));
    }

    #[test]
    fn cubic_center_between_saddles() {
        let a = Poly::var(Var::param(0));
        let h = FirstIntegral { num: &p("-y^3 + 1/2*(x+1)^2") + &(&a * &p("2*y^2")), den: Poly::int(1) };
        let h1 = FirstIntegral { num: p("y^2 + y/2 - x^2 - x/4"), den: Poly::int(1) };
        let h2 = FirstIntegral { num: p("y^2 - x^2 + 4*x"), den: Poly::int(1) };
        let ms = build_three_zone_integrals(&h, &h1, &h2, &rat(-1), &rat(1)).unwrap();
        let e1 = &p("y1^2 + y1*y2 + y2^2") - &(&a * &p("2*(y1 + y2)"));
        assert!(proportional(&ms.equations[0], &e1));
        assert!(proportional(&ms.equations[1], &p("y1^2 - y4^2 + 1/2*(y1 - y4) + 1/2")));
        assert!(proportional(&ms.equations[2], &p("y2^2 - y3^2 + 1/2*(y2 - y3) + 1/2")));
        assert!(proportional(&ms.equations[3], &p("y3 + y4")));
    }

    fn cubic_three_zone() -> MatchingSystem {
        let g = Zone::new(ZoneKind::GeneralCenter(GeneralCenterG {
            a: rat(0),
            b: rat(3),
            p: rat(0),
            q: ratio(1, 2),
            r: rat(0),
            s: rat(0),
        }))
        .with_offset(rat(1));
        let s1 = Zone::new(ZoneKind::LinearSaddle(LinearSaddle::new(rat(1), rat(1), rat(-2), rat(1), rat(3)).unwrap()));
        let s2 = Zone::new(ZoneKind::LinearSaddle(LinearSaddle::new(rat(1), rat(2), rat(1), rat(-1), rat(0)).unwrap()));
        build_three_zone(&g, &s1, &s2, &rat(-1), &rat(1)).unwrap()
    }

    #[test]
    fn sum_diff_first_equation() {
        let ms = cubic_three_zone();
        let sd = to_sum_diff(&ms);
        // q/2 (3u^2 + v^2) - b u with q = 1/2, b = 3
        assert!(proportional(&sd.equations[0], &p("1/4*(3*u^2 + v^2) - 3*u")));
        let names: Vec<&str> = ms.abbreviations.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["l1", "m1", "l2", "k1"]);
        assert_eq!(ms.abbreviations[0].1, rat(-4));
        assert_eq!(ms.abbreviations[3].1, rat(12));
    }

    #[test]
    fn sum_diff_round_trip() {
        let ms = cubic_three_zone();
        let back = from_sum_diff(&to_sum_diff(&ms));
        let e = &ms.equations;
        assert_eq!(back, vec![e[0].clone(), &e[1] + &e[2], &e[1] - &e[2], e[3].clone()]);
    }

    #[test]
    fn coincident_points_fail_distinctness() {
        let sd = to_sum_diff(&cubic_three_zone());
        for e in &sd.equations {
            let at = e.eval_partial(Var::V, &rat(0)).eval_partial(Var::Z, &rat(0));
            assert!(!at.contains(Var::V) && !at.contains(Var::Z));
        }
    }
}
