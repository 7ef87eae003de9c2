#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::Signed;
use rand::rngs::StdRng;
use rand::Rng;

use pwcycle::algebra::rat::{rat, ratio};
use pwcycle::algebra::Rat;
use pwcycle::systems::{DoubleCenter, GeneralCenterG, GlobalCenter, LinearSaddle, PiecewiseSystem, Zone, ZoneKind};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> PiecewiseSystem {
    pwcycle::cli::load(&fixture_dir().join(name)).unwrap().1
}

pub const FIXTURES: [&str; 7] = [
    "center_saddle_center.toml",
    "center_center_saddle.toml",
    "saddle_center_saddle.toml",
    "saddle_saddle_center.toml",
    "cubic_center_saddle.toml",
    "global_center_saddle.toml",
    "cubic_center_two_saddles.toml",
];

/// Small rational p/q with |p| <= 6 and 1 <= q <= 4.
pub fn small(rng: &mut StdRng) -> Rat {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero(rng: &mut StdRng) -> Rat {
    loop {
        let r = small(rng);
        if r != rat(0) {
            return r;
        }
    }
}

pub fn positive(rng: &mut StdRng) -> Rat {
    ratio(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// A linear saddle in the normal form: alpha in {0, 1}, with delta < beta^2
/// when alpha = 1 and gamma = 0, beta != 0 when alpha = 0.
pub fn saddle(rng: &mut StdRng) -> LinearSaddle {
    if rng.gen_bool(0.8) {
        let beta = small(rng);
        let mut delta = nonzero(rng);
        if delta >= &beta * &beta {
            delta = &beta * &beta - delta.abs() - rat(1);
        }
        LinearSaddle::new(rat(1), beta, delta, small(rng), small(rng)).unwrap()
    } else {
        LinearSaddle::new(rat(0), nonzero(rng), nonzero(rng), small(rng), rat(0)).unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    DoubleCenter,
    GlobalCenter,
    GeneralCenter,
}

pub const FAMILIES: [Family; 3] = [Family::DoubleCenter, Family::GlobalCenter, Family::GeneralCenter];

pub fn center(rng: &mut StdRng, f: Family) -> ZoneKind {
    match f {
        Family::DoubleCenter => ZoneKind::DoubleCenter(DoubleCenter::new(small(rng), nonzero(rng), small(rng)).unwrap()),
        Family::GlobalCenter => ZoneKind::GlobalCenter(GlobalCenter::new(positive(rng)).unwrap()),
        Family::GeneralCenter => {
            let a = small(rng);
            let b = &a * &a + positive(rng);
            ZoneKind::GeneralCenter(GeneralCenterG { a, b, p: small(rng), q: nonzero(rng), r: small(rng), s: small(rng) })
        }
    }
}

/// Center on the left of x = 0, saddle on the right.
pub fn two_zone(rng: &mut StdRng, f: Family) -> PiecewiseSystem {
    let left = Zone::new(center(rng, f));
    let right = Zone::new(ZoneKind::LinearSaddle(saddle(rng)));
    PiecewiseSystem::new(vec![left, right], vec![rat(0)]).unwrap()
}

/// Center at x = -1 on the left of x = -1, then two saddles split by x = 1.
pub fn three_zone(rng: &mut StdRng, f: Family) -> PiecewiseSystem {
    let left = Zone::new(center(rng, f)).with_offset(rat(1));
    let mid = Zone::new(ZoneKind::LinearSaddle(saddle(rng)));
    let right = Zone::new(ZoneKind::LinearSaddle(saddle(rng)));
    PiecewiseSystem::new(vec![left, mid, right], vec![rat(-1), rat(1)]).unwrap()
}

pub fn covered(rng: &mut StdRng) -> PiecewiseSystem {
    let f = FAMILIES[rng.gen_range(0..3)];
    if rng.gen_bool(0.5) {
        two_zone(rng, f)
    } else {
        three_zone(rng, f)
    }
}

/// Continuous double-center/saddle pair.  Matching the fields on x = 0 forces
/// n = 0, beta = mu = gamma = 0 and time_scale * delta = 1; a negative time
/// scale makes the right piece a genuine saddle.
pub fn continuous_double_center(rng: &mut StdRng) -> PiecewiseSystem {
    let left = Zone::new(ZoneKind::DoubleCenter(DoubleCenter { l: small(rng), n: rat(0), p: small(rng) }));
    let t = nonzero(rng);
    let s = LinearSaddle { alpha: rat(1), beta: rat(0), delta: rat(1) / &t, mu: rat(0), gamma: rat(0) };
    let right = Zone::new(ZoneKind::LinearSaddle(s)).with_time_scale(t);
    PiecewiseSystem::new(vec![left, right], vec![rat(0)]).unwrap()
}

/// Continuous cubic-center/saddle pair: q = s = 0, time_scale * delta = b,
/// time_scale * beta = a, mu = gamma = 0.
pub fn continuous_general_center(rng: &mut StdRng) -> PiecewiseSystem {
    let a = small(rng);
    let b = &a * &a + positive(rng);
    let g = GeneralCenterG { a: a.clone(), b: b.clone(), p: small(rng), q: rat(0), r: small(rng), s: rat(0) };
    let t = nonzero(rng);
    let s = LinearSaddle { alpha: rat(1), beta: &a / &t, delta: &b / &t, mu: rat(0), gamma: rat(0) };
    let left = Zone::new(ZoneKind::GeneralCenter(g));
    let right = Zone::new(ZoneKind::LinearSaddle(s)).with_time_scale(t);
    PiecewiseSystem::new(vec![left, right], vec![rat(0)]).unwrap()
}
