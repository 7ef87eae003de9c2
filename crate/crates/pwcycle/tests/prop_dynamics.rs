mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{covered, fixture, FIXTURES};
use pwcycle::dynamics::{integrate_arc, IntegratorConfig, Terminal};
use pwcycle::systems::PiecewiseSystem;

fn reversed(ps: &PiecewiseSystem) -> PiecewiseSystem {
    let mut r = ps.clone();
    for z in &mut r.zones {
        z.time_scale = -z.time_scale.clone();
    }
    r
}

fn cfg() -> IntegratorConfig {
    IntegratorConfig { max_time: 5.0, window: 50.0, record: true, ..Default::default() }
}

/// A point strictly inside zone `i`, away from the boundaries.
fn interior(ps: &PiecewiseSystem, i: usize, rng: &mut StdRng) -> (f64, f64) {
    let (lo, hi) = ps.strip(i);
    let x = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => lo + (hi - lo) * rng.gen_range(0.2..0.8),
        (false, true) => hi - rng.gen_range(0.2..2.0),
        (true, false) => lo + rng.gen_range(0.2..2.0),
        _ => rng.gen_range(-2.0..2.0),
    };
    (x, rng.gen_range(-2.0..2.0))
}

fn check_arc(ps: &PiecewiseSystem, i: usize, start: (f64, f64)) -> Result<(), TestCaseError> {
    let c = cfg();
    let Ok(t) = integrate_arc(ps, i, start, &c) else { return Ok(()) };
    if t.terminal == Terminal::LeftWindow || t.terminal == Terminal::HitEquilibrium {
        return Ok(());
    }
    prop_assert!(t.drift < 1e-8, "drift {}", t.drift);
    for w in t.samples.windows(2) {
        prop_assert!(w[0].0 <= w[1].0);
    }
    if let Some(cr) = t.crossing {
        let bx = ps.boundary_f64(cr.boundary);
        prop_assert!((t.end.0 - bx).abs() < c.event_tol, "event off by {}", (t.end.0 - bx).abs());
        prop_assert!((t.end.1 - cr.y).abs() < 1e-12);
        // Run back from the end: the reversed arc in the same zone returns
        // to the start after the same time.
        let rev = reversed(ps);
        let bcfg = IntegratorConfig { max_time: t.time, ..cfg() };
        if let Ok(b) = integrate_arc(&rev, i, t.end, &bcfg) {
            if b.terminal == Terminal::TimeLimit {
                let e = (b.end.0 - start.0).hypot(b.end.1 - start.1);
                prop_assert!(e < 1e-7, "time reversal error {e}");
            }
        }
    } else if t.terminal == Terminal::TimeLimit {
        let rev = reversed(ps);
        if let Ok(b) = integrate_arc(&rev, i, t.end, &IntegratorConfig { max_time: t.time, ..cfg() }) {
            if b.terminal == Terminal::TimeLimit {
                let e = (b.end.0 - start.0).hypot(b.end.1 - start.1);
                prop_assert!(e < 1e-7, "time reversal error {e}");
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn arcs_conserve_the_integral_and_reverse(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = covered(&mut rng);
        let i = rng.gen_range(0..ps.zones.len());
        let start = interior(&ps, i, &mut rng);
        check_arc(&ps, i, start)?;
    }
}

#[test]
fn fixture_arcs_conserve_the_integral_and_reverse() {
    let mut rng = StdRng::seed_from_u64(7);
    for name in FIXTURES {
        let ps = fixture(name);
        for i in 0..ps.zones.len() {
            for _ in 0..5 {
                let start = interior(&ps, i, &mut rng);
                check_arc(&ps, i, start).unwrap_or_else(|e| panic!("{name} zone {i}: {e}"));
            }
        }
    }
}
