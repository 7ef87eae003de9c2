mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{covered, fixture, three_zone, two_zone, Family, FAMILIES, FIXTURES};
use pwcycle::algebra::Var;
use pwcycle::solver::{self, SolveOptions};

fn screened_tuples(r: &solver::SolveReport) -> Vec<Vec<f64>> {
    let mut v: Vec<Vec<f64>> = r
        .candidates
        .iter()
        .filter(|c| c.screened())
        .map(|c| c.ordinates.concat())
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn same_sets(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.iter().zip(y).all(|(p, q)| (p - q).abs() < 1e-7 * (1.0 + p.abs())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn verified_cycles_respect_the_bound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = covered(&mut rng);
        let r = solver::solve(&ps, &SolveOptions::default()).unwrap();
        prop_assert!(r.bound_respected);
        if let Some(m) = r.bound.max_cycles() {
            prop_assert!(r.verified <= m, "{} > {}", r.verified, m);
        }
        for c in &r.candidates {
            if c.screened() {
                prop_assert!(c.residual < 1e-9, "residual {}", c.residual);
            }
        }
    }

    #[test]
    fn two_zone_order_does_not_matter(seed in any::<u64>(), f in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = two_zone(&mut rng, FAMILIES[f]);
        let base = SolveOptions { verify: false, ..Default::default() };
        let a = solver::solve(&ps, &base).unwrap();
        prop_assume!(!a.positive_dimensional);
        let b = solver::solve(&ps, &SolveOptions { order: Some(vec![Var::Y1]), ..base }).unwrap();
        prop_assert!(same_sets(&screened_tuples(&a), &screened_tuples(&b)), "{:?} vs {:?}", screened_tuples(&a), screened_tuples(&b));
    }

    #[test]
    fn three_zone_order_does_not_matter(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = three_zone(&mut rng, Family::DoubleCenter);
        let base = SolveOptions { verify: false, ..Default::default() };
        let a = solver::solve(&ps, &base).unwrap();
        prop_assume!(!a.positive_dimensional && a.degeneracy.is_none());
        let b = solver::solve(&ps, &SolveOptions { order: Some(vec![Var::Y4, Var::Y3, Var::Y2]), ..base }).unwrap();
        prop_assume!(!b.positive_dimensional);
        prop_assert!(same_sets(&screened_tuples(&a), &screened_tuples(&b)), "{:?} vs {:?}", screened_tuples(&a), screened_tuples(&b));
    }

    #[test]
    fn candidates_sit_in_their_intervals(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = covered(&mut rng);
        let r = solver::solve(&ps, &SolveOptions { verify: false, ..Default::default() }).unwrap();
        for c in &r.candidates {
            let lo: f64 = pwcycle::algebra::parse_rat(&c.interval.0).map(|q| pwcycle::algebra::rat::to_f64(&q)).unwrap();
            let hi: f64 = pwcycle::algebra::parse_rat(&c.interval.1).map(|q| pwcycle::algebra::rat::to_f64(&q)).unwrap();
            let y1 = c.ordinates[0][0].min(c.ordinates[0][1]);
            let y2 = c.ordinates[0][0].max(c.ordinates[0][1]);
            let inside = |y: f64| y >= lo - 1e-12 && y <= hi + 1e-12;
            prop_assert!(inside(y1) || inside(y2), "{y1} {y2} outside [{lo}, {hi}]");
            prop_assert!(c.multiplicity >= 1);
            if c.ordering_ok {
                for ys in &c.ordinates {
                    prop_assert!(ys[0] < ys[1]);
                }
            }
        }
    }
}

#[test]
fn fixtures_are_order_independent() {
    for name in FIXTURES {
        let ps = fixture(name);
        let base = SolveOptions { verify: false, ..Default::default() };
        let a = solver::solve(&ps, &base).unwrap();
        let alt = if ps.zones.len() == 2 { vec![Var::Y1] } else { vec![Var::Y4, Var::Y3, Var::Y2] };
        let b = solver::solve(&ps, &SolveOptions { order: Some(alt), ..base }).unwrap();
        assert!(same_sets(&screened_tuples(&a), &screened_tuples(&b)), "{name}");
    }
}
