mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{covered, three_zone, FAMILIES};
use pwcycle::algebra::Poly;
use pwcycle::algebra::Var;
use pwcycle::matcher::{self, from_sum_diff, to_sum_diff, Provenance, Topology};

fn swap(p: &Poly, a: Var, b: Var) -> Poly {
    let tmp = Var::param(5);
    p.substitute(a, &Poly::var(tmp)).substitute(b, &Poly::var(a)).substitute(tmp, &Poly::var(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn level_equalities_are_antisymmetric(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = covered(&mut rng);
        for (i, z) in ps.zones.iter().enumerate() {
            let h = z.hamiltonian();
            let sides: Vec<_> = [i.checked_sub(1), (i < ps.boundaries.len()).then_some(i)].into_iter().flatten().collect();
            for b in sides {
                let c = &ps.boundaries[b];
                let at = |p: &Poly, v: Var| p.eval_partial(Var::X, c).substitute(Var::Y, &Poly::var(v));
                let e = &(&at(&h.num, Var::Y1) * &at(&h.den, Var::Y2)) - &(&at(&h.num, Var::Y2) * &at(&h.den, Var::Y1));
                prop_assert_eq!(swap(&e, Var::Y1, Var::Y2), -e.clone());
                let d = &Poly::var(Var::Y1) - &Poly::var(Var::Y2);
                let q = e.div_exact(&d).unwrap();
                prop_assert_eq!(&q * &d, e);
            }
        }
    }

    #[test]
    fn equations_match_unknowns_and_provenance(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = covered(&mut rng);
        let ms = matcher::build(&ps).unwrap();
        prop_assert_eq!(ms.equations.len(), ms.unknowns.len());
        prop_assert_eq!(ms.provenance.len(), ms.equations.len());
        let want = if ps.zones.len() == 2 { Topology::TwoZone } else { Topology::ThreeZone };
        prop_assert_eq!(ms.topology, want);
        for (e, p) in ms.equations.iter().zip(&ms.provenance) {
            if ms.degeneracy.is_none() {
                prop_assert!(!e.is_zero());
            }
            match *p {
                Provenance::Level { zone, boundary } => {
                    prop_assert!(zone < ps.zones.len() && boundary < ps.boundaries.len());
                    prop_assert!(boundary == zone || boundary + 1 == zone);
                }
                Provenance::Transport { zone, from, to } => {
                    prop_assert!(from < to && to < ps.boundaries.len());
                    prop_assert!(zone == to && from + 1 == to);
                }
            }
            let vars = e.vars();
            prop_assert!(vars.iter().all(|v| ms.unknowns.contains(v)));
        }
        // every zone contributes
        for z in 0..ps.zones.len() {
            let touches = ms.provenance.iter().any(|p| match *p {
                Provenance::Level { zone, .. } | Provenance::Transport { zone, .. } => zone == z,
            });
            prop_assert!(touches, "zone {} unused", z);
        }
    }

    #[test]
    fn sum_difference_round_trip(seed in any::<u64>(), f in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ps = three_zone(&mut rng, FAMILIES[f]);
        let ms = matcher::build(&ps).unwrap();
        let sd = to_sum_diff(&ms);
        for e in &sd.equations {
            prop_assert!(e.vars().iter().all(|v| sd.unknowns.contains(v)));
        }
        let back = from_sum_diff(&sd);
        let e = &ms.equations;
        let want = [e[0].clone(), &e[1] + &e[2], &e[1] - &e[2], e[3].clone()];
        prop_assert_eq!(back.as_slice(), want.as_slice());
    }
}
