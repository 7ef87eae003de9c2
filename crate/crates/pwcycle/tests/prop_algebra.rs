use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use pwcycle::algebra::rat::ratio;
use pwcycle::algebra::realsol::complex_roots;
use pwcycle::algebra::resultant::resultant;
use pwcycle::algebra::unipoly::UniPoly;
use pwcycle::algebra::{Poly, Rat, Var};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn reduced(r: &Rat) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 2..=max_deg + 1).prop_filter("nonzero leading coefficient", |c| *c.last().unwrap() != 0)
}

fn uni(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn to_poly(p: &UniPoly) -> Poly {
    Poly::from_unipoly(p, Var::X)
}

fn f64_coeffs(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(pwcycle::algebra::rat::to_f64).collect()
}

/// Sign changes of p on a dense grid over (-b, b].
fn scan_roots(p: &UniPoly, b: f64) -> usize {
    let n = 40_000;
    let h = 2.0 * b / n as f64;
    let mut count = 0;
    let mut prev = p.eval_f64(-b);
    for i in 1..=n {
        let x = -b + i as f64 * h;
        let v = p.eval_f64(x);
        if v == 0.0 || prev * v < 0.0 {
            count += 1;
        }
        prev = if v == 0.0 { p.eval_f64(x + h / 2.0) } else { v };
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rat_field_laws(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        for r in [&a + &b, &a - &b, &a * &b, &a * &c - &b] {
            prop_assert!(reduced(&r));
        }
        if !b.is_zero() {
            prop_assert!(reduced(&(&a / &b)));
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        p in coeffs(3),
        q in coeffs(3),
        shared in prop::option::of(-3i64..=3),
    ) {
        let (mut p, mut q) = (uni(&p), uni(&q));
        if let Some(r) = shared {
            let f = UniPoly::from_ints(&[-r, 1]);
            p = p.mul(&f);
            q = q.mul(&f);
        }
        let res = resultant(&to_poly(&p), &to_poly(&q), Var::X).unwrap();
        prop_assert!(res.is_constant() || res.is_zero());
        let res = res.constant_value().unwrap_or_else(Rat::zero);
        let (rp, rq) = (complex_roots(&f64_coeffs(&p)), complex_roots(&f64_coeffs(&q)));
        // Simple roots are accurate to ~1e-12; common multiple roots can sit
        // ~1e-5 apart after perturbation, so the gap between the two cases is
        // judged on the exact gcd instead.
        let common = rp.iter().any(|a| rq.iter().any(|b| (a - b).norm() < 1e-8));
        let exact_common = p.gcd(&q).degree() > 0;
        prop_assert_eq!(res.is_zero(), exact_common);
        if common {
            prop_assert!(exact_common);
        }
        if exact_common && p.squarefree().degree() == p.degree() && q.squarefree().degree() == q.degree() {
            prop_assert!(common);
        }
    }

    #[test]
    fn sturm_count_matches_sign_scan(c in coeffs(5)) {
        let p = uni(&c).squarefree();
        prop_assume!(p.degree() > 0);
        let b = pwcycle::algebra::rat::to_f64(&p.cauchy_bound());
        let seq = p.sturm_sequence();
        let bound = p.cauchy_bound();
        let sturm = UniPoly::count_roots(&seq, &-bound.clone(), &bound);
        let roots = p.isolate_real_roots().unwrap();
        prop_assert_eq!(roots.len(), sturm);
        // Closely spaced roots can hide from a scan; the scan never sees more.
        let scanned = scan_roots(&p, b);
        prop_assert!(scanned <= sturm);
        let gap = roots.windows(2).map(|w| pwcycle::algebra::rat::to_f64(&(&w[1].lo - &w[0].hi))).fold(f64::INFINITY, f64::min);
        if gap > 1e-3 {
            prop_assert_eq!(scanned, sturm);
        }
    }

    #[test]
    fn refined_roots_are_small_and_isolated(c in coeffs(5)) {
        let p = uni(&c).squarefree();
        prop_assume!(p.degree() > 0);
        let tol = 1e-12;
        let dp = p.derivative();
        for iv in p.isolate_real_roots().unwrap() {
            let r = p.refine_root(&iv, tol);
            prop_assert!(r.lo >= iv.lo && r.hi <= iv.hi);
            prop_assert!(pwcycle::algebra::rat::to_f64(&r.width()) <= tol);
            let x = r.value();
            let lhs = p.eval_f64(x).abs();
            prop_assert!(lhs < tol * dp.eval_f64(x).abs().max(1.0) * 10.0, "p({x}) = {lhs}");
            if !r.is_exact() {
                prop_assert!(p.sign_at(&r.lo) * p.sign_at(&r.hi) <= 0);
            }
        }
    }

    #[test]
    fn squarefree_keeps_the_roots(r1 in -4i64..=4, r2 in -4i64..=4, e in 1u32..=3) {
        let f = UniPoly::from_ints(&[-r1, 1]);
        let g = UniPoly::from_ints(&[-r2, 1]);
        let mut p = UniPoly::from_ints(&[1, 0, 1]).mul(&g);
        for _ in 0..e {
            p = p.mul(&f);
        }
        let sq = p.squarefree();
        let want = if r1 == r2 { 3 } else { 4 };
        prop_assert_eq!(sq.degree(), want);
        let roots = p.real_roots(1e-12).unwrap();
        prop_assert_eq!(roots.len(), if r1 == r2 { 1 } else { 2 });
        for rt in roots {
            let v = rt.value();
            prop_assert!((v - r1 as f64).abs() < 1e-9 || (v - r2 as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn poly_eval_is_a_ring_map(p in coeffs(3), q in coeffs(3), x in rat_strategy()) {
        let (pu, qu) = (uni(&p), uni(&q));
        let (pp, qp) = (to_poly(&pu), to_poly(&qu));
        let at = |e: &Poly| e.eval_partial(Var::X, &x).constant_value().unwrap_or_else(Rat::zero);
        prop_assert_eq!(at(&(&pp * &qp)), pu.eval(&x) * qu.eval(&x));
        prop_assert_eq!(at(&(&pp - &qp)), pu.eval(&x) - qu.eval(&x));
        let (quo, rem) = pu.div_rem(&qu).unwrap();
        prop_assert_eq!(quo.mul(&qu).add(&rem), pu.clone());
        prop_assert!(rem.is_zero() || rem.degree() < qu.degree());
    }
}
