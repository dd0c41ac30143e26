use logsyn_core::syntomic::closed_form;
use logsyn_core::toric::{
    axes_table, cone_predicates, fan_validate, is_dividing_cover, perfection_check, same_support,
    verify_axes_proof, verify_axes_proof_with, AxesCones, Vec2, E1, E2,
};
use logsyn_core::{Cone2, Fan2, FinPModule, ResidueRing, Summand};
use proptest::prelude::*;

fn cone(g: &[Vec2]) -> Cone2 {
    Cone2::new(g).unwrap()
}

fn cross(u: Vec2, v: Vec2) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// `c x = a u + b v` with nonnegative integers, searched directly.
fn spans(u: Vec2, v: Vec2, x: Vec2) -> bool {
    let det = cross(u, v).abs();
    (1..=det).any(|c| {
        (0..=40).any(|a| {
            (0..=40).any(|b| c * x[0] == a * u[0] + b * v[0] && c * x[1] == a * u[1] + b * v[1])
        })
    })
}

fn box_points() -> impl Iterator<Item = Vec2> {
    (-5..=5).flat_map(|a| (-5..=5).map(move |b| [a, b]))
}

fn small_vector() -> impl Strategy<Value = Vec2> {
    ([-4i64..=4, -4i64..=4]).prop_filter("nonzero", |v| *v != [0, 0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn containment_matches_search(u in small_vector(), v in small_vector()) {
        prop_assume!(cross(u, v) != 0);
        let c = cone(&[u, v]);
        for x in box_points() {
            prop_assert_eq!(c.contains(x), spans(u, v, x), "{} {:?}", c, x);
        }
    }

    #[test]
    fn intersection_is_pointwise(u in small_vector(), v in small_vector(), s in small_vector(), t in small_vector()) {
        prop_assume!(cross(u, v) != 0 && cross(s, t) != 0);
        let (a, b) = (cone(&[u, v]), cone(&[s, t]));
        let meet = a.intersection(&b);
        for x in box_points() {
            prop_assert_eq!(meet.contains(x), a.contains(x) && b.contains(x));
        }
        prop_assert!(a.contains_cone(&meet) && b.contains_cone(&meet));
    }

    #[test]
    fn smoothness_is_unit_determinant(u in small_vector(), v in small_vector()) {
        prop_assume!(cross(u, v) != 0);
        let c = cone(&[u, v]);
        let p = cone_predicates(&c);
        prop_assert_eq!(p.is_smooth, p.determinant == 1);
        prop_assert_eq!(p.faces.len(), 4);
    }
}

#[test]
fn documented_cones() {
    assert!(cone(&[E1, E2]).is_smooth());
    let c = cone(&[[1, 0], [1, 2]]);
    assert!(!c.is_smooth());
    assert_eq!(cone_predicates(&c).determinant, 2);
    assert!(cone(&[E2, [1, -1]]).contains(E1));
    assert_eq!(cone_predicates(&cone(&[E2, [1, -1]])).determinant, 1);
}

#[test]
fn documented_fans() {
    let axes = AxesCones::with_ray([-1, 1]).unwrap();
    let (sigma, tau, tau_prime) = (axes.sigma, axes.tau, axes.tau_prime);
    assert!(fan_validate(&Fan2::unmarked(vec![sigma.clone(), tau.clone(), tau_prime.clone()])));
    assert_eq!(sigma.intersection(&tau), cone(&[E1]));
    assert_eq!(sigma.intersection(&tau_prime), cone(&[E2]));
    assert_eq!(tau.intersection(&tau_prime), Cone2::zero());
    assert!(!fan_validate(&Fan2::unmarked(vec![sigma.clone(), cone(&[E2, [2, -1]])])));
    assert!(fan_validate(&Fan2::unmarked(vec![sigma.clone()])));

    let union = cone(&[E1, [-1, 1]]);
    let star = Fan2::unmarked(vec![sigma.clone(), tau_prime.clone()]);
    assert!(is_dividing_cover(&star, &Fan2::unmarked(vec![union.clone()])));
    let fine = Fan2::unmarked(vec![sigma.clone(), tau.clone(), tau_prime.clone()]);
    let coarse = Fan2::unmarked(vec![union, tau.clone()]);
    assert!(is_dividing_cover(&fine, &coarse));
    assert!(!is_dividing_cover(
        &Fan2::unmarked(vec![sigma.clone()]),
        &Fan2::unmarked(vec![sigma, tau])
    ));
}

#[test]
fn dividing_cover_is_reflexive_and_transitive() {
    let axes = AxesCones::with_ray([-1, 1]).unwrap();
    let (sigma, tau, tau_prime) = (axes.sigma, axes.tau, axes.tau_prime);
    let fans = [
        Fan2::unmarked(vec![sigma.clone(), tau.clone(), tau_prime.clone()]),
        Fan2::unmarked(vec![cone(&[E1, [-1, 1]]), tau.clone()]),
        Fan2::unmarked(vec![sigma.clone(), tau_prime.clone()]),
        Fan2::unmarked(vec![cone(&[E1, [-1, 1]])]),
        Fan2::unmarked(vec![sigma.clone(), tau.clone()]),
        Fan2::unmarked(vec![cone(&[E2, [1, -1]])]),
    ];
    for f in &fans {
        assert!(fan_validate(f));
        assert!(is_dividing_cover(f, f));
        for g in &fans {
            assert_eq!(same_support(f, g), same_support(g, f));
            for h in &fans {
                if is_dividing_cover(f, g) && is_dividing_cover(g, h) {
                    assert!(is_dividing_cover(f, h));
                }
            }
        }
    }
}

#[test]
fn axes_checklist() {
    let report = verify_axes_proof().unwrap();
    assert_eq!(report.items.len(), 8);
    assert!(report.pass, "{:?}", report.items);
    let perturbed = verify_axes_proof_with([1, 1]).unwrap();
    assert!(!perturbed.pass);
    assert!(!perturbed.items[6].pass);
}

/// `Syn(i)(k,N) + Syn(i-1)(k,N)[-2]` expanded from the `e = 1` closed forms.
fn by_hand(p: u64, i: u64, n: u32) -> Vec<FinPModule> {
    let ring = ResidueRing::new(p, n).unwrap();
    let mut out = vec![FinPModule::zero(ring); 5];
    let mut add = |shift: u32, idx: u64| {
        for (d, s) in closed_form(1, idx).terms {
            out[(d + shift) as usize] = out[(d + shift) as usize].direct_sum(&s.realize(ring));
        }
    };
    add(0, i);
    if i >= 1 {
        add(2, i - 1);
    }
    out
}

#[test]
fn axes_table_matches_expansion() {
    for p in [2, 3, 5] {
        for i in 0..=4 {
            let t = axes_table(p, i, 6).unwrap();
            assert!(t.pass);
            assert_eq!(t.computed, by_hand(p, i, 6));
        }
    }
    let ring = ResidueRing::new(3, 5).unwrap();
    let w = FinPModule::with_free(ring, 1, []);
    let t = axes_table(3, 0, 5).unwrap();
    assert_eq!(t.computed[..2], [w.clone(), w.clone()]);
    let t = axes_table(3, 2, 5).unwrap();
    assert_eq!(t.computed[1].exponents(), &[1]);
    assert_eq!((t.computed[3].clone(), t.computed[4].clone()), (w.clone(), w));
    assert!(t.terms.iter().all(|(_, s)| *s != Summand::BigWitt(0)));
}

#[test]
fn perfection_examples() {
    for (p, k, b) in [(2, 3, 10), (3, 2, 10), (5, 1, 6)] {
        let r = perfection_check(p, k, b).unwrap();
        assert!(r.injective && r.surjective && r.additive, "{r:?}");
        assert_eq!(r.source_size, r.target_size);
    }
    let r = perfection_check(2, 3, 4).unwrap();
    // (1/p, 0) goes to (1/p, -1/p mod Z)
    assert_eq!(r.sample_image.0.numerators, vec![1]);
    assert_eq!(r.sample_image.0.k, 1);
    assert_eq!(r.sample_image.1.numerators, vec![1]);
    assert_eq!(r.sample_image.1.k, 1);
    assert!(perfection_check(2, 7, 10).is_err());
    assert!(perfection_check(4, 2, 10).is_err());
}
