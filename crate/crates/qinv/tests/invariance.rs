use std::sync::OnceLock;

use proptest::prelude::*;

use qinv::diagram::moves::{eta_move, BraidPresentation};
use qinv::diagram::{fixtures, split, FramedLinkDiagram};
use qinv::hennings::Mode;
use qinv::rt;
use qinv::suite::{basepoint_rotation, integral_is_ad_invariant, markov_invariance};
use qinv::AlgebraContext;

fn ctx(name: &str) -> &'static AlgebraContext {
    static CACHE: OnceLock<Vec<AlgebraContext>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["group:S3", "double:Z2", "double:Z3", "uq_sl2:3"]
            .iter()
            .map(|n| AlgebraContext::load(n).unwrap())
            .collect()
    });
    all.iter().find(|c| c.name == name).unwrap()
}

const ALGEBRAS: [&str; 4] = ["group:S3", "double:Z2", "double:Z3", "uq_sl2:3"];

/// Braid presentations on two or three strands with up to `max_len` letters.
fn presentation(max_len: usize) -> impl Strategy<Value = BraidPresentation> {
    (2usize..=3)
        .prop_flat_map(move |n| {
            let letter = (1..n as i64).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            (
                Just(n),
                prop::collection::vec(letter, 1..=max_len),
                prop::collection::vec(-2i64..=2, 3),
            )
        })
        .prop_map(|(n, word, fr)| {
            let ncomp = qinv::diagram::BraidWord::new(n, word.clone())
                .unwrap()
                .components()
                .len();
            BraidPresentation::new(n, word, fr[..ncomp].to_vec()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, .. ProptestConfig::default() })]

    #[test]
    fn markov_moves_preserve_the_raw_value(p in presentation(3), a in 0usize..4) {
        prop_assert!(markov_invariance(ctx(ALGEBRAS[a]), &p).unwrap());
    }

    #[test]
    fn every_basepoint_gives_the_same_value(p in presentation(3), a in 0usize..4) {
        prop_assert!(basepoint_rotation(ctx(ALGEBRAS[a]), &p.diagram()).unwrap());
    }

    #[test]
    fn integrals_are_ad_invariant(p in presentation(3), a in 0usize..4) {
        prop_assert!(integral_is_ad_invariant(ctx(ALGEBRAS[a]), &p.diagram()).unwrap());
    }

    #[test]
    fn state_sum_equals_hennings_with_q(p in presentation(3), a in 0usize..4) {
        let c = ctx(ALGEBRAS[a]);
        let l = p.diagram();
        prop_assert_eq!(rt::tau_rt(c, &l, Mode::Raw).unwrap(), c.tau(&l, Mode::Raw, true).unwrap());
    }

    #[test]
    fn matrix_contraction_matches_the_integral(p in presentation(3), a in 0usize..4, seed in 0usize..1000) {
        let c = ctx(ALGEBRAS[a]);
        let l = p.diagram();
        let reps = rt::crosscheck_representations(c);
        let colors: Vec<_> = (0..l.component_count()).map(|i| &reps[(seed / (i + 1)) % reps.len()]).collect();
        prop_assert!(rt::fiber_crosscheck(c, &split(&l), &colors).unwrap());
    }

    #[test]
    fn normalized_value_is_multiplicative(p in presentation(2), q in presentation(2), a in 0usize..4) {
        let c = ctx(ALGEBRAS[a]);
        let (l1, l2) = (p.diagram(), q.diagram());
        let both = c.tau(&l1.disjoint_union(&l2), Mode::Normalized, false).unwrap();
        let product = c.tau(&l1, Mode::Normalized, false).unwrap() * c.tau(&l2, Mode::Normalized, false).unwrap();
        prop_assert_eq!(both, product);
    }

    #[test]
    fn eta_move_preserves_the_normalized_value(p in presentation(2), n in -2i64..=2, a in 0usize..4) {
        let c = ctx(ALGEBRAS[a]);
        let l = p.diagram();
        prop_assert_eq!(c.tau(&l, Mode::Normalized, false).unwrap(), c.tau(&eta_move(&l, n), Mode::Normalized, false).unwrap());
    }
}

#[test]
fn handle_slides_preserve_the_normalized_value() {
    for name in ALGEBRAS {
        let c = ctx(name);
        for (label, a, b) in qinv::diagram::moves::handle_slide_pairs(-2..=2) {
            assert_eq!(
                c.tau(&a, Mode::Normalized, false).unwrap(),
                c.tau(&b, Mode::Normalized, false).unwrap(),
                "{name} {label}"
            );
        }
    }
}

#[test]
fn jordan_holder_additivity_on_the_hopf_link() {
    for name in ALGEBRAS {
        let c = ctx(name);
        let l = fixtures::hopf(0, 0);
        let m = c.catalog.len();
        for a in 0..m {
            for b in 0..m {
                for other in 0..m {
                    assert!(
                        rt::jordan_holder_additivity(c, &l, &[0, other], 0, a, b).unwrap(),
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn coupon_cancellation_gives_the_three_sphere_value() {
    for name in ALGEBRAS {
        let c = ctx(name);
        let v = c
            .tau(&fixtures::coupon_cancel(), Mode::Normalized, false)
            .unwrap();
        assert_eq!(
            v,
            c.tau(&fixtures::empty(), Mode::Normalized, false).unwrap(),
            "{name}"
        );
        assert!(v.is_one(), "{name}");
    }
}

#[test]
fn blackboard_curls_are_the_ribbon_element() {
    for name in ALGEBRAS {
        let c = ctx(name);
        assert_eq!(
            c.integral_element(&fixtures::curl(true), false)
                .unwrap()
                .to_elem(),
            c.rd.v
        );
        assert_eq!(
            c.integral_element(&fixtures::curl(false), false)
                .unwrap()
                .to_elem(),
            c.rd.v_inv
        );
    }
}

#[test]
fn twisted_circle_matches_the_framed_unknot() {
    for name in ALGEBRAS {
        let c = ctx(name);
        for f in -2..=2 {
            let twisted: FramedLinkDiagram = fixtures::twisted_circle(f);
            assert_eq!(
                c.raw_value(&twisted, false).unwrap(),
                c.raw_value(&fixtures::unknot(f), false).unwrap(),
                "{name} {f}"
            );
        }
    }
}
