//! Algebraic axioms checked on randomized elements across graphs and rings.
//!
//! proptest drives the seeds; the element generators in `lpa::sampling` turn
//! each seed into concrete elements, so failures reproduce exactly.

use proptest::prelude::*;

use lpa::graph::Graph;
use lpa::leavitt::LeavittElement;
use lpa::sampling;
use lpa::scalars::{Ring, Scalar};
use lpa::steinberg::SteinbergElement;

fn graph(idx: usize) -> Graph {
    match idx % 4 {
        0 => Graph::rose(1),
        1 => Graph::rose(2),
        2 => Graph::toeplitz(),
        _ => Graph::line(3),
    }
}

fn ring(idx: usize) -> Ring {
    match idx % 4 {
        0 => Ring::Rationals,
        1 => Ring::Integers,
        2 => Ring::integers_mod(4),
        _ => Ring::integers_mod(5),
    }
}

fn three_leavitt(
    g: &Graph,
    r: Ring,
    seed: u64,
) -> (LeavittElement, LeavittElement, LeavittElement) {
    let mut rng = sampling::rng(seed);
    (
        sampling::random_leavitt_element(g, r, &mut rng, 3, 2),
        sampling::random_leavitt_element(g, r, &mut rng, 3, 2),
        sampling::random_leavitt_element(g, r, &mut rng, 3, 2),
    )
}

fn three_steinberg(
    g: &Graph,
    r: Ring,
    seed: u64,
) -> (SteinbergElement, SteinbergElement, SteinbergElement) {
    let mut rng = sampling::rng(seed);
    (
        sampling::random_steinberg_element(g, r, &mut rng, 3, 2),
        sampling::random_steinberg_element(g, r, &mut rng, 3, 2),
        sampling::random_steinberg_element(g, r, &mut rng, 3, 2),
    )
}

proptest! {
    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (x, y, z) = three_leavitt(&g, ring(ri), seed);
        prop_assert!(x.mul(&g, &y).mul(&g, &z).eq_element(&g, &x.mul(&g, &y.mul(&g, &z))));
    }

    #[test]
    fn multiplication_distributes_over_addition(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (x, y, z) = three_leavitt(&g, ring(ri), seed);
        let lhs = x.mul(&g, &y.add(&z));
        prop_assert!(lhs.eq_element(&g, &x.mul(&g, &y).add(&x.mul(&g, &z))));
        let lhs = x.add(&y).mul(&g, &z);
        prop_assert!(lhs.eq_element(&g, &x.mul(&g, &z).add(&y.mul(&g, &z))));
    }

    #[test]
    fn involution_is_an_anti_homomorphism(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (x, y, _) = three_leavitt(&g, ring(ri), seed);
        let lhs = x.mul(&g, &y).involution();
        prop_assert!(lhs.eq_element(&g, &y.involution().mul(&g, &x.involution())));
        prop_assert!(x.involution().involution().eq_element(&g, &x));
        prop_assert!(x.add(&y).involution().eq_element(&g, &x.involution().add(&y.involution())));
    }

    #[test]
    fn degree_components_recover_the_element(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let r = ring(ri);
        let (x, _, _) = three_leavitt(&g, r, seed);
        let mut sum = LeavittElement::zero(r);
        for n in x.degrees() {
            let part = x.degree_component(n);
            for d in part.degrees() {
                prop_assert_eq!(d, n, "component of degree {} is homogeneous", n);
            }
            sum = sum.add(&part);
        }
        prop_assert!(sum.eq_element(&g, &x));
    }

    #[test]
    fn products_respect_the_grading(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (x, y, _) = three_leavitt(&g, ring(ri), seed);
        for m in x.degrees() {
            for n in y.degrees() {
                let prod = x.degree_component(m).mul(&g, &y.degree_component(n));
                for d in prod.degrees() {
                    prop_assert_eq!(d, m + n);
                }
            }
        }
    }

    #[test]
    fn scaling_commutes_with_multiplication(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let r = ring(ri);
        let (x, y, _) = three_leavitt(&g, r, seed);
        let mut rng = sampling::rng(seed ^ 0x5ca1e);
        let s = sampling::random_scalar(r, &mut rng);
        let lhs = x.scale(&s).mul(&g, &y);
        prop_assert!(lhs.eq_element(&g, &x.mul(&g, &y).scale(&s)));
        prop_assert!(lhs.eq_element(&g, &x.mul(&g, &y.scale(&s))));
    }

    #[test]
    fn adding_the_negation_gives_zero(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let r = ring(ri);
        let (x, _, _) = three_leavitt(&g, r, seed);
        let minus_one = Scalar::from_i64(r, -1);
        prop_assert!(x.add(&x.scale(&minus_one)).is_zero(&g));
    }

    #[test]
    fn convolution_is_associative(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (f, h, k) = three_steinberg(&g, ring(ri), seed);
        let lhs = f.convolve(&g, &h).convolve(&g, &k);
        prop_assert!(lhs.eq_element(&g, &f.convolve(&g, &h.convolve(&g, &k))));
    }

    #[test]
    fn convolution_distributes_over_addition(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (f, h, k) = three_steinberg(&g, ring(ri), seed);
        let lhs = f.convolve(&g, &h.add(&g, &k));
        prop_assert!(lhs.eq_element(&g, &f.convolve(&g, &h).add(&g, &f.convolve(&g, &k))));
    }

    #[test]
    fn steinberg_involution_is_an_anti_homomorphism(seed in any::<u64>(), gi in 0usize..4, ri in 0usize..4) {
        let g = graph(gi);
        let (f, h, _) = three_steinberg(&g, ring(ri), seed);
        let lhs = f.convolve(&g, &h).involution();
        prop_assert!(lhs.eq_element(&g, &h.involution().convolve(&g, &f.involution())));
        prop_assert!(f.involution().involution().eq_element(&g, &f));
    }

    #[test]
    fn atom_inverse_reverses_products(seed in any::<u64>(), gi in 0usize..4) {
        let g = graph(gi);
        let mut rng = sampling::rng(seed);
        let a = sampling::random_atom(&g, &mut rng, 2);
        let b = sampling::random_atom(&g, &mut rng, 2);
        if let Some(ab) = a.mul(&g, &b) {
            prop_assert_eq!(Some(ab.inverse()), b.inverse().mul(&g, &a.inverse()));
        }
    }

    #[test]
    fn atom_intersection_is_idempotent_and_commutative(seed in any::<u64>(), gi in 0usize..4) {
        let g = graph(gi);
        let mut rng = sampling::rng(seed);
        let a = sampling::random_atom(&g, &mut rng, 2);
        let b = sampling::random_atom(&g, &mut rng, 2);
        prop_assert_eq!(a.intersect(&g, &a), Some(a.clone()));
        prop_assert_eq!(a.intersect(&g, &b), b.intersect(&g, &a));
    }
}
