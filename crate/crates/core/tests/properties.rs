use std::sync::Arc;

use proptest::prelude::*;

use jok_core::algebra::{l_operator, make_algebra, Algebra, Element, Family};
use jok_core::correspondence::{catalog, correspondence_report, GroupFamily, StableRange, TensorProblem};
use jok_core::orbit::{
    classify_orbit, lambda_components, n_support_signature, orbit_representative, random_structure_word,
    reduce_signature, TSign, DEFAULT_WORD_LENGTH,
};
use jok_core::peirce::{peirce_components, quadratic_rep};
use jok_core::spectral::{determinant, spectral_decompose, Signature};

fn algebra_by_index(i: usize) -> Arc<Algebra> {
    let (f, p) = [(Family::SymR, 4), (Family::HermC, 3), (Family::HermH, 3), (Family::Spin, 10), (Family::Albert, 3)][i];
    make_algebra(f, p).unwrap()
}

fn element_in(alg: &Arc<Algebra>, raw: &[f64]) -> Element {
    Element::new(alg, raw.iter().cycle().take(alg.dim()).copied().collect()).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 27)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jordan_identity_and_commutativity(i in 0usize..5, a in coords(), b in coords()) {
        let alg = algebra_by_index(i);
        let (x, y) = (element_in(&alg, &a), element_in(&alg, &b));
        let x2 = x.square();
        let lhs = x.jordan_mul(&y).unwrap().jordan_mul(&x2).unwrap();
        let rhs = x.jordan_mul(&y.jordan_mul(&x2).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-10 * (1.0 + x.norm().powi(3) * y.norm()));
        prop_assert!(x.jordan_mul(&y).unwrap().distance(&y.jordan_mul(&x).unwrap()) <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn unit_is_neutral_and_trace_form_positive(i in 0usize..5, a in coords()) {
        let alg = algebra_by_index(i);
        let x = element_in(&alg, &a);
        prop_assert!(Element::unit(&alg).jordan_mul(&x).unwrap().distance(&x) <= 1e-13 * (1.0 + x.norm()));
        prop_assert!(x.inner(&x) >= 0.0);
    }

    #[test]
    fn spectral_reconstruction(i in 0usize..5, a in coords()) {
        let alg = algebra_by_index(i);
        let x = element_in(&alg, &a);
        let dec = spectral_decompose(&x, 1e-9).unwrap();
        prop_assert!(dec.reconstruct().unwrap().distance(&x) <= 1e-8 * (1.0 + x.norm()));
        let tr: f64 = dec.eigenvalues.iter().zip(&dec.multiplicities).map(|(l, m)| l * *m as f64).sum();
        prop_assert!((tr - x.trace()).abs() <= 1e-9 * (1.0 + x.norm()));
        let sum = dec.idempotents.iter().fold(Element::zero(&alg), |s, c| s.add(c));
        prop_assert!(sum.distance(&Element::unit(&alg)) <= 1e-8);
    }

    #[test]
    fn sampled_structure_maps_preserve_orbits(i in 0usize..5, seed in any::<u64>(), plus in 0usize..4, minus in 0usize..4) {
        let alg = algebra_by_index(i);
        prop_assume!(plus + minus <= alg.rank());
        let p = Signature::new(plus, minus);
        let g = random_structure_word(&alg, seed, DEFAULT_WORD_LENGTH).unwrap();
        prop_assert_eq!(classify_orbit(&g.apply(&orbit_representative(&alg, p).unwrap())), p);
    }

    #[test]
    fn quadratic_rep_scales_determinant(i in 0usize..5, a in coords(), b in coords()) {
        let alg = algebra_by_index(i);
        let (u, x) = (element_in(&alg, &a), element_in(&alg, &b));
        let n = alg.rank() as i32;
        let want = determinant(&u).powi(2) * determinant(&x);
        let got = determinant(&quadratic_rep(&u).apply(&x).unwrap());
        let scale = 1.0 + u.trace_norm().powi(2 * n) * x.trace_norm().powi(n);
        prop_assert!((got - want).abs() <= 1e-8 * scale);
    }

    #[test]
    fn peirce_components_are_eigenvectors(i in 0usize..5, a in coords(), k in 0usize..3) {
        let alg = algebra_by_index(i);
        let c = Element::basis(&alg, 0);
        let c = if alg.family() == Family::Spin || k == 0 { Element::unit(&alg).sub(&Element::unit(&alg)).add(&jok_core::orbit::standard_frame(&alg).idempotents[0]) } else { c.add(&Element::basis(&alg, k.min(alg.rank() - 1))) };
        prop_assume!(c.square().distance(&c) < 1e-12);
        let x = element_in(&alg, &a);
        let (x1, x12, x0) = peirce_components(&c, &x).unwrap();
        prop_assert!(x1.add(&x12).add(&x0).distance(&x) <= 1e-12 * (1.0 + x.norm()));
        let l = l_operator(&c);
        prop_assert!(l.apply(&x1).unwrap().distance(&x1) <= 1e-12 * (1.0 + x.norm()));
        prop_assert!(l.apply(&x12).unwrap().distance(&x12.scale(0.5)) <= 1e-12 * (1.0 + x.norm()));
        prop_assert!(l.apply(&x0).unwrap().norm() <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn reduce_inverts_support_signature(n in 1usize..8, plus in 0usize..8, minus in 0usize..8, t in prop::bool::ANY) {
        prop_assume!(plus + minus < n);
        let t = if t { TSign::Plus } else { TSign::Minus };
        let k = Signature::new(plus, minus);
        let r = n_support_signature(t, k, n).unwrap();
        prop_assert_eq!(r.rank(), k.rank() + 1);
        prop_assert_eq!(reduce_signature(r, t), Some(k));
    }

    #[test]
    fn lambda_components_drop_only_invalid(plus in 0usize..7, minus in 0usize..7) {
        let r = Signature::new(plus, minus);
        let pos = lambda_components(r, TSign::Plus);
        let neg = lambda_components(r, TSign::Minus);
        prop_assert_eq!(pos.len(), usize::from(plus >= 1) + usize::from(minus >= 1));
        prop_assert_eq!(neg.len(), usize::from(minus >= 1));
        for c in pos.iter().chain(&neg) {
            prop_assert_eq!(c.kappa_signature.rank() + 1, r.rank());
        }
    }

    #[test]
    fn uniqueness_iff_strict(n in 2usize..7, sigs in prop::collection::vec((0usize..6, 0usize..6), 1..4)) {
        let sigs: Vec<Signature> = sigs.into_iter().map(|(p, m)| Signature::new(p, m)).collect();
        prop_assume!(sigs.iter().all(|s| s.rank() >= 1 && s.rank() < n));
        let problem = TensorProblem::new(catalog(GroupFamily::I2, Some(n)).unwrap(), sigs.clone()).unwrap();
        let report = correspondence_report(&problem);
        let total: usize = sigs.iter().map(|s| s.rank()).sum();
        prop_assert_eq!(report.extension_unique, total < n);
        prop_assert_eq!(report.stable_range == StableRange::Violated, total > n);
    }
}
