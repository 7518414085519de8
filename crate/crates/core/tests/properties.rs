//! Property tests for the scalar field and the operator algebra.

use apklie_core::exactlin::{
    conj_mat, dagger, h_adjoint, CMat, HermitianGram, LinearOperator, SemilinearOperator,
};
use apklie_core::num_traits::{One, Zero};
use apklie_core::scalar::{rat, CRat, Rat};
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_crat() -> impl Strategy<Value = CRat> {
    (arb_rat(), arb_rat()).prop_map(|(re, im)| CRat::new(re, im))
}

fn arb_cmat(n: usize) -> impl Strategy<Value = CMat> {
    proptest::collection::vec(arb_crat(), n * n).prop_map(move |data| CMat::new(n, n, data))
}

fn arb_gram(n: usize) -> impl Strategy<Value = HermitianGram> {
    arb_cmat(n).prop_filter_map("non-degenerate hermitian form", |m| {
        HermitianGram::new(m.add(&dagger(&m))).ok()
    })
}

proptest! {
    #[test]
    fn field_axioms(a in arb_crat(), b in arb_crat(), c in arb_crat()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() + CRat::zero(), a.clone());
        prop_assert_eq!(a.clone() * CRat::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), CRat::one());
        }
    }

    #[test]
    fn conjugation_is_an_automorphism(a in arb_crat(), b in arb_crat()) {
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn scalar_display_round_trips(a in arb_crat()) {
        let text = a.to_string();
        let back: CRat = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn transpose_reverses_products(a in arb_cmat(3), b in arb_cmat(3)) {
        prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        prop_assert_eq!(conj_mat(&a.mul(&b)), conj_mat(&a).mul(&conj_mat(&b)));
    }

    #[test]
    fn determinant_is_multiplicative(a in arb_cmat(3), b in arb_cmat(3)) {
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn adjoint_properties(g in arb_gram(3), a in arb_cmat(3), b in arb_cmat(3)) {
        let fa = LinearOperator::new(a);
        let fb = LinearOperator::new(b);
        let star = |f: &LinearOperator| h_adjoint(f, &g).unwrap();
        // (F∘G)* = G*∘F* and (F*)* = F
        prop_assert_eq!(star(&fa.compose(&fb)), star(&fb).compose(&star(&fa)));
        prop_assert_eq!(star(&star(&fa)), fa.clone());
        // a map and its adjoint share their real trace
        prop_assert_eq!(fa.real_trace(), star(&fa).real_trace());
    }

    #[test]
    fn semilinear_composition_is_linear(a in arb_cmat(3), b in arb_cmat(3), v in proptest::collection::vec(arb_crat(), 3)) {
        let t1 = SemilinearOperator::new(a);
        let t2 = SemilinearOperator::new(b);
        let composite = t1.compose_semi(&t2);
        prop_assert_eq!(composite.apply(&v), t1.apply(&t2.apply(&v)));
        // semilinear maps are traceless as real operators
        prop_assert_eq!(t1.realify().trace(), Rat::zero());
    }

    #[test]
    fn signature_counts_add_to_dimension(g in arb_gram(4)) {
        let (p, q) = g.signature().unwrap();
        prop_assert_eq!(p + q, 4);
    }
}
