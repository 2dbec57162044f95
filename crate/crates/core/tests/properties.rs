use proptest::prelude::*;

use tjm_core::arith::{half, FormalCharacter};
use tjm_core::doublecosets::PermMatrix;
use tjm_core::ff_oracle::FpMatrix;
use tjm_core::lfun::{adjoint, dual_param, tensor_param, LanglandsParam, SpehBlock};
use tjm_core::parse::{parse_expr, parse_multisegment};
use tjm_core::reps::ReprExpr;
use tjm_core::segments::{juxtaposed, linked, precedes, union_intersect, Multisegment, Segment};
use tjm_core::zelevinsky::mw_dual;

/// Segments on the lattice `offset/2 + Z`, exponents in `[-4, 4]`.
fn segment(offset: i64) -> impl Strategy<Value = Segment> {
    (-4i64..=3, 0i64..=4).prop_map(move |(b, len)| {
        let e = (b + len).min(4 - offset);
        let b = b.min(e);
        Segment::nu(half(2 * b + offset), half(2 * e + offset))
    })
}

fn multisegment() -> impl Strategy<Value = Multisegment> {
    (0i64..2).prop_flat_map(|o| prop::collection::vec(segment(o), 1..=6).prop_map(Multisegment::new))
}

fn permutation(n: usize) -> impl Strategy<Value = PermMatrix> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| PermMatrix::from_perm(p).unwrap())
}

fn fp_matrix(p: u8, m: usize) -> impl Strategy<Value = FpMatrix> {
    (0..(p as usize).pow((m * m) as u32)).prop_map(move |k| FpMatrix::from_key(p, m, k))
}

fn param() -> impl Strategy<Value = LanglandsParam> {
    prop::collection::vec((1usize..=4, -6i64..=6), 1..=4).prop_map(|v| {
        LanglandsParam::new(
            v.into_iter()
                .map(|(a, t)| SpehBlock::new(a, FormalCharacter::nu(half(t))))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn mw_is_an_involution(m in multisegment()) {
        let t = mw_dual(&m);
        prop_assert_eq!(t.degree(), m.degree());
        prop_assert_eq!(mw_dual(&t), m);
    }

    #[test]
    fn mw_commutes_with_contragredient(m in multisegment()) {
        prop_assert_eq!(mw_dual(&m.dual()), mw_dual(&m).dual());
    }

    #[test]
    fn multisegment_display_parses_back(m in multisegment()) {
        prop_assert_eq!(parse_multisegment(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn expression_display_parses_back(a in multisegment(), b in multisegment()) {
        let e = ReprExpr::product(vec![ReprExpr::z(a), ReprExpr::l(b)]);
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn segment_relations(a in segment(0), b in segment(0)) {
        prop_assert_eq!(linked(&a, &b), linked(&b, &a));
        prop_assert!(!juxtaposed(&a, &b) || linked(&a, &b));
        prop_assert!(!(precedes(&a, &b) && precedes(&b, &a)));
        if linked(&a, &b) {
            prop_assert!(precedes(&a, &b) || precedes(&b, &a));
            let (u, i) = union_intersect(&a, &b).unwrap();
            let li = i.as_ref().map_or(0, |s| s.len());
            prop_assert_eq!(u.len() + li, a.len() + b.len());
            prop_assert_eq!(i.is_none(), juxtaposed(&a, &b));
        }
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.shift(half(2)).len(), a.len());
    }

    #[test]
    fn permutation_group_axioms(a in permutation(6), b in permutation(6), c in permutation(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&PermMatrix::identity(6)), a.clone());
        prop_assert_eq!(a.compose(&b).det(), a.det() * b.det());
    }

    #[test]
    fn perm_matrices_embed_as_fp_matrices(a in permutation(4), b in permutation(4)) {
        let prod = FpMatrix::from_perm(&a.compose(&b), 2);
        prop_assert_eq!(prod, FpMatrix::from_perm(&a, 2).mul(&FpMatrix::from_perm(&b, 2)));
    }

    #[test]
    fn fp_matrix_group_axioms(a in fp_matrix(3, 3), b in fp_matrix(3, 3), c in fp_matrix(3, 3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).det() as u32, (a.det() as u32 * b.det() as u32) % 3);
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), FpMatrix::identity(3, 3));
        } else {
            prop_assert_eq!(a.det(), 0);
        }
    }

    #[test]
    fn tensor_dimension_is_multiplicative(p in param(), q in param()) {
        prop_assert_eq!(tensor_param(&p, &q).dim(), p.dim() * q.dim());
        prop_assert_eq!(tensor_param(&p, &q), tensor_param(&q, &p));
        let ad = adjoint(&p);
        prop_assert_eq!(ad.dim(), p.dim() * p.dim());
        prop_assert_eq!(dual_param(&ad), ad);
    }
}
