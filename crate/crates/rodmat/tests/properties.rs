//! Randomized structural invariants: exact arithmetic laws, schema round
//! trips, and gauge/node-passing symmetries on randomly generated matrices.

use num::{BigInt, BigRational};
use proptest::prelude::*;
use rodmat::exact::{rat_i, Polynomial, Rational, RationalFunction};
use rodmat::patching::{ConjugationRecord, Direction, PatchingMatrix, RodInterval, Signature};
use rodmat::schema;

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(num, den)| {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    })
}

fn arb_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(arb_rat(), 0..=max_len).prop_map(Polynomial::new)
}

/// A diagonal (Weyl-type) Riemannian matrix diag(f, -1/f) for a rational f
/// assembled from distinct linear factors; always satisfies det = -1.
fn arb_weyl_matrix() -> impl Strategy<Value = PatchingMatrix> {
    prop::collection::btree_set(-8i64..=8, 1..=3).prop_map(|roots| {
        let roots: Vec<Rational> = roots.into_iter().map(rat_i).collect();
        let num = Polynomial::from_roots(&roots);
        let f = RationalFunction::new(num.clone(), Polynomial::one()).unwrap();
        let neg_f =
            RationalFunction::new(num.scale(&rat_i(-1)), Polynomial::one()).unwrap();
        let top = roots.last().unwrap().clone();
        PatchingMatrix::diagonal(
            f.recip().unwrap(),
            neg_f,
            Signature::Riemannian,
            roots,
            Some(RodInterval::top(top)),
        )
    })
}

proptest! {
    #[test]
    fn polynomial_multiplication_distributes(
        a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)
    ) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_gcd_divides_both(a in arb_poly(4), b in arb_poly(4)) {
        let g = a.gcd(&b);
        if !g.is_zero() {
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
        }
    }

    #[test]
    fn schema_round_trip_preserves_matrices(p in arb_weyl_matrix()) {
        let text = schema::matrix_to_string(&p);
        let q = schema::matrix_from_str(&text).unwrap();
        prop_assert!(p.same_entries(&q));
        prop_assert_eq!(&p.nodes, &q.nodes);
        prop_assert_eq!(schema::matrix_to_string(&q), text);
    }

    #[test]
    fn conjugation_preserves_the_determinant(
        p in arb_weyl_matrix(), t in arb_rat()
    ) {
        let c = ConjugationRecord::lower_shear(t);
        let q = p.conjugate(&c).unwrap();
        prop_assert!(q.det_check().pass);
    }

    #[test]
    fn node_passing_down_then_up_is_the_identity(p in arb_weyl_matrix()) {
        let node = p.nodes.last().unwrap().clone();
        if let Ok((down, _)) = p.pass_node_standard(&node, Direction::Down) {
            prop_assert!(down.det_check().pass);
            let (back, _) = down.pass_node_standard(&node, Direction::Up).unwrap();
            prop_assert!(back.same_entries(&p));
        }
    }
}
