//! Conventions and quotient structure in `M_n(F_q)`, checked exhaustively on
//! small cases.

use twistflag::algebra_lab::{
    enumerate_subspaces, Budget, FiniteField, IdealRep, QuotientAlgebra, QuotientMode, Side,
};

fn subspaces(q: u32, n: usize) -> Vec<twistflag::algebra_lab::Subspace> {
    let field = FiniteField::new(q).unwrap();
    (0..=n)
        .flat_map(|d| enumerate_subspaces(field, n, d, Budget::default()).unwrap())
        .collect()
}

#[test]
fn ideal_dimensions_follow_the_column_convention() {
    for (q, n) in [(2, 3), (3, 2), (5, 2)] {
        for v in subspaces(q, n) {
            let left = IdealRep::from_subspace(&v, Side::Left);
            let right = IdealRep::from_subspace(&v, Side::Right);
            assert_eq!(left.dim(), n * (n - v.dim()));
            assert_eq!(right.dim(), n * v.dim());
            assert_eq!(left.subspace(), v);
            assert_eq!(right.subspace(), v);
        }
    }
}

#[test]
fn annihilator_of_a_left_ideal_is_the_matching_right_ideal() {
    for v in subspaces(2, 3) {
        let left = IdealRep::from_subspace(&v, Side::Left);
        let ann = left.right_annihilator();
        assert_eq!(ann.side(), Side::Right);
        assert_eq!(ann, IdealRep::from_subspace(&v, Side::Right));
        assert_eq!(ann.left_annihilator(), left);
    }
}

#[test]
fn product_of_annihilator_and_ideal_is_their_intersection() {
    for v in subspaces(3, 2).into_iter().chain(subspaces(2, 3)) {
        let left = IdealRep::from_subspace(&v, Side::Left);
        let ann = left.right_annihilator();
        let product = ann.product(&left);
        assert_eq!(product, ann.intersection(&left));
        let n = left.degree();
        assert_eq!(product.dim(), v.dim() * (n - v.dim()));
    }
}

#[test]
fn quotients_have_the_expected_degrees_and_tables() {
    for (q, n) in [(2, 3), (3, 2)] {
        for v in subspaces(q, n) {
            if v.dim() == 0 || v.dim() == n {
                continue;
            }
            let ideal = IdealRep::from_subspace(&v, Side::Left);
            let i = n - v.dim();
            for (mode, degree) in [(QuotientMode::AnnihilatorSide, n - i), (QuotientMode::IdealSide, i)] {
                let quotient = QuotientAlgebra::new(&ideal, mode).unwrap();
                assert_eq!(quotient.degree(), degree);
                assert!(quotient.verify_multiplication_table().passed(), "q={q}, n={n}, {mode:?}");
                let end = quotient.canonical_end_check();
                assert!(end.bijective(), "q={q}, n={n}, {mode:?}");
                match mode {
                    QuotientMode::AnnihilatorSide => assert!(end.homomorphism),
                    QuotientMode::IdealSide => assert!(end.anti_homomorphism),
                }
            }
        }
    }
}

#[test]
fn trivial_ideals_have_no_quotient() {
    let field = FiniteField::new(2).unwrap();
    for ideal in [IdealRep::zero(field, Side::Left, 3), IdealRep::whole(field, Side::Left, 3)] {
        assert!(QuotientAlgebra::new(&ideal, QuotientMode::AnnihilatorSide).is_err());
    }
}
