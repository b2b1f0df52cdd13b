use hopfoid::linalg::{apply_slot, kernel_basis, kron_vec, rank, try_inverse, Matrix, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        &Scalar::from_frac(a, b) + &(&Scalar::from_frac(c, d) * &Scalar::i())
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

proptest! {
    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Scalar::one());
            prop_assert_eq!(&b / &a, &b * &inv);
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn display_parses_back(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 1)) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn kron_vec_matches_kron(u in prop::collection::vec(scalar(), 3), v in prop::collection::vec(scalar(), 2)) {
        let k = Matrix::column_vector(u.clone()).kron(&Matrix::column_vector(v.clone()));
        prop_assert_eq!(k.column(0), kron_vec(&u, &v));
    }

    #[test]
    fn apply_slot_is_kron_with_identity(v in prop::collection::vec(scalar(), 12), op0 in matrix(2, 2), op1 in matrix(4, 3), op2 in matrix(1, 2)) {
        let dims = [2, 3, 2];
        let i2 = Matrix::identity(2);
        let i3 = Matrix::identity(3);
        prop_assert_eq!(apply_slot(&v, &dims, 0, &op0), op0.kron(&i3).kron(&i2).mul_vec(&v));
        prop_assert_eq!(apply_slot(&v, &dims, 1, &op1), i2.kron(&op1).kron(&i2).mul_vec(&v));
        prop_assert_eq!(apply_slot(&v, &dims, 2, &op2), i2.kron(&i3).kron(&op2).mul_vec(&v));
    }

    #[test]
    fn rank_nullity(m in matrix(3, 5)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), 5);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_exactly_when_full_rank(m in matrix(3, 3)) {
        match try_inverse(&m) {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(rank(&m) < 3),
        }
    }
}

#[test]
fn scalar_spellings() {
    for (text, want) in [("3/6", Scalar::from_frac(1, 2)), ("0+1 i", Scalar::i()), ("i", Scalar::i()), ("1+i", Scalar::gaussian(1, 1)), ("-2-1/3 i", &Scalar::from_int(-2) - &(&Scalar::from_frac(1, 3) * &Scalar::i()))] {
        assert_eq!(text.parse::<Scalar>().unwrap(), want);
    }
    assert_eq!(Scalar::from_frac(2, 4).to_string(), "1/2");
    for bad in ["", "1/0", "1/-2", "1 +2 i", "--1", "x", "1/2/3"] {
        assert!(bad.parse::<Scalar>().is_err(), "{bad:?} parsed");
    }
}
