//! Values computed by hand, checked against the engines.

use hopfoid::bialgebroid::check_hopf_algebroid;
use hopfoid::constructions::{groupoid_algebra, library, matrix_hopf_algebroid, twisted_coupled, Character, GroupoidPresentation, HopfAlgebraData};
use hopfoid::correspondence::{algebroid_to_category, central_case_report, fibered_structure};
use hopfoid::galois::{coinvariants, galois_maps, CoactionSide, ComoduleAlgebra};
use hopfoid::linalg::{unit_vec, Matrix, Scalar, Subspace};

#[test]
fn matrix_two_by_two() {
    let h = matrix_hopf_algebroid(2).unwrap();
    // E11 E12 E21 E22
    let e = |k| unit_vec(4, k);
    assert_eq!(h.algebra().product(&e(1), &e(2)), e(0));
    assert_eq!(h.algebra().product(&e(2), &e(1)), e(3));
    assert_eq!(h.algebra().product(&e(1), &e(1)), vec![Scalar::zero(); 4]);
    assert_eq!(h.right.counit, Matrix::from_ints(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
    assert_eq!(h.left.counit, Matrix::from_ints(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    assert_eq!(h.antipode, Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]));
    assert!(check_hopf_algebroid(&h).passed());
}

#[test]
fn matrix_fibers_are_the_matrix_units() {
    for n in 1..=3 {
        let f = fibered_structure(&matrix_hopf_algebroid(n).unwrap());
        for x in 0..n {
            for y in 0..n {
                assert_eq!(f.decomposition.fiber(x, y).dim(), 1, "n = {n}, ({x},{y})");
            }
        }
        assert_eq!(f.hat().nonzero_count(), n * n);
    }
}

#[test]
fn groupoid_fibers_count_arrows() {
    let c3 = GroupoidPresentation::cyclic_group(3);
    let g = GroupoidPresentation::pair(2).disjoint_union(&c3).disjoint_union(&GroupoidPresentation::pair(1));
    let f = fibered_structure(&groupoid_algebra(&g).unwrap());
    let k = g.objects.len();
    let mut total = 0;
    for x in 0..k {
        for y in 0..k {
            let arrows = g.arrows.iter().filter(|a| a.target == x && a.source == y).count();
            assert_eq!(f.decomposition.fiber(x, y).dim(), arrows, "({x},{y})");
            total += arrows;
        }
    }
    assert_eq!(total, 4 + 3 + 1);
    assert!(f.report.passed());
}

#[test]
fn twisted_antipode_reverses_powers() {
    // with σ(g) = i, S(g^k) is a multiple of g^{-k}
    let kc4 = HopfAlgebraData::cyclic_group(4);
    let powers = vec![Scalar::one(), Scalar::i(), Scalar::from_int(-1), Scalar::gaussian(0, -1)];
    let t = twisted_coupled(&kc4, &Character { values: powers }).unwrap();
    let s = &t.algebroid.antipode;
    for k in 0..4 {
        let col = s.column(k);
        let support: Vec<usize> = (0..4).filter(|&r| !col[r].is_zero()).collect();
        assert_eq!(support, vec![(4 - k) % 4], "S(g^{k})");
    }
    assert!(check_hopf_algebroid(&t.algebroid).passed());
}

#[test]
fn regular_coinvariants_are_the_target_image() {
    for (name, h) in library() {
        let m = ComoduleAlgebra::regular(&h);
        let r = coinvariants(&h, &m, CoactionSide::Right);
        let l = coinvariants(&h, &m, CoactionSide::Left);
        assert_eq!(r, l, "{name}");
        assert_eq!(r, Subspace::image(&m.unit_map), "{name}");
    }
}

#[test]
fn trivial_coaction_galois_only_over_the_base() {
    for (name, h) in library() {
        let m = ComoduleAlgebra::trivial(&h);
        let g = galois_maps(&h, &m, &Subspace::image(&m.unit_map)).unwrap();
        assert_eq!(g.is_galois(), h.dim() == h.base().dim(), "{name}");
        assert_eq!(g.coinvariants_r_dim, m.dim(), "{name}");
    }
}

#[test]
fn central_iff_supported_on_the_diagonal() {
    for (name, h) in library() {
        let c = central_case_report(&h);
        let diagonal = fibered_structure(&h).decomposition.support().is_diagonal();
        assert_eq!(c.central, diagonal, "{name}");
        assert!(c.report.passed(), "{name}");
    }
}

#[test]
fn pair_category_homs_are_one_dimensional() {
    let a = algebroid_to_category(&matrix_hopf_algebroid(3).unwrap()).unwrap();
    assert_eq!(a.category.category.total_dim(), 9);
    assert!(a.category.category.pairs().all(|(x, y)| a.category.category.dim(x, y) == 1));
}
