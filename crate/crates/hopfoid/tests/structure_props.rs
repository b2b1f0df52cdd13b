use hopfoid::bialgebroid::check_hopf_algebroid;
use hopfoid::constructions::{groupoid_algebra, library, Character, GroupoidPresentation, HopfAlgebraData};
use hopfoid::correspondence::{fibered_structure, round_trip_check};
use hopfoid::galois::{galois_correspondence, galois_maps, ComoduleAlgebra};
use hopfoid::io::{parse_structure, to_string, Structure};
use hopfoid::linalg::{Scalar, Subspace};
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Piece {
    Pair(usize),
    Cyclic(usize),
}

fn piece() -> impl Strategy<Value = Piece> {
    prop_oneof![(1usize..=2).prop_map(Piece::Pair), (1usize..=3).prop_map(Piece::Cyclic)]
}

fn groupoid(pieces: &[Piece]) -> GroupoidPresentation {
    let one = |p: &Piece| match p {
        Piece::Pair(n) => GroupoidPresentation::pair(*n),
        Piece::Cyclic(m) => GroupoidPresentation::cyclic_group(*m),
    };
    pieces[1..].iter().fold(one(&pieces[0]), |g, p| g.disjoint_union(&one(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn groupoid_unions_survive_the_correspondence(pieces in prop::collection::vec(piece(), 1..=2)) {
        let g = groupoid(&pieces);
        let h = groupoid_algebra(&g).unwrap();
        prop_assert!(check_hopf_algebroid(&h).passed());
        prop_assert!(round_trip_check(&h).passed());
        let f = fibered_structure(&h);
        prop_assert!(f.report.passed());
        prop_assert_eq!(f.decomposition.total_dim(), g.arrows.len());
    }

    #[test]
    fn serialization_is_a_fixpoint(pieces in prop::collection::vec(piece(), 1..=2), order in 1usize..=4) {
        let docs = [
            Structure::Groupoid(groupoid(&pieces)),
            Structure::HopfAlgebroid(groupoid_algebra(&groupoid(&pieces)).unwrap()),
            Structure::HopfAlgebra(HopfAlgebraData::cyclic_group(order)),
        ];
        for d in docs {
            let text = to_string(&d);
            let back = parse_structure(text.as_bytes()).unwrap();
            prop_assert_eq!(to_string(&back), text);
        }
    }

    #[test]
    fn characters_round_trip(values in prop::collection::vec((-5i64..=5, 1i64..=3, -5i64..=5), 1..=6)) {
        let values = values.into_iter().map(|(a, b, c)| &Scalar::from_frac(a, b) + &(&Scalar::from_int(c) * &Scalar::i())).collect();
        let c = Structure::Character(Character { values });
        let text = to_string(&c);
        prop_assert_eq!(to_string(&parse_structure(text.as_bytes()).unwrap()), text);
    }

    #[test]
    fn comodule_instances_agree(k in 0usize..15, kind in 0usize..3) {
        let (name, h) = library().swap_remove(k);
        let m = match kind {
            0 => ComoduleAlgebra::regular(&h),
            1 => ComoduleAlgebra::trivial(&h),
            _ => ComoduleAlgebra::doubled_trivial(&h),
        };
        let g = galois_maps(&h, &m, &Subspace::image(&m.unit_map)).unwrap();
        prop_assert!(g.coinvariants_equal, "{}", name);
        prop_assert!(g.factorization_holds, "{}", name);
        prop_assert_eq!(g.gal_l_rank, g.gal_r_rank);
        let c = galois_correspondence(&h, &m).unwrap();
        prop_assert!(c.equivalent(), "{}", name);
    }
}

#[test]
fn library_has_fifteen_examples() {
    assert_eq!(library().len(), 15);
}
