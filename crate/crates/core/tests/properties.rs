use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shelfcoh::coalgebra::build_setlike;
use shelfcoh::exactfield::{FieldElement, FieldSpec};
use shelfcoh::fixtures::parse_rack;
use shelfcoh::quandlecoh::{make_rack, RackKind};
use shelfcoh::shelfcohomology::{Cochain, ShelfComplex};
use shelfcoh::shelfmap::q_from_rack;
use shelfcoh::tensorspace::{parse_map, BasedSpace, LinearMap};
use shelfcoh::yangbaxter::{q_from_r, r_from_q};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::GaussianRationals),
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7)),
    ]
}

fn element(f: FieldSpec) -> impl Strategy<Value = FieldElement> {
    (-20i64..20, 1i64..9, -20i64..20).prop_map(move |(a, b, c)| {
        let base = f.from_i64(a).checked_div(&f.from_i64(b)).unwrap_or_else(|_| f.from_i64(a));
        match f.imaginary_unit() {
            Some(i) => &base + &(&i * &f.from_i64(c)),
            None => base,
        }
    })
}

fn elements() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    field().prop_flat_map(|f| (element(f), element(f), element(f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parses_back((a, _, _) in elements()) {
        prop_assert_eq!(FieldElement::parse(&a.to_string(), a.spec()).unwrap(), a);
    }

    #[test]
    fn field_axioms((a, b, c) in elements()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rack_text_round_trip(n in 1usize..9) {
        let r = make_rack(&RackKind::Dihedral(n)).unwrap();
        let back = parse_rack(&r.to_text()).unwrap();
        prop_assert_eq!(back.table(), r.table());
    }

    #[test]
    fn map_text_round_trip(f in field(), dim in 1usize..4, seed in any::<u64>()) {
        let space = BasedSpace::numbered(dim, f);
        let m = LinearMap::random(&space, 2, 1, &mut ChaCha8Rng::seed_from_u64(seed));
        let (name, back) = parse_map(&m.to_text("q"), &space).unwrap();
        prop_assert_eq!(name, "q");
        prop_assert_eq!(back, m);
    }

    #[test]
    fn counit_round_trip_on_setlike(dim in 1usize..4, p in prop_oneof![Just(3u64), Just(5), Just(7)], seed in any::<u64>()) {
        let labels: Vec<String> = (0..dim).map(|k| format!("g{k}")).collect();
        let c = build_setlike(&labels, FieldSpec::Prime(p));
        let q = LinearMap::random(&c.space, 2, 1, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(q_from_r(&r_from_q(&q, &c), &c), q);
    }

    #[test]
    fn d2_after_d1_vanishes_on_racks(n in 1usize..5, p in prop_oneof![Just(2u64), Just(3), Just(5)], seed in any::<u64>()) {
        let s = q_from_rack(&make_rack(&RackKind::Dihedral(n)).unwrap(), FieldSpec::Prime(p)).unwrap();
        let cx = ShelfComplex::new(&s);
        let (a, b) = cx.d1(&Cochain::random(&s, 1, 1, &mut ChaCha8Rng::seed_from_u64(seed)));
        let (x, y, z) = cx.d2(&a, &b);
        prop_assert!(x.is_zero() && y.is_zero() && z.is_zero());
    }
}
