mod common;

use std::sync::Arc;

use common::*;
use nilindex_core::artrans::{ar_quiver, EnumerationLimits};
use nilindex_core::quiver::parse_presentation;
use nilindex_core::radical::RadicalFiltration;
use nilindex_core::rep::{dual, hom_space};
use nilindex_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

macro_rules! fixture_suite {
    ($($name:ident),*) => {$(
        #[test]
        fn $name() {
            property_suite(&filtration(stringify!($name))).unwrap();
        }
    )*};
}

fixture_suite!(a2, a3, a3_zero, d4, single_vertex, commutative_square, cyclic, four_cycle, toupie_one_zero, toupie_two_zero);

#[test]
fn loop_fixture() {
    property_suite(&filtration("loop")).unwrap();
}

fn draw(seed: u64) -> Option<(String, RadicalFiltration)> {
    let text = random_monomial_text(&mut ChaCha8Rng::seed_from_u64(seed), 5);
    let alg = algebra_from(&text).ok()?;
    match ar_quiver(&alg, EnumerationLimits::new(60, 300).unwrap()) {
        Ok(ar) => Some((text, RadicalFiltration::new(Arc::new(ar)).unwrap())),
        Err(Error::LimitsExceeded(_) | Error::SplitFieldNeeded(_)) => None,
        Err(e) => panic!("{e}\n{text}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn random_algebras_satisfy_the_suite(seed in any::<u64>()) {
        if let Some((text, f)) = draw(seed) {
            prop_assert!(property_suite(&f).is_ok(), "{:?}\n{}", property_suite(&f), text);
        }
    }

    #[test]
    fn presentation_round_trip(seed in any::<u64>()) {
        let text = random_monomial_text(&mut ChaCha8Rng::seed_from_u64(seed), 6);
        let pres = parse_presentation(&text).unwrap();
        prop_assert_eq!(parse_presentation(&pres.to_dsl()).unwrap().to_dsl(), pres.to_dsl());
    }

    // dim Hom(M, N) = dim Hom(DN, DM) over the opposite algebra
    #[test]
    fn duality_preserves_hom(seed in any::<u64>()) {
        if let Some((_, f)) = draw(seed) {
            let ms = f.ar().modules();
            let ds: Vec<_> = ms.iter().map(|m| dual(m).unwrap()).collect();
            for x in 0..ms.len().min(8) {
                for y in 0..ms.len().min(8) {
                    prop_assert_eq!(f.hom(x, y).dim(), hom_space(&ds[y], &ds[x]).unwrap().dim());
                }
            }
        }
    }
}

#[test]
fn seeded_draws_are_reproducible() {
    let (a, skipped_a) = random_rep_finite(7, 3, 5);
    let (b, skipped_b) = random_rep_finite(7, 3, 5);
    assert_eq!(skipped_a, skipped_b);
    assert_eq!(a.iter().map(|x| &x.0).collect::<Vec<_>>(), b.iter().map(|x| &x.0).collect::<Vec<_>>());
}
