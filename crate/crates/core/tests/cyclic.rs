use proptest::prelude::*;

use cyclie::cyclic::{exp_trace, power_trace, trace, CyclicSeries};
use cyclie::lie::bracket;
use cyclie::pbw::eulerian_projection;
use cyclie::random;
use cyclie::rational::q;
use cyclie::{Alphabet, LinComb, TensorSeries, Word};

fn rotated(a: &TensorSeries) -> TensorSeries {
    let terms: LinComb<Word> = a.iter().map(|(w, c)| (if w.is_empty() { w.clone() } else { w.rotate(1) }, c.clone())).collect();
    TensorSeries::new(a.alphabet().clone(), a.cutoff(), terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_of_embedding_multiplies_by_length(w in prop::collection::vec(0u8..3, 1..=7)) {
        let a = Alphabet::basis(&[1, 1, 1]).unwrap();
        let c = CyclicSeries::word(&a, 7, &Word(w.clone()), q(1));
        let e = c.embed();
        prop_assert_eq!(rotated(&e), e.clone());
        prop_assert_eq!(trace(&e), c.scale(&q(w.len() as i64)));
    }

    #[test]
    fn embedding_is_rotation_invariant(seed in any::<u64>()) {
        let a = Alphabet::surface(1, 1);
        let c = random::cyclic(&mut random::rng(seed), &a, 6, 1, 6, 5);
        let e = c.embed();
        prop_assert_eq!(rotated(&e), e);
    }

    #[test]
    fn commutators_have_zero_trace(seed in any::<u64>()) {
        let a = Alphabet::basis(&[1, 1, 2]).unwrap();
        let mut r = random::rng(seed);
        let x = random::series(&mut r, &a, 6, 0, 5, 4);
        let y = random::series(&mut r, &a, 6, 0, 5, 4);
        prop_assert!(trace(&bracket(&x, &y)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn eulerian_components_sum_to_identity(seed in any::<u64>()) {
        let a = Alphabet::basis(&[1, 1, 2]).unwrap();
        let s = random::series(&mut random::rng(seed), &a, 6, 0, 6, 4);
        let comps: Vec<TensorSeries> = (0..=6).map(|m| eulerian_projection(&s, m)).collect();
        let sum = comps.iter().fold(TensorSeries::zero(&a, 6), |acc, c| &acc + c);
        prop_assert_eq!(sum, s);
        prop_assert!(comps[1].is_primitive());
    }

    #[test]
    fn traces_are_conjugation_invariant(seed in any::<u64>()) {
        let a = Alphabet::surface(1, 1);
        let mut r = random::rng(seed);
        let u = random::lie(&mut r, &a, 6, 1, 3, 3).into_series();
        let g = random::group_like(&mut r, &a, 6, 3, 3);
        let v = g.conjugate(&u);
        prop_assert!(v.is_primitive());
        prop_assert_eq!(exp_trace(&u).unwrap(), exp_trace(&v).unwrap());
        for m in 1..=6 {
            prop_assert_eq!(power_trace(&u, m), power_trace(&v, m));
        }
    }
}
