use proptest::prelude::*;

use cyclie::lie::solve::{delta_power_span, lie_plus_powers, pair_span_rank, span_rank};
use cyclie::lie::{ad_normalizer_structure, bch, bracket, centralizer_of_delta, solve_ad};
use cyclie::random;
use cyclie::symplectic::SymplecticSpace;
use cyclie::{Alphabet, PairSeries, TensorSeries};

fn same_series_span(a: &[TensorSeries], b: &[TensorSeries]) -> bool {
    let all: Vec<TensorSeries> = a.iter().chain(b).cloned().collect();
    let r = span_rank(&all);
    span_rank(a) == r && span_rank(b) == r
}

fn same_pair_span(a: &[PairSeries], b: &[PairSeries]) -> bool {
    let all: Vec<PairSeries> = a.iter().chain(b).cloned().collect();
    let r = pair_span_rank(&all);
    pair_span_rank(a) == r && pair_span_rank(b) == r
}

fn test_elements() -> Vec<TensorSeries> {
    let a = Alphabet::basis(&[1, 1, 1]).unwrap();
    let x = TensorSeries::letter(&a, 6, 0);
    let y = TensorSeries::letter(&a, 6, 1);
    vec![x.clone(), &x + &y.scale(&cyclie::rational::q(2)), SymplecticSpace::new(1).omega0(6)]
}

#[test]
fn centralizer_of_delta_is_spanned_by_powers() {
    for z in test_elements() {
        for m in 0..=6 {
            let cent = centralizer_of_delta(&z, m).unwrap();
            let powers = delta_power_span(&z, m).unwrap();
            assert!(same_pair_span(&cent, &powers), "z = {z}, m = {m}");
        }
    }
}

#[test]
fn normalizer_is_lie_plus_powers() {
    for z in test_elements() {
        for m in 1..=6 {
            let norm = ad_normalizer_structure(&z, m).unwrap();
            let expected = lie_plus_powers(&z, m).unwrap();
            assert!(same_series_span(&norm, &expected), "z = {z}, m = {m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_is_associative(seed in any::<u64>()) {
        let a = Alphabet::basis(&[1, 1, 2]).unwrap();
        let mut r = random::rng(seed);
        let [u, v, w] = [0, 1, 2].map(|_| random::lie(&mut r, &a, 5, 1, 3, 2).into_series());
        let left = bch(&bch(&u, &v).unwrap(), &w).unwrap();
        let right = bch(&u, &bch(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn solve_ad_outputs_solve(seed in any::<u64>(), lie_only in any::<bool>(), random_rhs in any::<bool>()) {
        let mut r = random::rng(seed);
        let zs = test_elements();
        let z = &zs[(seed % 3) as usize];
        let a = z.alphabet();
        let b = if random_rhs {
            random::series(&mut r, a, 6, 2, 6, 3)
        } else {
            let u0 = random::lie(&mut r, a, 6, 1, 4, 3).into_series();
            bracket(z, &u0)
        };
        if let Ok(u) = solve_ad(z, &b, lie_only) {
            let n = u.cutoff().min(b.cutoff());
            let lhs = bracket(z, &u.extend_cutoff(n)).truncate(n);
            prop_assert_eq!(lhs, b.truncate(n));
            if lie_only {
                prop_assert!(u.is_primitive());
            }
        } else {
            prop_assert!(random_rhs);
        }
    }
}
