use std::sync::Arc;

use proptest::prelude::*;

use cyclie::dbrackets::{
    derivation_images, e_insert, partial_map, pi, schouten, PoissonComplex, SuperCyclicSeries, SuperGenerator,
    SuperSeries, EXACT,
};
use cyclie::lie::bracket;
use cyclie::random;
use cyclie::rational::q;
use cyclie::{Alphabet, LinComb, TensorSeries};

const SURFACES: [(usize, usize); 3] = [(1, 0), (0, 2), (1, 1)];

/// `(-1)^{(p-1)(q-1)}`.
fn sign(p: usize, q_: usize) -> i64 {
    if (p + 1) * (q_ + 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn scaled(s: &SuperCyclicSeries, c: i64) -> SuperCyclicSeries {
    s.scale(&q(c))
}

fn sch(a: &SuperCyclicSeries, b: &SuperCyclicSeries) -> SuperCyclicSeries {
    schouten(a, b).unwrap()
}

fn non_cyclic(s: &SuperCyclicSeries) -> SuperSeries {
    SuperSeries::new(s.alphabet().clone(), EXACT, s.terms().clone())
}

fn element(r: &mut rand_chacha::ChaCha8Rng, a: &Arc<Alphabet>, k: usize, even: usize) -> SuperCyclicSeries {
    random::super_cyclic(r, a, k, even, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), s in 0usize..3, p in 0usize..=2, q_ in 0usize..=2, e1 in 1usize..=3, e2 in 1usize..=3) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let mut r = random::rng(seed);
        let (x, y) = (element(&mut r, &a, p, e1), element(&mut r, &a, q_, e2));
        let lhs = sch(&x, &y);
        let rhs = scaled(&sch(&y, &x), sign(p, q_));
        prop_assert!((&lhs + &rhs).is_zero());
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), s in 0usize..3, degs in prop::collection::vec(0usize..=2, 3), evens in prop::collection::vec(1usize..=2, 3)) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let mut r = random::rng(seed);
        let x = element(&mut r, &a, degs[0], evens[0]);
        let y = element(&mut r, &a, degs[1], evens[1]);
        let z = element(&mut r, &a, degs[2], evens[2]);
        // [x,[y,z]] = [[x,y],z] + (-1)^{(p-1)(q-1)} [y,[x,z]]
        let lhs = sch(&x, &sch(&y, &z));
        let twist = scaled(&sch(&y, &sch(&x, &z)), sign(degs[0], degs[1]));
        let rhs = &sch(&sch(&x, &y), &z) + &twist;
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), s in 0usize..3, k in 0usize..=2, even in 1usize..=4) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let c = PoissonComplex::new(&a).unwrap();
        let x = element(&mut random::rng(seed), &a, k, even);
        let dd = c.differential(&c.differential(&x).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn partial_map_is_a_lie_morphism(seed in any::<u64>(), s in 0usize..3) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let mut r = random::rng(seed);
        let (x, y) = (element(&mut r, &a, 1, 2), element(&mut r, &a, 1, 2));
        let arg = random::cyclic(&mut r, &a, 8, 1, 3, 3);
        let ev = |p: &SuperCyclicSeries, b| partial_map(p, &[b]).unwrap();
        let lhs = ev(&sch(&x, &y), arg.clone());
        let rhs = &ev(&x, ev(&y, arg.clone())) - &ev(&y, ev(&x, arg));
        prop_assert_eq!(lhs.terms(), rhs.terms());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn e_ideal_is_an_ideal(seed in any::<u64>(), s in 0usize..3, p in 0usize..=1, k in 0usize..=1, e1 in 1usize..=2, e2 in 0usize..=2) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let c = PoissonComplex::new(&a).unwrap();
        let mut r = random::rng(seed);
        let x = element(&mut r, &a, p, e1);
        let alpha = non_cyclic(&element(&mut r, &a, k, e2));
        let ideal = e_insert(&alpha);
        prop_assert!(c.in_ideal(&ideal));
        prop_assert!(c.in_ideal(&sch(&x, &ideal)));
        prop_assert!(c.in_ideal(&sch(&c.pi().clone(), &ideal)));
    }

    #[test]
    fn degree_one_ideal_is_inner(seed in any::<u64>(), s in 0usize..3) {
        let (g, n) = SURFACES[s];
        let a = Alphabet::surface(g, n);
        let c = PoissonComplex::new(&a).unwrap();
        let al = random::series(&mut random::rng(seed), &a, 8, 1, 3, 3);
        let images = derivation_images(&e_insert(&SuperSeries::from_tensor(&al))).unwrap();
        let mut inner = LinComb::new();
        for (l, img) in a.letters().zip(&images) {
            let x = TensorSeries::letter(&a, 8, l);
            let expected = bracket(&al, &x);
            prop_assert_eq!(img.terms(), expected.terms());
            for (w, coeff) in expected.iter() {
                let mut word = vec![SuperGenerator::Partial(l)];
                word.extend(w.0.iter().map(|&m| SuperGenerator::Base(m)));
                inner.add_term(word, coeff.clone());
            }
        }
        prop_assert!(c.in_ideal(&SuperCyclicSeries::new(a.clone(), EXACT, inner)));
    }
}

#[test]
fn pi_is_poisson_on_every_surface() {
    for (g, n) in [(1, 0), (0, 2), (1, 1), (2, 0), (0, 3)] {
        let a = Alphabet::surface(g, n);
        let p = pi(&a).unwrap();
        assert!(sch(&p, &p).is_zero(), "({g},{n})");
    }
}
