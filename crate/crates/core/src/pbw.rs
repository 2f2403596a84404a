//! Eulerian idempotents and the PBW decomposition `T̂ = Π_m Sym^m L̂`.
//!
//! The idempotents are computed once per word length on a generic word with
//! distinct letters, as elements of the group algebra of `S_n`:
//! `e_1 = log*(id)` under the convolution `f * g = μ (f ⊗ g) Δ`, and
//! `e_m = e_1^{*m} / m!`. Applying them to a concrete word permutes its
//! positions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::alphabet::Word;
use crate::linear::LinComb;
use crate::rational::{factorial, q, Q};
use crate::series::TensorSeries;

/// Position sequences with coefficients: `Σ c_σ (σ(1) … σ(n))`.
pub type GroupAlgebraElement = Vec<(Vec<u8>, Q)>;

type Table = HashMap<usize, Arc<Vec<GroupAlgebraElement>>>;

fn cache() -> &'static Mutex<Table> {
    static CACHE: OnceLock<Mutex<Table>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn positions(mask: usize) -> Vec<u8> {
    (0..usize::BITS as u8).filter(|&i| mask >> i & 1 == 1).collect()
}

fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    // all nonempty submasks, including `mask` itself
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            done = true;
            return None;
        }
        s = (s - 1) & mask;
        Some(cur)
    })
}

/// `(f * g)(mask) = Σ_{S ⊆ mask} f(S) · g(mask \ S)` on position sequences.
fn convolve(f: &[LinComb<Vec<u8>>], g: &[LinComb<Vec<u8>>], mask: usize) -> LinComb<Vec<u8>> {
    let mut out = LinComb::new();
    let mut handle = |s: usize| {
        let rest = mask & !s;
        for (a, ca) in f[s].iter() {
            for (b, cb) in g[rest].iter() {
                let mut seq = a.clone();
                seq.extend_from_slice(b);
                out.add_term(seq, ca * cb);
            }
        }
    };
    handle(0);
    for s in submasks(mask) {
        handle(s);
    }
    out
}

fn compute_idempotents(n: usize) -> Vec<GroupAlgebraElement> {
    assert!(n <= 12, "word too long for Eulerian idempotents");
    let full = (1usize << n) - 1;
    let size = 1usize << n;
    // J = id - ε on every sub-mask
    let j: Vec<LinComb<Vec<u8>>> =
        (0..size).map(|m| if m == 0 { LinComb::new() } else { LinComb::from_term(positions(m), Q::one()) }).collect();
    let mut e1: Vec<LinComb<Vec<u8>>> = vec![LinComb::new(); size];
    let mut power = j.clone();
    for k in 1..=n {
        let c = if k % 2 == 1 { Q::new(1.into(), (k as i64).into()) } else { Q::new((-1).into(), (k as i64).into()) };
        for m in 0..size {
            e1[m].add_scaled(&power[m], &c);
        }
        if k < n {
            power = (0..size).map(|m| convolve(&j, &power, m)).collect();
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    // e_0 = ε
    let mut prev: Vec<LinComb<Vec<u8>>> =
        (0..size).map(|m| if m == 0 { LinComb::from_term(Vec::new(), Q::one()) } else { LinComb::new() }).collect();
    out.push(prev[full].clone().into_iter().collect());
    for m in 1..=n {
        let inv = Q::new(1.into(), (m as i64).into());
        let next: Vec<LinComb<Vec<u8>>> = (0..size).map(|s| convolve(&e1, &prev, s).scaled(&inv)).collect();
        out.push(next[full].clone().into_iter().collect());
        prev = next;
    }
    out
}

/// `[e_0, …, e_n]` on words of length `n`, as elements of `Q[S_n]`.
pub fn eulerian_idempotents(n: usize) -> Arc<Vec<GroupAlgebraElement>> {
    let mut guard = cache().lock().expect("idempotent cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(compute_idempotents(n))).clone()
}

fn apply_element(w: &Word, elt: &GroupAlgebraElement, c: &Q, out: &mut LinComb<Word>) {
    for (perm, k) in elt {
        out.add_term(Word(perm.iter().map(|&p| w.0[p as usize]).collect()), c * k);
    }
}

/// The `Sym^m L̂` component of `a`; `m = 1` is the projection onto `L̂`.
pub fn eulerian_projection(a: &TensorSeries, m: usize) -> TensorSeries {
    let mut terms = LinComb::new();
    for (w, c) in a.iter() {
        let n = w.len();
        if m > n {
            continue;
        }
        let table = eulerian_idempotents(n);
        apply_element(w, &table[m], c, &mut terms);
    }
    TensorSeries::new(a.alphabet().clone(), a.cutoff(), terms)
}

/// All PBW components `e_0(a), e_1(a), …` up to the longest word of `a`.
pub fn pbw_components(a: &TensorSeries) -> Vec<TensorSeries> {
    let top = a.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    (0..=top).map(|m| eulerian_projection(a, m)).collect()
}

/// `(1/m!) Σ_σ f_σ(1) ⋯ f_σ(m)`.
pub fn symmetrize(factors: &[TensorSeries]) -> TensorSeries {
    assert!(!factors.is_empty(), "symmetrize needs at least one factor");
    let m = factors.len();
    let alpha = factors[0].alphabet().clone();
    let cutoff = factors.iter().map(|f| f.cutoff()).min().unwrap_or(0);
    let mut acc = TensorSeries::zero(&alpha, cutoff);
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let prod = perm.iter().fold(TensorSeries::one(&alpha, cutoff), |p, &i| &p * &factors[i]);
        acc = &acc + &prod;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc.scale(&factorial(m).recip())
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of descents `σ(i) > σ(i+1)`.
pub fn descents(p: &[u8]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Coefficient of `t^m` in `C(t + n - 1 - d, n)`, the descent-class value of
/// `e_m` on permutations with `d` descents.
pub fn descent_coefficient(n: usize, d: usize, m: usize) -> Q {
    // polynomial prod_{i=0}^{n-1} (t + n - 1 - d - i) / n!
    let mut poly = vec![Q::one()];
    for i in 0..n {
        let c = q(n as i64 - 1 - d as i64 - i as i64);
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (k, a) in poly.iter().enumerate() {
            next[k] += a * &c;
            next[k + 1] += a;
        }
        poly = next;
    }
    poly.get(m).cloned().unwrap_or_else(Q::zero) * factorial(n).recip()
}
