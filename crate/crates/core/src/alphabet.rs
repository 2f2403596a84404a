//! Weighted alphabets and words.
//!
//! Letters are small integers indexing into an [`Alphabet`]; the index order
//! is the total order used for canonical forms and Lyndon bases.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Letter = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    X(usize),
    Y(usize),
    Z(usize),
    B(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub weight: usize,
}

impl Generator {
    pub fn name(&self) -> String {
        match self.kind {
            GeneratorKind::X(i) => format!("x{i}"),
            GeneratorKind::Y(i) => format!("y{i}"),
            GeneratorKind::Z(j) => format!("z{j}"),
            GeneratorKind::B(k) => format!("b{k}"),
        }
    }
}

/// An ordered, weighted generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    gens: Vec<Generator>,
    surface: Option<(usize, usize)>,
}

impl Alphabet {
    /// `x1 < y1 < ... < xg < yg < z1 < ... < zn` with weights 1, 1, 2.
    pub fn surface(g: usize, n: usize) -> Arc<Alphabet> {
        let mut gens = Vec::with_capacity(2 * g + n);
        for i in 1..=g {
            gens.push(Generator { kind: GeneratorKind::X(i), weight: 1 });
            gens.push(Generator { kind: GeneratorKind::Y(i), weight: 1 });
        }
        for j in 1..=n {
            gens.push(Generator { kind: GeneratorKind::Z(j), weight: 2 });
        }
        assert!(gens.len() <= Letter::MAX as usize / 2, "alphabet too large");
        Arc::new(Alphabet { gens, surface: Some((g, n)) })
    }

    /// Generic basis `b1 < b2 < ...` with explicit positive weights.
    pub fn basis(weights: &[usize]) -> Result<Arc<Alphabet>> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Precondition("generator weights must be >= 1".into()));
        }
        if weights.len() > Letter::MAX as usize / 2 {
            return Err(Error::Precondition("alphabet too large".into()));
        }
        let gens = weights
            .iter()
            .enumerate()
            .map(|(k, &w)| Generator { kind: GeneratorKind::B(k + 1), weight: w })
            .collect();
        Ok(Arc::new(Alphabet { gens, surface: None }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.gens.len()).map(|l| l as Letter)
    }

    pub fn weight(&self, l: Letter) -> usize {
        self.gens[l as usize].weight
    }

    pub fn name(&self, l: Letter) -> String {
        self.gens[l as usize].name()
    }

    pub fn kind(&self, l: Letter) -> GeneratorKind {
        self.gens[l as usize].kind
    }

    pub fn letter_by_name(&self, name: &str) -> Option<Letter> {
        self.gens.iter().position(|g| g.name() == name).map(|p| p as Letter)
    }

    /// `(g, n)` for surface alphabets.
    pub fn surface_type(&self) -> Option<(usize, usize)> {
        self.surface
    }

    fn find(&self, kind: GeneratorKind) -> Letter {
        self.gens
            .iter()
            .position(|g| g.kind == kind)
            .unwrap_or_else(|| panic!("no generator {kind:?}")) as Letter
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Letter {
        self.find(GeneratorKind::X(i))
    }

    pub fn y(&self, i: usize) -> Letter {
        self.find(GeneratorKind::Y(i))
    }

    pub fn z(&self, j: usize) -> Letter {
        self.find(GeneratorKind::Z(j))
    }

    pub fn min_weight(&self) -> usize {
        self.gens.iter().map(|g| g.weight).min().unwrap_or(1)
    }

    pub fn word_weight(&self, w: &[Letter]) -> usize {
        w.iter().map(|&l| self.weight(l)).sum()
    }

    /// All words of weight exactly `k`, in lexicographic order.
    pub fn words_of_weight(&self, k: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.words_rec(k, &mut cur, &mut out);
        out
    }

    fn words_rec(&self, rest: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if rest == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for l in self.letters() {
            let w = self.weight(l);
            if w <= rest {
                cur.push(l);
                self.words_rec(rest - w, cur, out);
                cur.pop();
            }
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }
}

/// A finite sequence of letters; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters at the positions selected by the bit mask, in order.
    pub fn select(&self, mask: u64) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect(),
        )
    }

    /// Cyclic shift moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_order_and_weights() {
        let a = Alphabet::surface(2, 1);
        let names: Vec<_> = a.letters().map(|l| a.name(l)).collect();
        assert_eq!(names, ["x1", "y1", "x2", "y2", "z1"]);
        assert_eq!(a.weight(a.z(1)), 2);
        assert_eq!(a.weight(a.x(2)), 1);
        assert_eq!(a.letter_by_name("y2"), Some(3));
    }

    #[test]
    fn word_counts_follow_weight_recursion() {
        // f(k) = 2 f(k-1) + f(k-2) for two weight-1 letters and one weight-2 letter
        let a = Alphabet::surface(1, 1);
        let counts: Vec<_> = (0..7).map(|k| a.words_of_weight(k).len()).collect();
        assert_eq!(counts, [1, 2, 5, 12, 29, 70, 169]);
    }

    #[test]
    fn basis_rejects_zero_weight() {
        assert!(Alphabet::basis(&[1, 0]).is_err());
        assert_eq!(Alphabet::basis(&[1, 3]).unwrap().name(1), "b2");
    }
}
