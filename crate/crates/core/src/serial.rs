//! JSON formats for series, automorphisms and framings.
//!
//! ```json
//! {"cutoff": 4, "terms": [{"word": ["x1", "y1"], "coeff": "1/1"}]}
//! ```
//!
//! Coefficients are written as `p/q` strings; bare integers are accepted on
//! input. Terms are ordered by weight, then by word, so equal series
//! serialize to identical bytes. Cyclic series carry `"cyclic": true` and
//! canonical words.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, GeneratorKind, Word};
use crate::cyclic::CyclicSeries;
use crate::error::{Error, Result};
use crate::kv::{TangentialAutomorphism, TangentialDerivation};
use crate::linear::LinComb;
use crate::rational::{format_q, parse_q, Q};
use crate::series::TensorSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub cutoff: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cyclic: bool,
    pub terms: Vec<TermJson>,
}

fn terms_json(alpha: &Alphabet, terms: &LinComb<Word>) -> Vec<TermJson> {
    let mut ts: Vec<(&Word, &Q)> = terms.iter().collect();
    ts.sort_by_key(|(w, _)| (alpha.word_weight(&w.0), *w));
    ts.into_iter()
        .map(|(w, c)| TermJson { word: w.0.iter().map(|&l| alpha.name(l)).collect(), coeff: format_q(c) })
        .collect()
}

fn parse_terms(alpha: &Alphabet, terms: &[TermJson]) -> Result<LinComb<Word>> {
    let mut out = LinComb::new();
    for t in terms {
        let word = t
            .word
            .iter()
            .map(|s| alpha.letter_by_name(s).ok_or_else(|| Error::Parse(format!("unknown generator {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(Word(word), parse_q(&t.coeff)?);
    }
    Ok(out)
}

impl SeriesJson {
    pub fn from_tensor(a: &TensorSeries) -> Self {
        SeriesJson { cutoff: a.cutoff(), cyclic: false, terms: terms_json(a.alphabet(), a.terms()) }
    }

    pub fn from_cyclic(c: &CyclicSeries) -> Self {
        SeriesJson { cutoff: c.cutoff(), cyclic: true, terms: terms_json(c.alphabet(), c.terms()) }
    }

    pub fn to_tensor(&self, alpha: &Arc<Alphabet>) -> Result<TensorSeries> {
        if self.cyclic {
            return Err(Error::Parse("expected a tensor series, found a cyclic one".into()));
        }
        Ok(TensorSeries::new(alpha.clone(), self.cutoff, parse_terms(alpha, &self.terms)?))
    }

    pub fn to_cyclic(&self, alpha: &Arc<Alphabet>) -> Result<CyclicSeries> {
        Ok(CyclicSeries::new(alpha.clone(), self.cutoff, parse_terms(alpha, &self.terms)?))
    }
}

/// A tangential automorphism `F = exp(u)`, stored through `u`.
///
/// `log` maps `x_i`, `y_i` to `u(x_i)`, `u(y_i)` and `z_j` to the generator
/// `u_j`. `images` lists `F` on every generator and is ignored on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub g: usize,
    pub n: usize,
    pub cutoff: usize,
    pub log: BTreeMap<String, SeriesJson>,
    #[serde(default)]
    pub images: BTreeMap<String, SeriesJson>,
}

impl AutomorphismJson {
    pub fn from_automorphism(f: &TangentialAutomorphism) -> Result<Self> {
        let alpha = f.alphabet();
        let (g, n) = alpha.surface_type().ok_or_else(|| Error::Precondition("a surface alphabet is required".into()))?;
        let u = f.log();
        let mut log = BTreeMap::new();
        let mut images = BTreeMap::new();
        for l in alpha.letters() {
            let name = alpha.name(l);
            let entry = match alpha.kind(l) {
                GeneratorKind::Z(j) => SeriesJson::from_tensor(&u.generators()[j - 1]),
                _ => SeriesJson::from_tensor(u.image(l)),
            };
            log.insert(name.clone(), entry);
            let fl = f.apply(&TensorSeries::letter(alpha, f.cutoff(), l));
            images.insert(name, SeriesJson::from_tensor(&fl));
        }
        Ok(AutomorphismJson { g, n, cutoff: f.cutoff(), log, images })
    }

    pub fn to_automorphism(&self) -> Result<TangentialAutomorphism> {
        let alpha = Alphabet::surface(self.g, self.n);
        let get = |name: String, cutoff: usize| -> Result<TensorSeries> {
            match self.log.get(&name) {
                Some(s) => Ok(s.to_tensor(&alpha)?.truncate(cutoff)),
                None => Ok(TensorSeries::zero(&alpha, cutoff)),
            }
        };
        let mut xy = Vec::new();
        let mut gens = Vec::new();
        for l in alpha.letters() {
            match alpha.kind(l) {
                GeneratorKind::Z(_) => gens.push(get(alpha.name(l), self.cutoff.saturating_sub(2))?),
                _ => xy.push(get(alpha.name(l), self.cutoff)?),
            }
        }
        Ok(TangentialAutomorphism::exp(TangentialDerivation::new(&alpha, self.cutoff, xy, gens)?))
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn from_json_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
