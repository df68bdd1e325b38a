//! Monomial algebras on one vertex: overlap tests, normal-word and necklace
//! counts, and the search for non-overlapping words of prescribed degrees.

mod automaton;

pub use automaton::AvoidanceAutomaton;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{NCPoly, Presentation};
use crate::datum::VLDatum;
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::series::TruncSeries;

/// Default bound on the number of words visited by necklace enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPresentation {
    alphabet: Vec<Letter>,
    relations: Vec<Vec<usize>>,
}

/// Whether `u` occurs as a factor of `w` (contiguous subword).
fn is_factor(u: &[usize], w: &[usize]) -> bool {
    u.len() <= w.len() && w.windows(u.len()).any(|x| x == u)
}

/// Some nonempty suffix of `e` of length `<= max` is a prefix of `f`.
fn suffix_meets_prefix(e: &[usize], f: &[usize], max: usize) -> bool {
    (1..=max.min(e.len()).min(f.len())).any(|k| e[e.len() - k..] == f[..k])
}

/// Neither word is a proper subword of the other and no nonempty proper
/// suffix of one is a prefix of the other. A word is compared with itself
/// only at proper shifts.
pub fn non_overlapping(e: &[usize], f: &[usize]) -> bool {
    assert!(!e.is_empty() && !f.is_empty(), "words must be nonempty");
    if e == f {
        return !suffix_meets_prefix(e, e, e.len() - 1);
    }
    if is_factor(e, f) || is_factor(f, e) {
        return false;
    }
    let max = e.len().min(f.len());
    !suffix_meets_prefix(e, f, max) && !suffix_meets_prefix(f, e, max)
}

/// Pairwise non-overlapping, self-pairs included. A repeated word fails.
pub fn strongly_free_words(words: &[Vec<usize>]) -> bool {
    (0..words.len()).all(|i| {
        non_overlapping(&words[i], &words[i])
            && (i + 1..words.len()).all(|j| words[i] != words[j] && non_overlapping(&words[i], &words[j]))
    })
}

/// Lexicographically least rotation is the word itself.
fn is_necklace_representative(w: &[usize]) -> bool {
    (1..w.len()).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// `u` is a cyclic factor of the necklace `w`: a factor of `w w` cut to
/// `|w| + |u| - 1` letters. Only words no longer than `w` qualify.
pub fn is_cyclic_factor(u: &[usize], w: &[usize]) -> bool {
    if u.is_empty() || u.len() > w.len() {
        return false;
    }
    let doubled: Vec<usize> = w.iter().chain(w).copied().take(w.len() + u.len() - 1).collect();
    is_factor(u, &doubled)
}

impl MonomialPresentation {
    pub fn new(alphabet: Vec<Letter>, relations: Vec<Vec<usize>>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidPresentation("alphabet is empty".into()));
        }
        if let Some(l) = alphabet.iter().find(|l| l.degree == 0) {
            return Err(Error::InvalidPresentation(format!("letter {} has degree 0", l.name)));
        }
        if relations.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidPresentation("empty relation word".into()));
        }
        if relations.iter().flatten().any(|&a| a >= alphabet.len()) {
            return Err(Error::InvalidPresentation("relation uses an unknown letter".into()));
        }
        Ok(Self { alphabet, relations })
    }

    /// Letters named `x, y, z, w` (then `v4, v5, ...`) with the given degrees.
    pub fn with_degrees(degrees: &[usize], relations: Vec<Vec<usize>>) -> Result<Self> {
        let alphabet = degrees.iter().enumerate().map(|(i, &d)| Letter { name: letter_name(i), degree: d }).collect();
        Self::new(alphabet, relations)
    }

    /// Parses words like `"xxyy"` over single-character letter names.
    pub fn parse(degrees: &[usize], words: &[&str]) -> Result<Self> {
        let p = Self::with_degrees(degrees, Vec::new())?;
        let relations = words.iter().map(|w| p.parse_word(w)).collect::<Result<_>>()?;
        Self::new(p.alphabet, relations)
    }

    fn parse_word(&self, w: &str) -> Result<Vec<usize>> {
        w.chars()
            .map(|c| {
                self.alphabet
                    .iter()
                    .position(|l| l.name.len() == c.len_utf8() && l.name.starts_with(c))
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown letter {c:?}")))
            })
            .collect()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.alphabet.iter().map(|l| l.degree).collect()
    }

    pub fn word_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&a| self.alphabet[a].degree).sum()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.alphabet[a].name.as_str()).collect()
    }

    pub fn strongly_free(&self) -> bool {
        strongly_free_words(&self.relations)
    }

    /// Number of words of each weight containing no relation as a factor.
    pub fn count_normal_words(&self, order: usize) -> TruncSeries {
        AvoidanceAutomaton::new(self.alphabet.len(), &self.relations).count_by_weight(&self.degrees(), order)
    }

    /// Number of necklaces of each weight with no relation as a cyclic
    /// factor. The constant term is 0.
    pub fn count_cyclic_avoiding(&self, order: usize, cap: usize) -> Result<TruncSeries> {
        let degrees = self.degrees();
        let total = self.count_words_up_to(order);
        if let Some(r) = total.iter().position(|&c| c > cap as u128) {
            return Err(Error::EnumerationCap { cap, weight: r });
        }
        let counts: Vec<Vec<u64>> = (0..self.alphabet.len())
            .into_par_iter()
            .map(|first| {
                let mut counts = vec![0u64; order + 1];
                let mut word = vec![first];
                if degrees[first] <= order {
                    self.necklaces_from(&mut word, degrees[first], order, &mut counts);
                }
                counts
            })
            .collect();
        let mut out = vec![BigInt::from(0); order + 1];
        for c in counts {
            for (r, v) in c.into_iter().enumerate() {
                out[r] += v;
            }
        }
        Ok(TruncSeries::new(out))
    }

    fn count_words_up_to(&self, order: usize) -> Vec<u128> {
        let mut f = vec![0u128; order + 1];
        f[0] = 1;
        for r in 1..=order {
            f[r] = self
                .alphabet
                .iter()
                .filter(|l| l.degree <= r)
                .fold(0u128, |acc, l| acc.saturating_add(f[r - l.degree]));
        }
        f
    }

    fn necklaces_from(&self, word: &mut Vec<usize>, weight: usize, order: usize, counts: &mut [u64]) {
        // A necklace representative never has a letter below its first.
        if is_necklace_representative(word) && self.relations.iter().all(|u| !is_cyclic_factor(u, word)) {
            counts[weight] += 1;
        }
        for a in word[0]..self.alphabet.len() {
            let w = weight + self.alphabet[a].degree;
            if w <= order {
                word.push(a);
                self.necklaces_from(word, w, order, counts);
                word.pop();
            }
        }
    }

    /// The same algebra as a one-vertex path algebra with monomial relations.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let mut q = Quiver::with_vertices(1);
        for l in &self.alphabet {
            q.add_named_edge(0, 0, l.degree, l.name.clone());
        }
        let relations =
            self.relations.iter().map(|w| NCPoly::from_ints(&q, &[(1, w.as_slice())])).collect::<Result<_>>()?;
        Presentation::new(q, relations)
    }

    /// `(V, L)` datum with `L° = 0`.
    pub fn to_datum(&self) -> VLDatum {
        let mut v = vec![0i64; self.alphabet.iter().map(|l| l.degree).max().unwrap_or(0) + 1];
        for l in &self.alphabet {
            v[l.degree] += 1;
        }
        let weights: Vec<usize> = self.relations.iter().map(|w| self.word_weight(w)).collect();
        let mut l = vec![0i64; weights.iter().max().copied().unwrap_or(0) + 1];
        for w in weights {
            l[w] += 1;
        }
        VLDatum::new(1, vec![vec![v]], vec![vec![l]], Vec::new(), None).expect("positively graded")
    }
}

fn letter_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        _ => format!("v{i}"),
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    alphabet: Vec<Letter>,
    relations: Vec<Vec<String>>,
}

impl Serialize for MonomialPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let relations =
            self.relations.iter().map(|w| w.iter().map(|&a| self.alphabet[a].name.clone()).collect()).collect();
        MonomialJson { alphabet: self.alphabet.clone(), relations }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MonomialJson::deserialize(d)?;
        let relations = raw
            .relations
            .iter()
            .map(|w| {
                w.iter()
                    .map(|n| {
                        raw.alphabet
                            .iter()
                            .position(|l| &l.name == n)
                            .ok_or_else(|| D::Error::custom(format!("unknown letter {n:?}")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MonomialPresentation::new(raw.alphabet, relations).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    /// Pairwise non-overlapping words, one per requested degree.
    Witness(Vec<Vec<usize>>),
    /// The search space was exhausted without a witness.
    Inadmissible,
    /// The budget ran out first.
    Inconclusive { explored: usize },
}

/// Backtracking search, in lexicographic order, for pairwise non-overlapping
/// words with `deg w_j = degrees_rel[j]`. `budget` bounds the number of
/// candidate words examined.
pub fn admissible_search(degrees_gen: &[usize], degrees_rel: &[usize], budget: usize) -> Result<Admissibility> {
    if degrees_gen.is_empty() || degrees_gen.iter().chain(degrees_rel).any(|&d| d == 0) {
        return Err(Error::InvalidArgument("degrees must be positive and the alphabet nonempty".into()));
    }
    let mut state = Search { gens: degrees_gen, explored: 0, budget };
    let mut chosen = Vec::new();
    Ok(match state.place(degrees_rel, &mut chosen) {
        Some(true) => Admissibility::Witness(chosen),
        Some(false) => Admissibility::Inadmissible,
        None => Admissibility::Inconclusive { explored: state.explored },
    })
}

struct Search<'a> {
    gens: &'a [usize],
    explored: usize,
    budget: usize,
}

impl Search<'_> {
    /// `Some(true)` on success, `Some(false)` when exhausted, `None` when over budget.
    fn place(&mut self, rest: &[usize], chosen: &mut Vec<Vec<usize>>) -> Option<bool> {
        let Some((&r, tail)) = rest.split_first() else {
            return Some(true);
        };
        let mut word = Vec::new();
        self.extend(r, tail, &mut word, chosen)
    }

    fn extend(
        &mut self,
        remaining: usize,
        tail: &[usize],
        word: &mut Vec<usize>,
        chosen: &mut Vec<Vec<usize>>,
    ) -> Option<bool> {
        if remaining == 0 {
            self.explored += 1;
            if self.explored > self.budget {
                return None;
            }
            if !non_overlapping(word, word) || !chosen.iter().all(|c| c != word && non_overlapping(c, word)) {
                return Some(false);
            }
            chosen.push(word.clone());
            match self.place(tail, chosen)? {
                true => return Some(true),
                false => {
                    chosen.pop();
                    return Some(false);
                }
            }
        }
        for (a, &m) in self.gens.iter().enumerate() {
            if m <= remaining {
                word.push(a);
                let found = self.extend(remaining - m, tail, word, chosen);
                word.pop();
                if found != Some(false) {
                    return found;
                }
            }
        }
        Some(false)
    }
}

/// Random strongly-free sets over `letters` letters of degree 1, each with
/// one to three words of length `2..=max_len`.
pub fn random_strongly_free<R: Rng>(
    rng: &mut R,
    letters: usize,
    max_len: usize,
    count: usize,
) -> Vec<MonomialPresentation> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let size = rng.random_range(1..=3);
        let words: Vec<Vec<usize>> = (0..size)
            .map(|_| {
                let len = rng.random_range(2..=max_len);
                (0..len).map(|_| rng.random_range(0..letters)).collect()
            })
            .collect();
        if strongly_free_words(&words) {
            out.push(MonomialPresentation::with_degrees(&vec![1; letters], words).expect("valid words"));
        }
    }
    out
}
