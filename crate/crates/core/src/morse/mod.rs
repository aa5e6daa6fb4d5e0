//! Discrete Morse theory on intervals of `P*`.
//!
//! A maximal chain `w = v_0 > v_1 > ... > v_n = u` is labeled by the
//! position it changes at each step (in `w`'s coordinates) and the new
//! letter. Chains are ordered lexicographically by label sequence, and
//! the Mobius value is the signed count of critical chains.

mod critical;
mod msi;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{AugmentedPoset, FinitePoset, NaturalLabeling};
use crate::word::{single_step, Embedding, Word};

pub use critical::{
    classify_single_position_msi, critical_chains, critical_chains_with,
    for_each_chain_decomposition, mobius_morse, mobius_morse_with, per_embedding_mu,
    per_embedding_mu_with,
};
pub use msi::{
    critical_chains_brute, j_construction, j_intervals, msis, skipped_intervals, ChainContext,
    MsiDecomposition,
};

/// Label of one cover step: `position` is 1-based in the top word, `letter`
/// is the new letter (possibly the bottom of `P_0`), `weight` its natural
/// label. Labels order by position, then weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub position: usize,
    pub weight: u64,
    pub letter: usize,
}

impl Label {
    pub fn display<'a>(&'a self, p0: &'a AugmentedPoset) -> LabelDisplay<'a> {
        LabelDisplay { label: self, p0 }
    }
}

pub struct LabelDisplay<'a> {
    label: &'a Label,
    p0: &'a AugmentedPoset,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{},{}>",
            self.label.position,
            self.p0.name(self.label.letter)
        )
    }
}

/// A maximal chain of `[u, w]` with its embedding track and labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledChain {
    words: Vec<Word>,
    track: Vec<Vec<usize>>,
    labels: Vec<Label>,
    zero: usize,
}

impl LabeledChain {
    /// Top of the interval.
    pub fn top(&self) -> &Word {
        &self.words[0]
    }

    /// Bottom of the interval.
    pub fn bottom(&self) -> &Word {
        self.words.last().expect("chains are non-empty")
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Number of cover steps.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The embedding of `v_i` in `w` determined by the first `i` steps.
    pub fn embedding(&self, i: usize) -> Embedding {
        Embedding::from_parts(self.track[i].clone(), self.top().clone(), self.zero)
    }

    pub fn final_embedding(&self) -> Embedding {
        self.embedding(self.len())
    }

    /// `v_j` (for `0 < j < n`) is a 1-descent when its two labels have
    /// decreasing positions.
    pub fn is_one_descent(&self, j: usize) -> bool {
        j > 0 && j < self.len() && self.labels[j - 1].position > self.labels[j].position
    }

    pub fn is_ascent(&self, j: usize) -> bool {
        j > 0 && j < self.len() && self.labels[j - 1].position < self.labels[j].position
    }

    /// Label sequence is strictly decreasing.
    pub fn is_lex_decreasing(&self) -> bool {
        self.labels.windows(2).all(|p| p[0] > p[1])
    }

    pub fn display<'a>(&'a self, p: &'a FinitePoset) -> ChainDisplay<'a> {
        ChainDisplay { chain: self, p }
    }

    pub fn display_labels(&self, p0: &AugmentedPoset) -> String {
        let parts: Vec<String> = self
            .labels
            .iter()
            .map(|l| l.display(p0).to_string())
            .collect();
        format!("({})", parts.join(","))
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a LabeledChain,
    p: &'a FinitePoset,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.chain.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{}", v.display(self.p))?;
        }
        Ok(())
    }
}

/// Labels a maximal chain given top to bottom. Every step must be a cover
/// of `P*`; zeroed letters use the first index of their run.
pub fn label_chain(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    words: &[Word],
) -> Result<LabeledChain> {
    let p = p0.base();
    let top = words
        .first()
        .ok_or_else(|| Error::input("a chain needs at least one word"))?;
    for v in words {
        v.check(p)?;
    }
    let zero = p0.zero();
    let mut eta = top.letters().to_vec();
    let mut track = vec![eta.clone()];
    let mut labels = Vec::with_capacity(words.len() - 1);
    for pair in words.windows(2) {
        let (local, x) =
            single_step(p0, pair[0].letters(), pair[1].letters()).ok_or_else(|| {
                Error::domain(format!(
                    "{} is not covered by {}",
                    pair[1].display(p),
                    pair[0].display(p)
                ))
            })?;
        let j = eta
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != zero)
            .nth(local)
            .map(|(j, _)| j)
            .expect("local position lies inside the word");
        eta[j] = x;
        debug_assert!(eta
            .iter()
            .copied()
            .filter(|&e| e != zero)
            .eq(pair[1].letters().iter().copied()));
        labels.push(Label {
            position: j + 1,
            weight: labeling.label0(p0, x),
            letter: x,
        });
        track.push(eta.clone());
    }
    Ok(LabeledChain {
        words: words.to_vec(),
        track,
        labels,
        zero,
    })
}

/// Poset lexicographic order: compare label sequences.
pub fn plo_compare(c1: &LabeledChain, c2: &LabeledChain) -> Result<Ordering> {
    if c1.top() != c2.top() || c1.bottom() != c2.bottom() {
        return Err(Error::domain("chains span different intervals"));
    }
    Ok(c1.labels.cmp(&c2.labels))
}

/// Applies `(position, letter)` moves (1-based positions, `P_0` letters)
/// to the embedding track starting at `w`, then relabels the resulting
/// chain canonically. The canonical labels may come out lexicographically
/// smaller than the moves supplied.
pub fn chain_specified_by(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    w: &Word,
    moves: &[(usize, usize)],
) -> Result<LabeledChain> {
    w.check(p0.base())?;
    let zero = p0.zero();
    let mut eta = w.letters().to_vec();
    let mut words = vec![w.clone()];
    for (step, &(pos, x)) in moves.iter().enumerate() {
        let bad = || Error::domain(format!("move {} (<{pos},{x}>) does not apply", step + 1));
        if pos == 0 || pos > eta.len() || x >= p0.len() {
            return Err(bad());
        }
        let cur = eta[pos - 1];
        if cur == zero || !p0.poset().is_cover(x, cur) {
            return Err(bad());
        }
        eta[pos - 1] = x;
        words.push(Word(eta.iter().copied().filter(|&e| e != zero).collect()));
    }
    label_chain(p0, labeling, &words)
}
