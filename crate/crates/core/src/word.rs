//! Words over a poset, generalized subword order and embeddings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{AugmentedPoset, FinitePoset};

/// A finite word over the elements of a base poset (never the bottom of
/// `P_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

/// Text used for the empty word.
pub const EMPTY_WORD: &str = "∅";

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `x` repeated `count` times.
    pub fn repeat(x: usize, count: usize) -> Self {
        Word(vec![x; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Parses word text. Single-character element names may be written
    /// back to back (`"333"`); otherwise letters are comma separated
    /// (`"10,2,3"`). The empty word is `""` or `"∅"`.
    pub fn parse(p: &FinitePoset, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_WORD {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| {
            let name = name.trim();
            p.id_of(name)
                .ok_or_else(|| Error::input(format!("{name:?} is not an element of the poset")))
        };
        let letters = if text.contains(',') {
            text.split(',').map(lookup).collect::<Result<Vec<_>>>()?
        } else if let Some(x) = p.id_of(text) {
            vec![x]
        } else if p.has_single_char_names() {
            text.chars()
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            return Err(Error::input(format!(
                "cannot split {text:?} into letters; separate multi-character names with commas"
            )));
        };
        Ok(Word(letters))
    }

    pub fn check(&self, p: &FinitePoset) -> Result<()> {
        match self.0.iter().find(|&&x| x >= p.len()) {
            Some(x) => Err(Error::input(format!(
                "letter id {x} is not an element of the poset"
            ))),
            None => Ok(()),
        }
    }

    /// Renders the word with the poset's element names.
    pub fn display<'a>(&'a self, p: &'a FinitePoset) -> WordDisplay<'a> {
        WordDisplay {
            letters: &self.0,
            names: p.names(),
            zero: None,
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// `Display` adapter for words and embeddings.
pub struct WordDisplay<'a> {
    letters: &'a [usize],
    names: &'a [String],
    zero: Option<usize>,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str(EMPTY_WORD);
        }
        let compact = self.names.iter().all(|n| n.chars().count() == 1);
        for (i, &x) in self.letters.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(",")?;
            }
            if Some(x) == self.zero {
                f.write_str("0")?;
            } else {
                f.write_str(&self.names[x])?;
            }
        }
        Ok(())
    }
}

/// Generalized subword order: `u <= w` iff some length-`|u|` subword of `w`
/// dominates `u` letterwise.
///
/// Greedy leftmost matching: each letter of `u` takes the first remaining
/// position of `w` that dominates it.
pub fn is_leq(p: &FinitePoset, u: &[usize], w: &[usize]) -> bool {
    if u.len() > w.len() {
        return false;
    }
    let mut next = 0;
    for &x in w {
        if next == u.len() {
            break;
        }
        if p.le(u[next], x) {
            next += 1;
        }
    }
    next == u.len()
}

/// Checked variant of [`is_leq`] for word values.
pub fn is_leq_words(p: &FinitePoset, u: &Word, w: &Word) -> Result<bool> {
    u.check(p)?;
    w.check(p)?;
    Ok(is_leq(p, u.letters(), w.letters()))
}

/// An embedding of `u` in `w`: a word `eta` over `P_0` of length `|w|`
/// whose nonzero letters spell `u`, with `eta(j) <= w(j)` in `P_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    eta: Vec<usize>,
    host: Word,
    zero: usize,
}

impl Embedding {
    /// Validates `eta` against the host word.
    pub fn new(p0: &AugmentedPoset, eta: Vec<usize>, host: &Word) -> Result<Self> {
        host.check(p0.base())?;
        if eta.len() != host.len() {
            return Err(Error::domain(format!(
                "embedding has length {} but the host word has length {}",
                eta.len(),
                host.len()
            )));
        }
        for (j, (&e, &x)) in eta.iter().zip(host.letters()).enumerate() {
            if e >= p0.len() {
                return Err(Error::input(format!("unknown letter id {e} in embedding")));
            }
            if !p0.le(e, x) {
                return Err(Error::domain(format!(
                    "embedding letter {} is not below host letter {} at position {}",
                    p0.name(e),
                    p0.name(x),
                    j + 1
                )));
            }
        }
        Ok(Embedding {
            eta,
            host: host.clone(),
            zero: p0.zero(),
        })
    }

    pub(crate) fn from_parts(eta: Vec<usize>, host: Word, zero: usize) -> Self {
        Embedding { eta, host, zero }
    }

    /// Parses text like `"0110302"`; `0` marks a zeroed-out position.
    pub fn parse(p0: &AugmentedPoset, text: &str, host: &Word) -> Result<Self> {
        let eta = Word::parse(p0.poset(), text)?;
        Self::new(p0, eta.0, host)
    }

    /// The embedding with no zeros: `w` inside itself.
    pub fn identity(p0: &AugmentedPoset, w: &Word) -> Self {
        Embedding {
            eta: w.0.clone(),
            host: w.clone(),
            zero: p0.zero(),
        }
    }

    pub fn eta(&self) -> &[usize] {
        &self.eta
    }

    pub fn host(&self) -> &Word {
        &self.host
    }

    pub fn len(&self) -> usize {
        self.eta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta.is_empty()
    }

    pub fn is_zero_at(&self, j: usize) -> bool {
        self.eta[j] == self.zero
    }

    /// Zero-based positions that are zeroed out.
    pub fn zero_positions(&self) -> Vec<usize> {
        (0..self.eta.len())
            .filter(|&j| self.is_zero_at(j))
            .collect()
    }

    /// The embedded word: the nonzero letters in order.
    pub fn word(&self) -> Word {
        Word(
            self.eta
                .iter()
                .copied()
                .filter(|&x| x != self.zero)
                .collect(),
        )
    }

    /// Positions of `w` carrying the letters of `u`, in order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.eta.len())
            .filter(|&j| !self.is_zero_at(j))
            .collect()
    }

    pub fn display<'a>(&'a self, p0: &'a AugmentedPoset) -> WordDisplay<'a> {
        WordDisplay {
            letters: &self.eta,
            names: p0.poset().names(),
            zero: Some(self.zero),
        }
    }
}

/// All embeddings of `u` in `w`, ordered lexicographically by the tuple of
/// positions carrying the letters of `u`. Empty iff `u` is not below `w`.
pub fn embeddings(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<Vec<Embedding>> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    let mut out = Vec::new();
    let mut eta = vec![p0.zero(); w.len()];
    fn go(
        p: &FinitePoset,
        u: &[usize],
        w: &[usize],
        ui: usize,
        from: usize,
        eta: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if ui == u.len() {
            out.push(eta.clone());
            return;
        }
        let remaining = u.len() - ui;
        for j in from..=(w.len() - remaining) {
            if p.le(u[ui], w[j]) {
                let saved = eta[j];
                eta[j] = u[ui];
                go(p, u, w, ui + 1, j + 1, eta, out);
                eta[j] = saved;
            }
        }
    }
    if u.len() <= w.len() {
        let mut raw = Vec::new();
        go(p, u.letters(), w.letters(), 0, 0, &mut eta, &mut raw);
        out = raw
            .into_iter()
            .map(|eta| Embedding::from_parts(eta, w.clone(), p0.zero()))
            .collect();
    }
    Ok(out)
}

/// Every word over `p` of length at most `max_len`, shortest first.
pub fn all_words(p: &FinitePoset, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|v: &Vec<usize>| {
                (0..p.len()).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Word));
    }
    out
}

/// Rightmost embedding positions of `u` in `w` by greedy right-to-left
/// matching, or `None` when `u` is not below `w`.
pub(crate) fn rightmost_positions(p: &FinitePoset, u: &[usize], w: &[usize]) -> Option<Vec<usize>> {
    let mut pos = vec![0usize; u.len()];
    let mut j = w.len();
    for i in (0..u.len()).rev() {
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            if p.le(u[i], w[j]) {
                pos[i] = j;
                break;
            }
        }
    }
    Some(pos)
}

/// The rightmost embedding: every letter of `u` sits as far right as any
/// embedding allows.
pub fn rightmost_embedding(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<Embedding> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    let pos = rightmost_positions(p, u.letters(), w.letters())
        .ok_or_else(|| Error::domain(format!("{} is not below {}", u.display(p), w.display(p))))?;
    let mut eta = vec![p0.zero(); w.len()];
    for (i, &j) in pos.iter().enumerate() {
        eta[j] = u.0[i];
    }
    Ok(Embedding::from_parts(eta, w.clone(), p0.zero()))
}

/// A maximal block of equal consecutive letters, `start..=end` zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub letter: usize,
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Splits a word into its runs, left to right.
pub fn runs(w: &[usize]) -> Vec<Run> {
    let mut out: Vec<Run> = Vec::new();
    for (j, &x) in w.iter().enumerate() {
        match out.last_mut() {
            Some(run) if run.letter == x => run.end = j,
            _ => out.push(Run {
                letter: x,
                start: j,
                end: j,
            }),
        }
    }
    out
}

/// If `lo` arises from `hi` by one elementary reduction (one letter moved
/// down a cover of `P_0`, or a minimal letter deleted), returns the
/// zero-based position in `hi` and the new letter (the bottom for a
/// deletion). Deletions report the first position of the run, which is the
/// position a rightmost embedding zeroes out.
pub fn single_step(p0: &AugmentedPoset, hi: &[usize], lo: &[usize]) -> Option<(usize, usize)> {
    let p = p0.base();
    if hi.len() == lo.len() {
        let mut diff = hi.iter().zip(lo).enumerate().filter(|(_, (a, b))| a != b);
        let (j, (&a, &b)) = diff.next()?;
        if diff.next().is_some() || !p.is_cover(b, a) {
            return None;
        }
        Some((j, b))
    } else if hi.len() == lo.len() + 1 {
        // Deleting any position of a run gives the same word; take the
        // first differing index and back up to the start of its run.
        let k = hi
            .iter()
            .zip(lo)
            .position(|(a, b)| a != b)
            .unwrap_or(lo.len());
        if hi[k + 1..] != lo[k..] || !p.is_minimal(hi[k]) {
            return None;
        }
        let mut j = k;
        while j > 0 && hi[j - 1] == hi[k] {
            j -= 1;
        }
        Some((j, p0.zero()))
    } else {
        None
    }
}

/// All words obtained from `w` by one elementary reduction, each with its
/// position and new letter, deduplicated.
pub fn single_step_reductions(p0: &AugmentedPoset, w: &[usize]) -> Vec<(Vec<usize>, usize, usize)> {
    let p = p0.base();
    let mut out = Vec::new();
    for (j, &x) in w.iter().enumerate() {
        for &y in p.lower_covers(x) {
            let mut v = w.to_vec();
            v[j] = y;
            out.push((v, j, y));
        }
        if p.is_minimal(x) && (j == 0 || w[j - 1] != x) {
            let mut v = w.to_vec();
            v.remove(j);
            out.push((v, j, p0.zero()));
        }
    }
    out
}
