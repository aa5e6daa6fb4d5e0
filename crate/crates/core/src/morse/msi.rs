use serde::Serialize;

use super::{label_chain, LabeledChain};
use crate::error::{Error, Result};
use crate::interval::{build_interval, DownSets, IntervalDiagram};
use crate::limits::Limits;
use crate::poset::{AugmentedPoset, NaturalLabeling};
use crate::word::{is_leq, single_step, Word};

/// Index intervals `(first, last)`, inclusive, into a chain's elements;
/// the open chain is `1..=n-1`.
pub type IndexInterval = (usize, usize);

/// MSIs of a chain, the derived `J` intervals and the critical verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsiDecomposition {
    pub chain: LabeledChain,
    pub msis: Vec<IndexInterval>,
    pub j_intervals: Vec<IndexInterval>,
    pub is_critical: bool,
    /// `|J| - 1`; a single cover step gives `-1`.
    pub critical_dimension: i64,
}

impl MsiDecomposition {
    pub fn new(chain: LabeledChain, msis: Vec<IndexInterval>) -> Self {
        let j_intervals = j_construction(&msis);
        let open = chain.len().saturating_sub(1);
        let covered: usize = j_intervals.iter().map(|&(a, b)| b - a + 1).sum();
        let is_critical = covered == open;
        let critical_dimension = j_intervals.len() as i64 - 1;
        MsiDecomposition {
            chain,
            msis,
            j_intervals,
            is_critical,
            critical_dimension,
        }
    }

    /// `(-1)^d`.
    pub fn sign(&self) -> i64 {
        if self.critical_dimension.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn to_json_value(&self, p0: &AugmentedPoset) -> DecompositionJson {
        let p = p0.base();
        DecompositionJson {
            words: self
                .chain
                .words()
                .iter()
                .map(|v| v.display(p).to_string())
                .collect(),
            labels: self
                .chain
                .labels()
                .iter()
                .map(|l| l.display(p0).to_string())
                .collect(),
            embedding: self.chain.final_embedding().display(p0).to_string(),
            msis: self.msis.iter().map(|&(a, b)| [a, b]).collect(),
            j_intervals: self.j_intervals.iter().map(|&(a, b)| [a, b]).collect(),
            critical: self.is_critical,
            dimension: self.critical_dimension,
            sign: self.sign(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionJson {
    pub words: Vec<String>,
    pub labels: Vec<String>,
    pub embedding: String,
    pub msis: Vec<[usize; 2]>,
    pub j_intervals: Vec<[usize; 2]>,
    pub critical: bool,
    pub dimension: i64,
    pub sign: i64,
}

fn strictly_contains(a: IndexInterval, b: IndexInterval) -> bool {
    a != b && a.0 <= b.0 && b.1 <= a.1
}

/// Containment-minimal members, deduplicated and sorted by left end.
pub(crate) fn minimal_intervals(mut v: Vec<IndexInterval>) -> Vec<IndexInterval> {
    v.sort_unstable();
    v.dedup();
    let keep: Vec<IndexInterval> = v
        .iter()
        .copied()
        .filter(|&a| !v.iter().any(|&b| strictly_contains(a, b)))
        .collect();
    keep
}

/// Turns MSIs into disjoint intervals: take the leftmost, subtract it from
/// the rest, drop empty or non-minimal remnants, repeat.
pub fn j_construction(msis: &[IndexInterval]) -> Vec<IndexInterval> {
    let mut rest: Vec<IndexInterval> = msis.to_vec();
    rest.sort_unstable();
    for pair in rest.windows(2) {
        assert!(pair[0].0 != pair[1].0, "MSIs share a left endpoint");
    }
    let mut out = Vec::new();
    while !rest.is_empty() {
        let snapshot = rest.clone();
        rest.retain(|&a| !snapshot.iter().any(|&b| strictly_contains(a, b)));
        let j = rest.remove(0);
        out.push(j);
        rest = rest
            .into_iter()
            .filter_map(|(a, b)| {
                // Survivors never strictly contain j, so the difference
                // is an interval.
                if b < j.0 || a > j.1 {
                    Some((a, b))
                } else if a < j.0 {
                    Some((a, j.0 - 1))
                } else if b > j.1 {
                    Some((j.1 + 1, b))
                } else {
                    None
                }
            })
            .collect();
    }
    out
}

/// Minimal skipped intervals of a chain of length `n` from the predicate
/// `earlier(i, s)`: "some sibling of `y_{i+1}` under `y_i` with a smaller
/// label lies above `y_s`". `[t+1, s-1]` is skipped exactly when the
/// segment from `y_t` to `y_s` is not the lexicographically first chain
/// between them, so each `s` contributes one minimal candidate.
pub(crate) fn msis_from_predicate(
    n: usize,
    earlier: impl Fn(usize, usize) -> bool,
) -> Vec<IndexInterval> {
    let mut cands = Vec::new();
    for s in 2..=n {
        if let Some(i) = (0..=s - 2).rev().find(|&i| earlier(i, s)) {
            cands.push((i + 1, s - 1));
        }
    }
    minimal_intervals(cands)
}

pub(crate) type Key = (usize, u64);

/// An interval diagram whose children are sorted by chain label.
pub(crate) struct KeyedInterval {
    pub diagram: IntervalDiagram,
    kids: Vec<Vec<(Key, usize)>>,
    below: Option<DownSets>,
}

/// Above this many nodes the order is tested on words instead of a bit
/// matrix.
const BITSET_NODES: usize = 30_000;

impl KeyedInterval {
    pub fn new(
        p0: &AugmentedPoset,
        labeling: &NaturalLabeling,
        u: &Word,
        w: &Word,
        limits: &Limits,
    ) -> Result<Self> {
        let diagram = build_interval(p0, u, w, limits)?;
        let kids = (0..diagram.len())
            .map(|i| {
                let hi = diagram.node(i).letters();
                let mut v: Vec<(Key, usize)> = diagram
                    .children(i)
                    .iter()
                    .map(|&c| {
                        let (pos, x) = single_step(p0, hi, diagram.node(c).letters())
                            .expect("edges are covers");
                        ((pos, labeling.label0(p0, x)), c)
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        let below = (diagram.len() <= BITSET_NODES).then(|| diagram.down_sets());
        Ok(KeyedInterval {
            diagram,
            kids,
            below,
        })
    }

    fn le(&self, p0: &AugmentedPoset, a: usize, b: usize) -> bool {
        match &self.below {
            Some(d) => d.contains(b, a),
            None => is_leq(
                p0.base(),
                self.diagram.node(a).letters(),
                self.diagram.node(b).letters(),
            ),
        }
    }

    /// Visits every maximal chain (as node indices, top first) in
    /// lexicographic label order. Fails past `cap` chains.
    pub fn for_each_chain(
        &self,
        cap: usize,
        mut f: impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<usize> {
        let mut count = 0usize;
        let mut path = vec![self.diagram.top_index()];
        let mut stack: Vec<usize> = vec![0];
        while let Some(&next) = stack.last() {
            let cur = *path.last().expect("path tracks the stack");
            let kids = &self.kids[cur];
            if kids.is_empty() {
                count += 1;
                if count > cap {
                    return Err(Error::resource(format!("more than {cap} maximal chains")));
                }
                f(&path)?;
            }
            if next < kids.len() {
                *stack.last_mut().expect("non-empty") += 1;
                path.push(kids[next].1);
                stack.push(0);
            } else {
                stack.pop();
                path.pop();
            }
        }
        Ok(count)
    }

    /// MSIs of a chain by the sibling test.
    pub fn fast_msis(&self, p0: &AugmentedPoset, path: &[usize]) -> Vec<IndexInterval> {
        let key_of = |i: usize| {
            self.kids[path[i]]
                .iter()
                .find(|&&(_, c)| c == path[i + 1])
                .expect("path follows edges")
                .0
        };
        let keys: Vec<Key> = (0..path.len() - 1).map(key_of).collect();
        msis_from_predicate(path.len() - 1, |i, s| {
            self.kids[path[i]]
                .iter()
                .take_while(|&&(k, _)| k < keys[i])
                .any(|&(_, z)| self.le(p0, path[s], z))
        })
    }

    pub fn words(&self, path: &[usize]) -> Vec<Word> {
        path.iter().map(|&i| self.diagram.node(i).clone()).collect()
    }
}

/// Every maximal chain of an interval, labeled and sorted in lexicographic
/// order, for brute-force skipped-interval searches.
pub struct ChainContext {
    diagram: IntervalDiagram,
    chains: Vec<LabeledChain>,
    paths: Vec<Vec<usize>>,
}

impl ChainContext {
    pub fn new(
        p0: &AugmentedPoset,
        labeling: &NaturalLabeling,
        u: &Word,
        w: &Word,
        limits: &Limits,
    ) -> Result<Self> {
        let keyed = KeyedInterval::new(p0, labeling, u, w, limits)?;
        let mut chains = Vec::new();
        let mut paths = Vec::new();
        keyed.for_each_chain(limits.max_chains, |path| {
            chains.push(label_chain(p0, labeling, &keyed.words(path))?);
            paths.push(path.to_vec());
            Ok(())
        })?;
        Ok(ChainContext {
            diagram: keyed.diagram,
            chains,
            paths,
        })
    }

    pub fn diagram(&self) -> &IntervalDiagram {
        &self.diagram
    }

    pub fn chains(&self) -> &[LabeledChain] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Position of `c` in lexicographic order.
    pub fn position(&self, c: &LabeledChain) -> Result<usize> {
        self.chains
            .binary_search_by(|probe| probe.labels().cmp(c.labels()))
            .ok()
            .filter(|&i| self.chains[i] == *c)
            .ok_or_else(|| Error::domain("chain does not belong to this interval"))
    }

    /// For every earlier chain `B`, the smallest index interval containing
    /// the elements of `c` missing from `B`.
    fn hulls(&self, c: &LabeledChain) -> Result<Vec<IndexInterval>> {
        let at = self.position(c)?;
        let path = &self.paths[at];
        let mut mark = vec![false; self.diagram.len()];
        let mut out = Vec::new();
        for b in &self.paths[..at] {
            for &x in b {
                mark[x] = true;
            }
            let missing: Vec<usize> = (1..path.len().saturating_sub(1))
                .filter(|&k| !mark[path[k]])
                .collect();
            for &x in b {
                mark[x] = false;
            }
            let (&lo, &hi) = (
                missing.first().expect("distinct maximal chains differ"),
                missing.last().unwrap(),
            );
            out.push((lo, hi));
        }
        Ok(out)
    }
}

/// All skipped intervals of `c`: index intervals `I` of the open chain with
/// `c - I` contained in some lexicographically earlier chain.
pub fn skipped_intervals(c: &LabeledChain, ctx: &ChainContext) -> Result<Vec<IndexInterval>> {
    let n = c.len();
    let hulls = minimal_intervals(ctx.hulls(c)?);
    let mut out = Vec::new();
    for a in 1..n {
        for b in a..n {
            if hulls.iter().any(|&(lo, hi)| a <= lo && hi <= b) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Containment-minimal skipped intervals of `c`, by brute force.
pub fn msis(c: &LabeledChain, ctx: &ChainContext) -> Result<Vec<IndexInterval>> {
    Ok(minimal_intervals(ctx.hulls(c)?))
}

/// Brute-force MSIs followed by the J construction.
pub fn j_intervals(c: &LabeledChain, ctx: &ChainContext) -> Result<MsiDecomposition> {
    Ok(MsiDecomposition::new(c.clone(), msis(c, ctx)?))
}

/// Critical chains of the context's interval, by brute force.
pub fn critical_chains_brute(ctx: &ChainContext) -> Result<Vec<MsiDecomposition>> {
    let mut out = Vec::new();
    for c in ctx.chains() {
        let d = j_intervals(c, ctx)?;
        if d.is_critical {
            out.push(d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{fig3, lambda};

    fn ctx(p: crate::poset::FinitePoset, u: &str, w: &str) -> (AugmentedPoset, ChainContext) {
        let p0 = AugmentedPoset::new(p).unwrap();
        let l = p0.base().natural_labeling();
        let u = Word::parse(p0.base(), u).unwrap();
        let w = Word::parse(p0.base(), w).unwrap();
        let c = ChainContext::new(&p0, &l, &u, &w, &Limits::default()).unwrap();
        (p0, c)
    }

    fn find<'a>(p0: &AugmentedPoset, ctx: &'a ChainContext, words: &str) -> &'a LabeledChain {
        ctx.chains()
            .iter()
            .find(|c| c.display(p0.base()).to_string() == words)
            .unwrap_or_else(|| panic!("no chain {words}"))
    }

    #[test]
    fn j_construction_cases() {
        assert_eq!(j_construction(&[]), vec![]);
        assert_eq!(
            j_construction(&[(1, 1), (2, 2), (3, 3)]),
            vec![(1, 1), (2, 2), (3, 3)]
        );
        assert_eq!(j_construction(&[(1, 2), (2, 3)]), vec![(1, 2), (3, 3)]);
        // (3,5) strictly contains the remnant (3,4) and is dropped.
        assert_eq!(
            j_construction(&[(1, 2), (2, 4), (3, 5)]),
            vec![(1, 2), (3, 4)]
        );
        // (2,4) and (4,5): after removing (1,3) they are (4,4) and (4,5); the
        // latter is no longer minimal.
        assert_eq!(
            j_construction(&[(1, 3), (2, 4), (4, 5)]),
            vec![(1, 3), (4, 4)]
        );
    }

    #[test]
    fn lambda_chain_d_is_critical() {
        let (p0, ctx) = ctx(lambda(), "11", "333");
        let d = find(&p0, &ctx, "333 > 332 > 33 > 31 > 11");
        let si = skipped_intervals(d, &ctx).unwrap();
        assert!(si.contains(&(1, 1)));
        assert!(si.contains(&(1, 3)));
        assert_eq!(msis(d, &ctx).unwrap(), vec![(1, 1), (2, 2), (3, 3)]);
        let dec = j_intervals(d, &ctx).unwrap();
        assert!(dec.is_critical);
        assert_eq!(dec.critical_dimension, 2);
        assert_eq!(dec.sign(), 1);

        let first = &ctx.chains()[0];
        assert!(skipped_intervals(first, &ctx).unwrap().is_empty());
        assert!(!j_intervals(first, &ctx).unwrap().is_critical);
    }

    #[test]
    fn fig3_whole_open_chain_msi() {
        let (p0, ctx) = ctx(fig3(), "2", "29");
        let c = find(&p0, &ctx, "29 > 25 > 21 > 2");
        assert_eq!(msis(c, &ctx).unwrap(), vec![(1, 2)]);
        let dec = j_intervals(c, &ctx).unwrap();
        assert!(dec.is_critical);
        assert_eq!(dec.critical_dimension, 0);
    }

    #[test]
    fn fast_matches_brute_force_on_examples() {
        for (p, u, w) in [
            (lambda(), "11", "333"),
            (fig3(), "2", "29"),
            (lambda(), "", "33"),
        ] {
            let p0 = AugmentedPoset::new(p).unwrap();
            let l = p0.base().natural_labeling();
            let u = Word::parse(p0.base(), u).unwrap();
            let w = Word::parse(p0.base(), w).unwrap();
            let ctx = ChainContext::new(&p0, &l, &u, &w, &Limits::default()).unwrap();
            let keyed = KeyedInterval::new(&p0, &l, &u, &w, &Limits::default()).unwrap();
            let mut i = 0;
            keyed
                .for_each_chain(usize::MAX, |path| {
                    assert_eq!(
                        keyed.fast_msis(&p0, path),
                        msis(&ctx.chains()[i], &ctx).unwrap()
                    );
                    i += 1;
                    Ok(())
                })
                .unwrap();
            assert_eq!(i, ctx.len());
        }
    }

    #[test]
    fn chain_cap() {
        let p0 = AugmentedPoset::new(lambda()).unwrap();
        let l = p0.base().natural_labeling();
        let w = Word::parse(p0.base(), "333").unwrap();
        let lim = Limits {
            max_chains: 5,
            ..Limits::default()
        };
        assert!(matches!(
            ChainContext::new(&p0, &l, &Word::empty(), &w, &lim),
            Err(Error::Resource(_))
        ));
    }
}
