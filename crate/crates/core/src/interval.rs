//! Explicit Hasse diagrams of intervals `[u, w]` of `P*`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::{AugmentedPoset, FinitePoset};
use crate::word::{is_leq, single_step_reductions, Word};

/// Bit matrix of the order relation on an interval's nodes.
#[derive(Debug, Clone)]
pub struct DownSets {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl DownSets {
    /// Whether node `j` lies below (or equals) node `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n);
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    /// Size of the down-set of `i`.
    pub fn count(&self, i: usize) -> usize {
        self.bits[i * self.stride..(i + 1) * self.stride]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }
}

/// The interval `[u, w]` with its nodes, cover edges and ranks.
///
/// Nodes are ordered by length, then lexicographically by natural label, so
/// every node appears after all nodes below it. `edges` holds `(upper,
/// lower)` index pairs, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDiagram {
    bottom: Word,
    top: Word,
    nodes: Vec<Word>,
    edges: Vec<(usize, usize)>,
    ranks: Vec<usize>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    index: HashMap<Word, usize>,
}

impl IntervalDiagram {
    fn assemble(bottom: Word, top: Word, nodes: Vec<Word>, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let n = nodes.len();
        let mut children = vec![Vec::new(); n];
        let mut parents = vec![Vec::new(); n];
        for &(hi, lo) in &edges {
            children[hi].push(lo);
            parents[lo].push(hi);
        }
        let mut ranks = vec![0usize; n];
        for i in 0..n {
            ranks[i] = children[i].iter().map(|&c| ranks[c] + 1).max().unwrap_or(0);
        }
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        IntervalDiagram {
            bottom,
            top,
            nodes,
            edges,
            ranks,
            children,
            parents,
            index,
        }
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn nodes(&self) -> &[Word] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Word {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cover pairs `(upper, lower)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Longest-path rank of each node above the bottom.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn bottom_index(&self) -> usize {
        self.index[&self.bottom]
    }

    pub fn top_index(&self) -> usize {
        self.index[&self.top]
    }

    /// Nodes covered by node `i`.
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Nodes covering node `i`.
    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    /// Length of the longest chain, i.e. the rank of the top.
    pub fn height(&self) -> usize {
        self.ranks[self.top_index()]
    }

    /// Reflexive down-sets of every node, found by walking cover edges
    /// downward.
    pub fn down_sets(&self) -> DownSets {
        let n = self.len();
        let stride = n.div_ceil(64);
        let mut bits = vec![0u64; n * stride];
        for i in 0..n {
            bits[i * stride + i / 64] |= 1 << (i % 64);
            for &c in &self.children[i] {
                // Children precede parents in node order, so their rows are final.
                let (head, tail) = bits.split_at_mut(i * stride);
                for (dst, src) in tail[..stride]
                    .iter_mut()
                    .zip(&head[c * stride..(c + 1) * stride])
                {
                    *dst |= *src;
                }
            }
        }
        DownSets { n, stride, bits }
    }

    /// Every maximal chain, top to bottom, as node indices. Fails once more
    /// than `max_chains` chains are found.
    pub fn maximal_chains(&self, max_chains: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut path = vec![self.top_index()];
        self.walk(&mut path, &mut out, max_chains)?;
        Ok(out)
    }

    fn walk(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        let cur = *path.last().expect("path starts at the top");
        if self.children[cur].is_empty() {
            if out.len() >= cap {
                return Err(Error::resource(format!("more than {cap} maximal chains")));
            }
            out.push(path.clone());
            return Ok(());
        }
        for &c in &self.children[cur] {
            path.push(c);
            self.walk(path, out, cap)?;
            path.pop();
        }
        Ok(())
    }

    /// Graphviz rendering; edges point from a node to the nodes it covers.
    pub fn to_dot(&self, p: &FinitePoset) -> String {
        let mut s = String::from("digraph interval {\n");
        let _ = writeln!(
            s,
            "  label=\"[{}, {}]\";",
            self.bottom.display(p),
            self.top.display(p)
        );
        s.push_str("  node [shape=box];\n");
        for (i, w) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", w.display(p));
        }
        for &(hi, lo) in &self.edges {
            let _ = writeln!(s, "  n{hi} -> n{lo};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json_value(&self, p: &FinitePoset) -> DiagramJson {
        DiagramJson {
            bottom: self.bottom.display(p).to_string(),
            top: self.top.display(p).to_string(),
            nodes: self
                .nodes
                .iter()
                .map(|w| w.display(p).to_string())
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            ranks: self.ranks.clone(),
        }
    }

    pub fn to_json(&self, p: &FinitePoset) -> String {
        serde_json::to_string_pretty(&self.to_json_value(p)).expect("diagram serializes")
    }

    /// Reads a diagram back from its JSON export.
    pub fn from_json(p: &FinitePoset, text: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("bad diagram JSON: {e}")))?;
        let nodes = raw
            .nodes
            .iter()
            .map(|s| Word::parse(p, s))
            .collect::<Result<Vec<_>>>()?;
        if raw.edges.iter().flatten().any(|&i| i >= nodes.len()) {
            return Err(Error::input("diagram edge refers to a missing node"));
        }
        let bottom = Word::parse(p, &raw.bottom)?;
        let top = Word::parse(p, &raw.top)?;
        if !nodes.contains(&bottom) || !nodes.contains(&top) {
            return Err(Error::input("diagram must contain its bottom and top"));
        }
        let edges = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let d = Self::assemble(bottom, top, nodes, edges);
        if d.ranks != raw.ranks {
            return Err(Error::input("diagram ranks do not match its edges"));
        }
        Ok(d)
    }
}

/// Serialized form of an [`IntervalDiagram`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub bottom: String,
    pub top: String,
    pub nodes: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub ranks: Vec<usize>,
}

/// Sort key: length first, then natural labels letter by letter.
pub(crate) fn node_key(labels: &[u64], w: &Word) -> (usize, Vec<u64>) {
    (w.len(), w.letters().iter().map(|&x| labels[x]).collect())
}

/// Builds the interval `[u, w]`.
///
/// Nodes come from the down-set of `w` (one `P_0` choice per position,
/// zeros dropped) filtered to words above `u`. A child of `v` reached by a
/// single elementary reduction is a cover unless it lies below another such
/// child; this is the transitive reduction of the one-step relation, which
/// generates the order.
pub fn build_interval(
    p0: &AugmentedPoset,
    u: &Word,
    w: &Word,
    limits: &Limits,
) -> Result<IntervalDiagram> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    if w.len() > limits.max_word_len {
        return Err(Error::resource(format!(
            "top word has length {} but the cap is {}",
            w.len(),
            limits.max_word_len
        )));
    }
    if !is_leq(p, u.letters(), w.letters()) {
        return Err(Error::domain(format!(
            "{} is not below {}",
            u.display(p),
            w.display(p)
        )));
    }

    // Prefix sets, pruned to prefixes whose largest completion still
    // dominates u; distinct survivors have distinct largest completions,
    // so the node cap bounds every stage.
    let down: Vec<Vec<usize>> = w
        .letters()
        .iter()
        .map(|&x| (0..p.len()).filter(|&y| p.le(y, x)).collect())
        .collect();
    let mut prefixes: HashSet<Vec<usize>> = HashSet::from([Vec::new()]);
    for (j, choices) in down.iter().enumerate() {
        let rest = &w.letters()[j + 1..];
        let mut next = HashSet::with_capacity(prefixes.len() * (choices.len() + 1));
        let mut scratch = Vec::new();
        for v in &prefixes {
            for c in std::iter::once(None).chain(choices.iter().copied().map(Some)) {
                scratch.clear();
                scratch.extend_from_slice(v);
                scratch.extend(c);
                let keep_len = scratch.len();
                scratch.extend_from_slice(rest);
                if is_leq(p, u.letters(), &scratch) {
                    scratch.truncate(keep_len);
                    next.insert(scratch.clone());
                }
            }
        }
        if next.len() > limits.max_nodes {
            return Err(Error::resource(format!(
                "interval has more than {} nodes",
                limits.max_nodes
            )));
        }
        prefixes = next;
    }

    let labels = p.natural_labeling();
    let mut nodes: Vec<Word> = prefixes.into_iter().map(Word).collect();
    nodes.sort_by_cached_key(|v| node_key(labels.labels(), v));
    let index: HashMap<&Word, usize> = nodes.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let mut edges = Vec::new();
    for (i, v) in nodes.iter().enumerate() {
        let mut kids: Vec<usize> = single_step_reductions(p0, v.letters())
            .into_iter()
            .filter_map(|(z, _, _)| index.get(&Word(z)).copied())
            .collect();
        kids.sort_unstable();
        kids.dedup();
        for &z in &kids {
            let shadowed = kids
                .iter()
                .any(|&y| y != z && is_leq(p, nodes[z].letters(), nodes[y].letters()));
            if !shadowed {
                edges.push((i, z));
            }
        }
    }
    Ok(IntervalDiagram::assemble(
        u.clone(),
        w.clone(),
        nodes,
        edges,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{fig3, lambda};

    fn lam() -> AugmentedPoset {
        AugmentedPoset::new(lambda()).unwrap()
    }

    fn word(p0: &AugmentedPoset, s: &str) -> Word {
        Word::parse(p0.base(), s).unwrap()
    }

    /// Reference construction: every word up to |w| letters over P checked
    /// pairwise, reduced by brute force.
    fn brute_force(p0: &AugmentedPoset, u: &Word, w: &Word) -> (Vec<Word>, Vec<(Word, Word)>) {
        let p = p0.base();
        let mut all = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..w.len() {
            let mut next = Vec::new();
            for v in &layer {
                for x in 0..p.len() {
                    let mut z = v.0.clone();
                    z.push(x);
                    next.push(Word(z));
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let nodes: Vec<Word> = all
            .into_iter()
            .filter(|v| is_leq(p, u.letters(), v.letters()) && is_leq(p, v.letters(), w.letters()))
            .collect();
        let lt = |a: &Word, b: &Word| a != b && is_leq(p, a.letters(), b.letters());
        let mut covers = Vec::new();
        for a in &nodes {
            for b in &nodes {
                if lt(b, a) && !nodes.iter().any(|c| lt(b, c) && lt(c, a)) {
                    covers.push((a.clone(), b.clone()));
                }
            }
        }
        (nodes, covers)
    }

    #[test]
    fn lambda_11_333_matches_the_drawn_diagram() {
        let p0 = lam();
        let d =
            build_interval(&p0, &word(&p0, "11"), &word(&p0, "333"), &Limits::default()).unwrap();
        assert_eq!(d.len(), 24);
        assert_eq!(d.edges().len(), 60);
        assert_eq!(d.ranks()[d.top_index()], 4);
        assert_eq!(d.ranks()[d.bottom_index()], 0);
    }

    #[test]
    fn lambda_empty_to_33333_edge_count() {
        let p0 = lam();
        let d =
            build_interval(&p0, &Word::empty(), &word(&p0, "33333"), &Limits::default()).unwrap();
        assert_eq!(d.edges().len(), 1904);
        assert_eq!(d.len(), 364);
    }

    #[test]
    fn trivial_interval() {
        let p0 = lam();
        let w = word(&p0, "132");
        let d = build_interval(&p0, &w, &w, &Limits::default()).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.edges().is_empty());
    }

    #[test]
    fn matches_brute_force_reduction() {
        for p in [lambda(), fig3()] {
            let p0 = AugmentedPoset::new(p).unwrap();
            for (u, w) in [
                ("", "99"),
                ("2", "29"),
                ("1", "67"),
                ("", "333"),
                ("1", "33"),
            ] {
                let (Ok(u), Ok(w)) = (Word::parse(p0.base(), u), Word::parse(p0.base(), w)) else {
                    continue;
                };
                if !is_leq(p0.base(), u.letters(), w.letters()) {
                    continue;
                }
                let d = build_interval(&p0, &u, &w, &Limits::default()).unwrap();
                let (nodes, covers) = brute_force(&p0, &u, &w);
                let mut got: Vec<Word> = d.nodes().to_vec();
                got.sort();
                let mut want = nodes.clone();
                want.sort();
                assert_eq!(got, want);
                let mut got_edges: Vec<(Word, Word)> = d
                    .edges()
                    .iter()
                    .map(|&(a, b)| (d.node(a).clone(), d.node(b).clone()))
                    .collect();
                got_edges.sort();
                let mut want_edges = covers.clone();
                want_edges.sort();
                assert_eq!(got_edges, want_edges);
            }
        }
    }

    #[test]
    fn errors() {
        let p0 = lam();
        let res = build_interval(&p0, &word(&p0, "3"), &word(&p0, "11"), &Limits::default());
        assert!(matches!(res, Err(Error::Domain(_))));
        let tight = Limits {
            max_nodes: 10,
            ..Limits::default()
        };
        let res = build_interval(&p0, &Word::empty(), &word(&p0, "333"), &tight);
        assert!(matches!(res, Err(Error::Resource(_))));
        let short = Limits {
            max_word_len: 2,
            ..Limits::default()
        };
        let res = build_interval(&p0, &Word::empty(), &word(&p0, "333"), &short);
        assert!(matches!(res, Err(Error::Resource(_))));
    }

    #[test]
    fn exports() {
        let p0 = lam();
        let p = p0.base();
        let w = word(&p0, "3");
        let single = build_interval(&p0, &w, &w, &Limits::default()).unwrap();
        let dot = single.to_dot(p);
        assert_eq!(dot.matches("[label=").count(), 1);
        assert!(!dot.contains("->"));

        let d =
            build_interval(&p0, &word(&p0, "11"), &word(&p0, "333"), &Limits::default()).unwrap();
        let dot = d.to_dot(p);
        assert_eq!(dot.matches(" -> ").count(), 60);
        let back = IntervalDiagram::from_json(p, &d.to_json(p)).unwrap();
        assert_eq!(back, d);
        let e = build_interval(&p0, &Word::empty(), &word(&p0, "3"), &Limits::default()).unwrap();
        assert_eq!(IntervalDiagram::from_json(p, &e.to_json(p)).unwrap(), e);
    }

    #[test]
    fn down_sets_and_chains() {
        let p0 = lam();
        let d =
            build_interval(&p0, &word(&p0, "11"), &word(&p0, "333"), &Limits::default()).unwrap();
        let below = d.down_sets();
        let top = d.top_index();
        assert_eq!(below.count(top), d.len());
        assert!(below.contains(top, d.bottom_index()));
        assert!(!below.contains(d.bottom_index(), top));
        let chains = d.maximal_chains(1000).unwrap();
        assert!(chains.iter().all(|c| c.len() == 5));
        assert!(matches!(d.maximal_chains(3), Err(Error::Resource(_))));
    }
}
