//! Finite posets, the poset with a bottom adjoined, natural labelings and
//! the classical Mobius recursion.
//!
//! Elements are dense ids `0..n`. Display names are carried along for
//! parsing and printing only; all comparisons go through ids.

mod builtin;
mod io;

pub use builtin::{antichain, builtin, chain, fig3, lambda, lambda_s, BUILTIN_NAMES};
pub use io::PosetFile;

use crate::error::{checked_add, Error, Result};

/// A finite poset given by its cover relation.
///
/// Construction validates that the covers form an acyclic, transitively
/// reduced digraph; the full order is precomputed as a reachability matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    /// `(a, b)` with `b` covering `a`, sorted.
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    /// Row-major `leq[a * n + b]`.
    leq: Vec<bool>,
    /// Elements listed so that `a < b` implies `a` comes first.
    topo: Vec<usize>,
}

impl FinitePoset {
    /// Builds a poset from display names and cover pairs `(a, b)` meaning
    /// `b` covers `a`. Rejects cycles and covers implied by longer paths.
    pub fn new(names: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        let mut seen = std::collections::HashSet::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::input(format!("element {i} has an empty name")));
            }
            if name.contains(',') || name.chars().any(char::is_whitespace) {
                return Err(Error::input(format!(
                    "element name {name:?} may not contain commas or whitespace"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("duplicate element name {name:?}")));
            }
        }
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "cover ({a}, {b}) names an unknown element"
                )));
            }
            if a == b {
                return Err(Error::input(format!("element {} covers itself", names[a])));
            }
            upper[a].push(b);
            lower[b].push(a);
        }

        // Kahn's algorithm, smallest id first among the currently minimal.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            topo.push(x);
            for &y in &upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::input("cover relation contains a cycle"));
        }

        let mut leq = vec![false; n * n];
        for &x in topo.iter().rev() {
            leq[x * n + x] = true;
            for &y in &upper[x] {
                for z in 0..n {
                    if leq[y * n + z] {
                        leq[x * n + z] = true;
                    }
                }
            }
        }

        for &(a, b) in &covers {
            // (a, b) is redundant if some other upper cover of a lies below b.
            if upper[a].iter().any(|&c| c != b && leq[c * n + b]) {
                return Err(Error::input(format!(
                    "cover ({}, {}) is implied by a longer path; the cover list must be transitively reduced",
                    names[a], names[b]
                )));
            }
        }

        Ok(FinitePoset {
            names,
            covers,
            upper,
            lower,
            leq,
            topo,
        })
    }

    /// Builds a poset from an arbitrary set of order pairs `a <= b`, taking
    /// the reflexive-transitive closure and reducing it to covers.
    pub fn from_order_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "pair ({a}, {b}) names an unknown element"
                )));
            }
            rel[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(Error::input("order pairs are not antisymmetric"));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !rel[a * n + b] {
                    continue;
                }
                let implied = (0..n).any(|c| c != a && c != b && rel[a * n + c] && rel[c * n + b]);
                if !implied {
                    covers.push((a, b));
                }
            }
        }
        Self::new(names, covers)
    }

    /// Element names `"1"..="n"`.
    pub fn numbered_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when every display name is a single character, which allows
    /// words to be written without separators.
    pub fn has_single_char_names(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Elements in a linear extension order (smallest id first among ties).
    pub fn linear_order(&self) -> &[usize] {
        &self.topo
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "unknown element id {x} (poset has {} elements)",
                self.len()
            )))
        }
    }

    /// `a <= b`, validating both ids.
    pub fn leq(&self, a: usize, b: usize) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.le(a, b))
    }

    /// Unchecked `a <= b`; panics on out-of-range ids.
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper[a].contains(&b)
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.lower[x].is_empty()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.covers.is_empty()
    }

    /// Every element covers at most one element, i.e. each component of the
    /// Hasse diagram is a tree with a unique minimal element.
    pub fn is_rooted_forest(&self) -> bool {
        self.lower.iter().all(|l| l.len() <= 1)
    }

    /// Length of a longest chain from a minimal element up to `x`.
    pub fn rank_of(&self, x: usize) -> usize {
        self.ranks()[x]
    }

    /// Longest-chain rank of every element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for &x in &self.topo {
            for &y in &self.upper[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        rank
    }

    /// Maximum element rank; zero for the empty poset.
    pub fn rank(&self) -> usize {
        self.ranks().into_iter().max().unwrap_or(0)
    }

    /// The subposet induced on `elements` (ids are renumbered in the order
    /// given).
    pub fn induced(&self, elements: &[usize]) -> Result<FinitePoset> {
        for &x in elements {
            self.check(x)?;
        }
        let names = elements.iter().map(|&x| self.names[x].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if i != j && self.le(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        FinitePoset::from_order_pairs(names, &pairs)
    }

    /// The deterministic natural labeling: labels `1..=n` assigned along
    /// [`linear_order`](Self::linear_order).
    pub fn natural_labeling(&self) -> NaturalLabeling {
        let mut labels = vec![0u64; self.len()];
        for (i, &x) in self.topo.iter().enumerate() {
            labels[x] = i as u64 + 1;
        }
        NaturalLabeling { labels }
    }

    /// Every linear extension, as element sequences. Exponential; meant for
    /// exhaustive checks on tiny posets.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        fn go(
            p: &FinitePoset,
            placed: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == p.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..p.len() {
                if !placed[x] && p.lower[x].iter().all(|&y| placed[y]) {
                    placed[x] = true;
                    cur.push(x);
                    go(p, placed, cur, out);
                    cur.pop();
                    placed[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(
            self,
            &mut vec![false; self.len()],
            &mut Vec::new(),
            &mut out,
        );
        out
    }
}

/// An order-preserving injection of `P` into the positive integers. The
/// adjoined bottom of `P_0` always receives label 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalLabeling {
    labels: Vec<u64>,
}

impl NaturalLabeling {
    /// Validates a user-supplied labeling of the base poset.
    pub fn new(poset: &FinitePoset, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != poset.len() {
            return Err(Error::input(format!(
                "labeling has {} entries for a poset with {} elements",
                labels.len(),
                poset.len()
            )));
        }
        if labels.contains(&0) {
            return Err(Error::input("natural labels must be positive"));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("natural labels must be distinct"));
        }
        for &(a, b) in poset.covers() {
            if labels[a] >= labels[b] {
                return Err(Error::input(format!(
                    "labeling is not order preserving at {} < {}",
                    poset.name(a),
                    poset.name(b)
                )));
            }
        }
        Ok(NaturalLabeling { labels })
    }

    /// The labeling that follows a given linear extension.
    pub fn from_linear_extension(poset: &FinitePoset, order: &[usize]) -> Result<Self> {
        let mut labels = vec![0u64; poset.len()];
        for (i, &x) in order.iter().enumerate() {
            poset.check(x)?;
            labels[x] = i as u64 + 1;
        }
        Self::new(poset, labels)
    }

    /// Label of a base element.
    pub fn label(&self, x: usize) -> u64 {
        self.labels[x]
    }

    /// Label of a `P_0` element; the bottom gets 0.
    pub fn label0(&self, p0: &AugmentedPoset, x: usize) -> u64 {
        if p0.is_zero(x) {
            0
        } else {
            self.labels[x]
        }
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }
}

/// `P_0`: a base poset with a new bottom element adjoined.
///
/// Base ids are kept and the bottom gets id `n`. The Mobius function of the
/// augmented poset is tabulated at construction with checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedPoset {
    base: FinitePoset,
    full: FinitePoset,
    mobius: Vec<i64>,
}

impl AugmentedPoset {
    pub fn new(base: FinitePoset) -> Result<Self> {
        let n = base.len();
        let mut names = base.names().to_vec();
        names.push("0".to_owned());
        let mut covers = base.covers().to_vec();
        covers.extend(base.minimal_elements().into_iter().map(|m| (n, m)));
        let full = FinitePoset::new(names, covers)?;
        let mobius = mobius_table(&full)?;
        Ok(AugmentedPoset { base, full, mobius })
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// The augmented poset as a plain poset on `n + 1` elements.
    pub fn poset(&self) -> &FinitePoset {
        &self.full
    }

    pub fn zero(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn is_zero(&self, x: usize) -> bool {
        x == self.base.len()
    }

    /// Number of elements including the bottom.
    pub fn len(&self) -> usize {
        self.full.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, x: usize) -> &str {
        self.full.name(x)
    }

    pub fn leq(&self, a: usize, b: usize) -> Result<bool> {
        self.full.leq(a, b)
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.full.le(a, b)
    }

    /// Elements covered by `x` in `P_0`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        self.full.lower_covers(x)
    }

    /// Mobius function of `P_0`, `mu_0(a, b)`.
    pub fn mobius0(&self, a: usize, b: usize) -> Result<i64> {
        if !self.leq(a, b)? {
            return Err(Error::domain(format!(
                "mobius0 needs {} <= {} in P_0",
                self.name(a),
                self.name(b)
            )));
        }
        Ok(self.mu(a, b))
    }

    /// Unchecked table lookup; zero when `a` is not below `b`.
    #[inline]
    pub(crate) fn mu(&self, a: usize, b: usize) -> i64 {
        self.mobius[a * self.len() + b]
    }

    /// Longest chain length from the bottom to `x` in `P_0`.
    pub fn height(&self, x: usize) -> usize {
        self.full.rank_of(x)
    }

    /// The unique element covered by `x`, when there is exactly one.
    pub fn unique_lower_cover(&self, x: usize) -> Option<usize> {
        match self.full.lower_covers(x) {
            [y] => Some(*y),
            _ => None,
        }
    }
}

/// Mobius table of a finite poset via `mu(a,a) = 1`,
/// `mu(a,b) = -sum_{a <= z < b} mu(a,z)`.
fn mobius_table(p: &FinitePoset) -> Result<Vec<i64>> {
    let n = p.len();
    let mut mu = vec![0i64; n * n];
    for a in 0..n {
        mu[a * n + a] = 1;
        for &b in p.linear_order() {
            if b == a || !p.le(a, b) {
                continue;
            }
            let mut sum = 0i64;
            for &z in p.linear_order() {
                if z != b && p.le(a, z) && p.le(z, b) {
                    sum = checked_add(sum, mu[a * n + z], "mobius0")?;
                }
            }
            mu[a * n + b] = sum.checked_neg().ok_or(Error::Overflow("mobius0"))?;
        }
    }
    Ok(mu)
}

/// Mobius value `mu(a, b)` of an arbitrary finite poset by the classical
/// recursion.
pub fn mobius(p: &FinitePoset, a: usize, b: usize) -> Result<i64> {
    if !p.leq(a, b)? {
        return Err(Error::domain(format!(
            "mobius needs {} <= {}",
            p.name(a),
            p.name(b)
        )));
    }
    let table = mobius_table(p)?;
    Ok(table[a * p.len() + b])
}

/// `c[i]` = number of chains of `q` with `i + 1` elements.
pub fn chain_counts(q: &FinitePoset) -> Result<Vec<i64>> {
    let n = q.len();
    // ending[x][k]: chains with k + 1 elements whose top is x.
    let mut ending = vec![Vec::<i64>::new(); n];
    let mut counts: Vec<i64> = Vec::new();
    for &x in q.linear_order() {
        let mut here = vec![1i64];
        for y in 0..n {
            if q.lt(y, x) {
                for (k, &c) in ending[y].iter().enumerate() {
                    if here.len() <= k + 1 {
                        here.resize(k + 2, 0);
                    }
                    here[k + 1] = checked_add(here[k + 1], c, "chain count")?;
                }
            }
        }
        for (k, &c) in here.iter().enumerate() {
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] = checked_add(counts[k], c, "chain count")?;
        }
        ending[x] = here;
    }
    Ok(counts)
}

/// Mobius value of `q` with a bottom and a top adjoined, as the alternating
/// chain count `-1 + c_0 - c_1 + c_2 - ...`.
pub fn mobius_hat_chain_count(q: &FinitePoset) -> Result<i64> {
    let mut total = -1i64;
    for (i, c) in chain_counts(q)?.into_iter().enumerate() {
        let term = if i % 2 == 0 { c } else { -c };
        total = checked_add(total, term, "chain count mobius")?;
    }
    Ok(total)
}
