//! Mobius evaluation on `P*`: the embedding product formula, the recursion
//! oracle, the antichain and rooted-forest specializations, and homotopy
//! reports for posets of rank at most one.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, checked_mul, Error, Result};
use crate::interval::build_interval;
use crate::limits::Limits;
use crate::poset::AugmentedPoset;
use crate::word::{embeddings, is_leq, runs, Embedding, Word};

/// Which computation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Oracle,
    Morse,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::Morse => "morse",
        })
    }
}

/// One embedding's share of the product formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingTerm {
    pub embedding: Embedding,
    pub factors: Vec<i64>,
    pub product: i64,
}

/// `mu(u, w)` together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusReport {
    pub u: Word,
    pub w: Word,
    pub value: i64,
    pub method: Method,
    /// Set when `u` is not below `w`; the value is then 0.
    pub incomparable: bool,
    /// Per-embedding breakdown; filled for the formula method only.
    pub per_embedding: Vec<EmbeddingTerm>,
}

/// Serialized form of a [`MobiusReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusReportJson {
    pub u: String,
    pub w: String,
    pub value: i64,
    pub method: Method,
    pub incomparable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_embedding: Vec<EmbeddingTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingTermJson {
    pub embedding: String,
    pub factors: Vec<i64>,
    pub product: i64,
}

impl MobiusReport {
    pub fn to_json_value(&self, p0: &AugmentedPoset) -> MobiusReportJson {
        let p = p0.base();
        MobiusReportJson {
            u: self.u.display(p).to_string(),
            w: self.w.display(p).to_string(),
            value: self.value,
            method: self.method,
            incomparable: self.incomparable,
            per_embedding: self
                .per_embedding
                .iter()
                .map(|t| EmbeddingTermJson {
                    embedding: t.embedding.display(p0).to_string(),
                    factors: t.factors.clone(),
                    product: t.product,
                })
                .collect(),
        }
    }
}

/// Per-position factors of an embedding: `mu_0(eta(j), w(j))`, plus one
/// where `eta(j)` is zeroed out and `w(j-1) = w(j)`.
pub fn contribution_factors(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<Vec<i64>> {
    if eta.host() != w {
        return Err(Error::domain(
            "embedding was built for a different host word",
        ));
    }
    // Re-validate: the host matches, the letters must sit below it.
    let eta = Embedding::new(p0, eta.eta().to_vec(), w)?;
    let letters = w.letters();
    Ok((0..w.len())
        .map(|j| {
            let mu = p0.mu(eta.eta()[j], letters[j]);
            if eta.is_zero_at(j) && j > 0 && letters[j - 1] == letters[j] {
                mu + 1
            } else {
                mu
            }
        })
        .collect())
}

/// Contribution of one embedding to `mu(u, w)`: the product of its factors.
pub fn contribution(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<i64> {
    contribution_factors(p0, eta, w)?
        .into_iter()
        .try_fold(1i64, |acc, f| checked_mul(acc, f, "embedding contribution"))
}

/// `mu(u, w)` as a sum of embedding products. Incomparable pairs give a
/// zero report flagged `incomparable`.
pub fn mobius_main(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<MobiusReport> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    let mut report = MobiusReport {
        u: u.clone(),
        w: w.clone(),
        value: 0,
        method: Method::Formula,
        incomparable: false,
        per_embedding: Vec::new(),
    };
    if !is_leq(p, u.letters(), w.letters()) {
        report.incomparable = true;
        return Ok(report);
    }
    for embedding in embeddings(p0, u, w)? {
        let factors = contribution_factors(p0, &embedding, w)?;
        let product = factors.iter().try_fold(1i64, |acc, &f| {
            checked_mul(acc, f, "embedding contribution")
        })?;
        report.value = checked_add(report.value, product, "mobius sum")?;
        report.per_embedding.push(EmbeddingTerm {
            embedding,
            factors,
            product,
        });
    }
    Ok(report)
}

/// Just the value of [`mobius_main`].
pub fn mobius_value(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<i64> {
    Ok(mobius_main(p0, u, w)?.value)
}

/// `mu(u, w)` by the defining recursion over the explicit interval.
/// Incomparable pairs give 0.
pub fn mobius_oracle(p0: &AugmentedPoset, u: &Word, w: &Word, limits: &Limits) -> Result<i64> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    if !is_leq(p, u.letters(), w.letters()) {
        return Ok(0);
    }
    let d = build_interval(p0, u, w, limits)?;
    let n = d.len();
    if n.saturating_mul(n) / 8 > (1 << 30) {
        return Err(Error::resource(format!(
            "interval with {n} nodes is too large for the oracle"
        )));
    }
    let below = d.down_sets();
    let bottom = d.bottom_index();
    let mut mu = vec![0i64; n];
    for v in 0..n {
        if v == bottom {
            mu[v] = 1;
            continue;
        }
        let mut sum = 0i64;
        for z in 0..v {
            if below.contains(v, z) {
                sum = checked_add(sum, mu[z], "oracle recursion")?;
            }
        }
        mu[v] = sum
            .checked_neg()
            .ok_or(Error::Overflow("oracle recursion"))?;
    }
    Ok(mu[d.top_index()])
}

/// `mu(u, w)` for every `u <= w`, by the dual recursion
/// `mu(u, w) = -sum_{u < z <= w} mu(z, w)` over `[∅, w]`.
pub fn mobius_oracle_column(
    p0: &AugmentedPoset,
    w: &Word,
    limits: &Limits,
) -> Result<Vec<(Word, i64)>> {
    w.check(p0.base())?;
    let d = build_interval(p0, &Word::empty(), w, limits)?;
    let n = d.len();
    if n.saturating_mul(n) / 8 > (1 << 30) {
        return Err(Error::resource(format!(
            "interval with {n} nodes is too large for the oracle"
        )));
    }
    let below = d.down_sets();
    let mut mu = vec![0i64; n];
    for v in (0..n).rev() {
        if v == d.top_index() {
            mu[v] = 1;
            continue;
        }
        let mut sum = 0i64;
        for z in v + 1..n {
            if below.contains(z, v) {
                sum = checked_add(sum, mu[z], "oracle recursion")?;
            }
        }
        mu[v] = sum
            .checked_neg()
            .ok_or(Error::Overflow("oracle recursion"))?;
    }
    Ok(d.nodes().iter().cloned().zip(mu).collect())
}

fn require_antichain(p0: &AugmentedPoset) -> Result<()> {
    if p0.base().is_antichain() {
        Ok(())
    } else {
        Err(Error::domain("poset is not an antichain"))
    }
}

/// Embeddings that never zero out a position repeating its predecessor.
pub fn normal_embeddings_antichain(
    p0: &AugmentedPoset,
    u: &Word,
    w: &Word,
) -> Result<Vec<Embedding>> {
    require_antichain(p0)?;
    let letters = w.letters();
    Ok(embeddings(p0, u, w)?
        .into_iter()
        .filter(|e| (1..w.len()).all(|j| !(e.is_zero_at(j) && letters[j - 1] == letters[j])))
        .collect())
}

/// Subword-order Mobius value: sign `(-1)^{|w|-|u|}` times the number of
/// normal embeddings.
pub fn mobius_bjorner(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<i64> {
    let count = normal_embeddings_antichain(p0, u, w)?.len() as i64;
    let sign = if (w.len() + u.len()) % 2 == 0 { 1 } else { -1 };
    Ok(if count == 0 { 0 } else { sign * count })
}

fn require_forest(p0: &AugmentedPoset) -> Result<()> {
    if p0.base().is_rooted_forest() {
        Ok(())
    } else {
        Err(Error::domain("poset is not a rooted forest"))
    }
}

/// Normality for rooted forests: each `eta(j)` is `w(j)`, its unique lower
/// cover, or zero; within every run of a minimal letter only the first
/// position may be zero; every run of a non-minimal letter keeps its first
/// position.
pub fn is_normal_forest(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<bool> {
    require_forest(p0)?;
    if eta.host() != w {
        return Err(Error::domain(
            "embedding was built for a different host word",
        ));
    }
    let p = p0.base();
    let letters = w.letters();
    for (j, &x) in letters.iter().enumerate() {
        let e = eta.eta()[j];
        if e != x && Some(e) != p0.unique_lower_cover(x) && !eta.is_zero_at(j) {
            return Ok(false);
        }
    }
    for run in runs(letters) {
        let ok = if p.is_minimal(run.letter) {
            (run.start + 1..=run.end).all(|j| !eta.is_zero_at(j))
        } else {
            !eta.is_zero_at(run.start)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of positions where `eta(i)` is the unique lower cover of `w(i)`.
pub fn defect(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<usize> {
    require_forest(p0)?;
    if eta.host() != w {
        return Err(Error::domain(
            "embedding was built for a different host word",
        ));
    }
    Ok(w.letters()
        .iter()
        .zip(eta.eta())
        .filter(|&(&x, &e)| p0.unique_lower_cover(x) == Some(e))
        .count())
}

/// Rooted-forest Mobius value: signed count of normal embeddings.
pub fn mobius_forest(p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<i64> {
    require_forest(p0)?;
    let mut total = 0i64;
    for e in embeddings(p0, u, w)? {
        if is_normal_forest(p0, &e, w)? {
            total += if defect(p0, &e, w)? % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// Homotopy type of an interval when the base poset has rank at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub sphere_count: u64,
    pub dimension: i64,
    pub rank_w: usize,
    pub rank_u: usize,
}

impl std::fmt::Display for HomotopyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "wedge of {} spheres, dim {}",
            self.sphere_count, self.dimension
        )
    }
}

/// Rank of `v` in `[∅, v]`: the length of a longest chain below it.
pub fn rank_word(p0: &AugmentedPoset, v: &Word, limits: &Limits) -> Result<usize> {
    Ok(build_interval(p0, &Word::empty(), v, limits)?.height())
}

/// Wedge-of-spheres report for `[u, w]`: `|mu(u, w)|` spheres of dimension
/// `rk(w) - rk(u) - 2`. Only posets of rank at most one are accepted, and
/// the rank gap must be at least two.
pub fn homotopy_type(
    p0: &AugmentedPoset,
    u: &Word,
    w: &Word,
    limits: &Limits,
) -> Result<HomotopyReport> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    if p.rank() > 1 {
        return Err(Error::Unsupported(format!(
            "poset has rank {}; the wedge-of-spheres report needs rank at most 1",
            p.rank()
        )));
    }
    if u == w || !is_leq(p, u.letters(), w.letters()) {
        return Err(Error::domain(format!(
            "{} is not strictly below {}",
            u.display(p),
            w.display(p)
        )));
    }
    let d = build_interval(p0, &Word::empty(), w, limits)?;
    let rank_w = d.height();
    let rank_u = d.ranks()[d.index_of(u).expect("u lies below w")];
    if rank_w - rank_u < 2 {
        return Err(Error::domain(format!(
            "rank gap {} is below 2; the interval is a cover",
            rank_w - rank_u
        )));
    }
    let mu = mobius_value(p0, u, w)?;
    Ok(HomotopyReport {
        sphere_count: mu.unsigned_abs(),
        dimension: rank_w as i64 - rank_u as i64 - 2,
        rank_w,
        rank_u,
    })
}

/// Elements of the subposet `[eta, w]`: words having a length-`|w|`
/// expansion squeezed pointwise between `eta` and `w` in `P_0`.
pub fn embedding_box(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<Vec<Word>> {
    if eta.host() != w {
        return Err(Error::domain(
            "embedding was built for a different host word",
        ));
    }
    let choices: Vec<Vec<usize>> = eta
        .eta()
        .iter()
        .zip(w.letters())
        .map(|(&lo, &hi)| {
            (0..p0.len())
                .filter(|&z| p0.le(lo, z) && p0.le(z, hi))
                .collect()
        })
        .collect();
    let mut words: HashSet<Vec<usize>> = HashSet::from([Vec::new()]);
    for options in &choices {
        let mut next = HashSet::new();
        for v in &words {
            for &z in options {
                let mut v = v.clone();
                if !p0.is_zero(z) {
                    v.push(z);
                }
                next.insert(v);
            }
        }
        words = next;
    }
    let mut out: Vec<Word> = words.into_iter().map(Word).collect();
    out.sort();
    Ok(out)
}

/// Mobius value of the subposet `[eta, w]` from the embedded word up to
/// `w`, by brute-force recursion on the induced order.
pub fn embedding_box_mobius(p0: &AugmentedPoset, eta: &Embedding, w: &Word) -> Result<i64> {
    let p = p0.base();
    let nodes = embedding_box(p0, eta, w)?;
    let bottom = eta.word();
    let le = |a: &Word, b: &Word| is_leq(p, a.letters(), b.letters());
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    // Strictly smaller words come first: sort by size of the down-set.
    let down_count: Vec<usize> = nodes
        .iter()
        .map(|v| nodes.iter().filter(|z| le(z, v)).count())
        .collect();
    order.sort_by_key(|&i| down_count[i]);
    let mut mu = vec![0i64; nodes.len()];
    for &v in &order {
        if !le(&bottom, &nodes[v]) {
            continue;
        }
        if nodes[v] == bottom {
            mu[v] = 1;
            continue;
        }
        let mut sum = 0i64;
        for z in 0..nodes.len() {
            if z != v && le(&bottom, &nodes[z]) && le(&nodes[z], &nodes[v]) {
                sum = checked_add(sum, mu[z], "box recursion")?;
            }
        }
        mu[v] = -sum;
    }
    let top = nodes
        .iter()
        .position(|v| v == w)
        .expect("w lies in its own box");
    Ok(mu[top])
}
