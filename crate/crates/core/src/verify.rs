//! Exhaustive cross-checks between the independent Mobius computations,
//! the classical specializations and the supporting lemmas.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chebyshev::{chebyshev_t, chebyshev_t_closed, lambda_closed_form, verify_chebyshev};
use crate::error::Result;
use crate::interval::build_interval;
use crate::limits::Limits;
use crate::mobius::{
    contribution, embedding_box_mobius, homotopy_type, mobius_bjorner, mobius_forest,
    mobius_oracle_column, mobius_value, normal_embeddings_antichain,
};
use crate::morse::{
    classify_single_position_msi, critical_chains_brute, critical_chains_with,
    for_each_chain_decomposition, mobius_morse_with, msis, ChainContext,
};
use crate::poset::{
    builtin, chain, lambda, mobius_hat_chain_count, AugmentedPoset, FinitePoset, NaturalLabeling,
};
use crate::word::{all_words, embeddings, Embedding, Word};

/// Deliberate errors for testing the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates every product-formula value.
    FlipSign,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Longest top word in the generic sweeps.
    pub max_w: usize,
    /// Number of seeded random posets.
    pub random_posets: usize,
    /// Largest random poset.
    pub random_max_elements: usize,
    pub seed: u64,
    pub limits: Limits,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_w: 3,
            random_posets: 200,
            random_max_elements: 5,
            seed: 20_240_521,
            limits: Limits::generous(),
            fault: None,
        }
    }
}

/// Outcome of one suite. Only the first few counterexamples are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

const KEPT_COUNTEREXAMPLES: usize = 10;

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_owned(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }
}

pub const SUITES: &[&str] = &[
    "oracle",
    "antichain",
    "forest",
    "morse",
    "chebyshev",
    "lemmas",
    "homotopy",
];

/// Runs the named suites (all of them when `names` is empty).
pub fn run(cfg: &VerifyConfig, names: &[String]) -> Result<Vec<SuiteReport>> {
    let wanted = |n: &str| names.is_empty() || names.iter().any(|x| x == n);
    let mut out = Vec::new();
    if wanted("oracle") {
        out.push(oracle_suite(cfg)?);
    }
    if wanted("antichain") {
        out.push(antichain_suite(cfg)?);
    }
    if wanted("forest") {
        out.push(forest_suite(cfg)?);
    }
    if wanted("morse") {
        out.push(morse_suite(cfg)?);
    }
    if wanted("chebyshev") {
        out.push(chebyshev_suite(cfg)?);
    }
    if wanted("lemmas") {
        out.push(lemma_suite(cfg)?);
    }
    if wanted("homotopy") {
        out.push(homotopy_suite(cfg)?);
    }
    Ok(out)
}

/// A seeded random poset on at most `max_elements` elements.
pub fn random_poset(seed: u64, max_elements: usize) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_elements.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    FinitePoset::from_order_pairs(FinitePoset::numbered_names(n), &pairs)
        .expect("pairs respect a linear order")
}

/// Random words of length at most `max_len`.
pub fn random_words(p: &FinitePoset, seed: u64, count: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            Word((0..len).map(|_| rng.gen_range(0..p.len())).collect())
        })
        .collect()
}

/// The rooted forest `1 < 2, 1 < 3, 4 < 5`.
pub fn forest5() -> FinitePoset {
    FinitePoset::new(FinitePoset::numbered_names(5), vec![(0, 1), (0, 2), (3, 4)])
        .expect("valid forest")
}

fn named(spec: &str) -> (String, FinitePoset) {
    (spec.to_owned(), builtin(spec).expect("built-in poset"))
}

struct Case<'a> {
    name: &'a str,
    p0: &'a AugmentedPoset,
    u: &'a Word,
    w: &'a Word,
}

impl Case<'_> {
    fn describe(&self, detail: String) -> String {
        let p = self.p0.base();
        format!(
            "poset={} u={} w={}: {}",
            self.name,
            self.u.display(p),
            self.w.display(p),
            detail
        )
    }
}

fn formula(cfg: &VerifyConfig, p0: &AugmentedPoset, u: &Word, w: &Word) -> Result<i64> {
    let v = mobius_value(p0, u, w)?;
    Ok(match cfg.fault {
        Some(Fault::FlipSign) => -v,
        None => v,
    })
}

/// Calls `f` with the oracle value of every pair `u <= w`, `w` ranging
/// over `tops`.
fn for_each_pair(
    p0: &AugmentedPoset,
    tops: &[Word],
    limits: &Limits,
    mut f: impl FnMut(&Word, &Word, i64) -> Result<()>,
) -> Result<()> {
    for w in tops {
        for (u, mu) in mobius_oracle_column(p0, w, limits)? {
            f(&u, w, mu)?;
        }
    }
    Ok(())
}

fn oracle_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle");
    let mut sweeps: Vec<(String, FinitePoset, usize)> =
        ["lambda", "lambda:3", "fig3", "chain:4", "antichain:3"]
            .iter()
            .map(|s| {
                let (n, p) = named(s);
                (n, p, cfg.max_w)
            })
            .collect();
    sweeps.push(("lambda".to_owned(), lambda(), cfg.max_w + 1));
    for (name, p, len) in sweeps {
        let p0 = AugmentedPoset::new(p)?;
        let tops = all_words(p0.base(), len);
        for_each_pair(&p0, &tops, &cfg.limits, |u, w, oracle| {
            let f = formula(cfg, &p0, u, w)?;
            let case = Case {
                name: &name,
                p0: &p0,
                u,
                w,
            };
            report.check(f == oracle, || {
                case.describe(format!("formula={f} oracle={oracle}"))
            });
            Ok(())
        })?;
    }
    for k in 0..cfg.random_posets {
        let seed = cfg.seed.wrapping_add(k as u64);
        let p0 = AugmentedPoset::new(random_poset(seed, cfg.random_max_elements))?;
        let name = format!("random:{seed}");
        let tops = random_words(p0.base(), seed ^ 0x9e37, 3, cfg.max_w);
        for_each_pair(&p0, &tops, &cfg.limits, |u, w, oracle| {
            let f = formula(cfg, &p0, u, w)?;
            let case = Case {
                name: &name,
                p0: &p0,
                u,
                w,
            };
            report.check(f == oracle, || {
                case.describe(format!("formula={f} oracle={oracle}"))
            });
            Ok(())
        })?;
    }
    Ok(report)
}

fn antichain_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("antichain");
    for s in ["antichain:2", "antichain:3"] {
        let (name, p) = named(s);
        let p0 = AugmentedPoset::new(p)?;
        for w in all_words(p0.base(), cfg.max_w + 3) {
            let d = build_interval(&p0, &Word::empty(), &w, &cfg.limits)?;
            for u in d.nodes() {
                let (f, b) = (formula(cfg, &p0, u, &w)?, mobius_bjorner(&p0, u, &w)?);
                let case = Case {
                    name: &name,
                    p0: &p0,
                    u,
                    w: &w,
                };
                report.check(f == b, || {
                    case.describe(format!("formula={f} normal-embedding={b}"))
                });
            }
        }
    }
    let p0 = AugmentedPoset::new(builtin("antichain:2")?)?;
    let (u, w) = (
        Word::parse(p0.base(), "121")?,
        Word::parse(p0.base(), "1122121")?,
    );
    let normal: Vec<String> = normal_embeddings_antichain(&p0, &u, &w)?
        .iter()
        .map(|e| e.display(&p0).to_string())
        .collect();
    report.check(normal == ["0102100", "0102001"], || {
        format!("normal embeddings of 121 in 1122121: {normal:?}")
    });
    let mu = formula(cfg, &p0, &u, &w)?;
    report.check(mu == 2, || format!("mu(121, 1122121) = {mu}"));
    Ok(report)
}

fn forest_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("forest");
    for (name, p) in [
        ("chain:4".to_owned(), chain(4)),
        ("forest5".to_owned(), forest5()),
    ] {
        let p0 = AugmentedPoset::new(p)?;
        let tops = all_words(p0.base(), cfg.max_w + 1);
        for_each_pair(&p0, &tops, &cfg.limits, |u, w, oracle| {
            let (f, r) = (formula(cfg, &p0, u, w)?, mobius_forest(&p0, u, w)?);
            let case = Case {
                name: &name,
                p0: &p0,
                u,
                w,
            };
            report.check(f == r && r == oracle, || {
                case.describe(format!("formula={f} forest={r} oracle={oracle}"))
            });
            Ok(())
        })?;
    }
    Ok(report)
}

fn morse_posets(cfg: &VerifyConfig) -> Vec<(String, FinitePoset)> {
    let mut v: Vec<(String, FinitePoset)> =
        ["lambda", "lambda:3", "fig3", "chain:3", "antichain:3"]
            .iter()
            .map(|s| named(s))
            .collect();
    for k in 0..cfg.random_posets.min(40) {
        let seed = cfg.seed.wrapping_add(1_000 + k as u64);
        v.push((format!("random:{seed}"), random_poset(seed, 4)));
    }
    v
}

fn morse_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("morse");
    for (name, p) in morse_posets(cfg) {
        let p0 = AugmentedPoset::new(p)?;
        let labeling = p0.base().natural_labeling();
        let tops = all_words(p0.base(), cfg.max_w.min(3));
        for_each_pair(&p0, &tops, &cfg.limits, |u, w, oracle| {
            let f = formula(cfg, &p0, u, w)?;
            let m = mobius_morse_with(&p0, &labeling, u, w, &cfg.limits)?;
            let case = Case {
                name: &name,
                p0: &p0,
                u,
                w,
            };
            report.check(f == oracle && m == oracle, || {
                case.describe(format!("formula={f} oracle={oracle} morse={m}"))
            });
            if u == w {
                return Ok(());
            }
            // Critical chains grouped by final embedding must reproduce
            // each embedding's product.
            let mut by_end: HashMap<Embedding, i64> = HashMap::new();
            for d in critical_chains_with(&p0, &labeling, u, w, &cfg.limits)? {
                assert!(d.is_critical);
                *by_end.entry(d.chain.final_embedding()).or_default() += d.sign();
                report.check(d.chain.is_lex_decreasing(), || {
                    case.describe(format!(
                        "critical chain {} is not decreasing",
                        d.chain.display(p0.base())
                    ))
                });
            }
            for eta in embeddings(&p0, u, w)? {
                let c = contribution(&p0, &eta, w)?;
                let got = by_end.get(&eta).copied().unwrap_or(0);
                report.check(c == got, || {
                    case.describe(format!(
                        "embedding {}: product={c} critical={got}",
                        eta.display(&p0)
                    ))
                });
            }
            Ok(())
        })?;
    }
    // Other natural labelings give the same sum.
    for (name, p) in [named("lambda"), named("lambda:3"), named("chain:3")]
        .into_iter()
        .chain((0..cfg.random_posets.min(10)).map(|k| {
            let seed = cfg.seed.wrapping_add(2_000 + k as u64);
            (format!("random:{seed}"), random_poset(seed, 5))
        }))
    {
        let p0 = AugmentedPoset::new(p)?;
        let tops = all_words(p0.base(), cfg.max_w.min(3));
        for order in p0.base().linear_extensions() {
            let labeling = NaturalLabeling::from_linear_extension(p0.base(), &order)?;
            for_each_pair(&p0, &tops, &cfg.limits, |u, w, oracle| {
                let m = mobius_morse_with(&p0, &labeling, u, w, &cfg.limits)?;
                let case = Case {
                    name: &name,
                    p0: &p0,
                    u,
                    w,
                };
                report.check(m == oracle, || {
                    case.describe(format!("labeling {order:?}: morse={m} oracle={oracle}"))
                });
                Ok(())
            })?;
        }
    }
    Ok(report)
}

fn chebyshev_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("chebyshev");
    for n in 0..=20 {
        let ok = chebyshev_t(n) == chebyshev_t_closed(n);
        report.check(ok, || format!("T_{n}: recurrence and closed form differ"));
    }
    let mut grid: Vec<(u32, usize)> = vec![(2, 8)];
    grid.extend([1u32, 2, 3].iter().map(|&s| (s, 5)));
    for (s, max_j) in grid {
        for j in 0..=max_j {
            for i in 0..=j {
                let with_oracle = j <= 4;
                let mut c = verify_chebyshev(s, i, j, with_oracle, &cfg.limits)?;
                if cfg.fault == Some(Fault::FlipSign) {
                    c.mu = -c.mu;
                    c.equal = c.mu as i128 == c.coeff;
                }
                report.check(c.equal, || {
                    format!(
                        "s={s} i={i} j={j}: mu={} coefficient={} oracle={:?}",
                        c.mu, c.coeff, c.oracle
                    )
                });
                if s == 2 && j >= 1 {
                    let closed = lambda_closed_form(i, j)?;
                    report.check(closed == c.coeff, || {
                        format!("i={i} j={j}: closed form {closed} vs {}", c.coeff)
                    });
                }
            }
        }
    }
    Ok(report)
}

fn lemma_posets(cfg: &VerifyConfig) -> Vec<(String, FinitePoset)> {
    let mut v: Vec<(String, FinitePoset)> =
        ["lambda", "lambda:3", "fig3", "chain:4", "antichain:2"]
            .iter()
            .map(|s| named(s))
            .collect();
    for k in 0..cfg.random_posets.min(50) {
        let seed = cfg.seed.wrapping_add(3_000 + k as u64);
        v.push((
            format!("random:{seed}"),
            random_poset(seed, cfg.random_max_elements.max(2)),
        ));
    }
    v
}

fn lemma_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas");
    for (name, p) in lemma_posets(cfg) {
        let p0 = AugmentedPoset::new(p)?;
        let base = p0.base();
        let zero = p0.zero();
        for a in 0..base.len() {
            for b in 0..base.len() {
                if !base.le(a, b) {
                    continue;
                }
                let w = Word(vec![a, b]);
                let boxed = Embedding::new(&p0, vec![zero, a], &w)?;
                let got = embedding_box_mobius(&p0, &boxed, &w)?;
                let want = p0.mu(zero, a) * p0.mu(a, b);
                report.check(got == want, || {
                    format!(
                        "poset={name} a={} b={}: box mobius {got}, product {want}",
                        base.name(a),
                        base.name(b)
                    )
                });
                let shifted = Embedding::new(&p0, vec![a, zero], &w)?;
                let c = contribution(&p0, &shifted, &w)?;
                let want = p0.mu(zero, b) + i64::from(a == b);
                report.check(c == want, || {
                    format!(
                        "poset={name} a={} b={}: contribution of a0 is {c}, want {want}",
                        base.name(a),
                        base.name(b)
                    )
                });
            }
        }
        // Mobius sums over closed intervals vanish, and the chain count
        // formula reproduces mu on open intervals.
        let full = p0.poset();
        for a in 0..full.len() {
            for b in 0..full.len() {
                if !full.le(a, b) {
                    continue;
                }
                let sum: i64 = (0..full.len())
                    .filter(|&z| full.le(a, z) && full.le(z, b))
                    .map(|z| p0.mu(a, z))
                    .sum();
                report.check(sum == i64::from(a == b), || {
                    format!("poset={name}: mobius sum {sum} on [{a},{b}]")
                });
                if a != b {
                    let open: Vec<usize> = (0..full.len())
                        .filter(|&z| full.lt(a, z) && full.lt(z, b))
                        .collect();
                    let hat = mobius_hat_chain_count(&full.induced(&open)?)?;
                    report.check(hat == p0.mu(a, b), || {
                        format!("poset={name}: chain count {hat} on ({a},{b})")
                    });
                }
            }
        }
        report_inclusion_exclusion(&mut report, &name, base, cfg.seed)?;
    }
    // fig3 intervals at length 3 run to hundreds of thousands of chains.
    for (spec, len) in [
        ("lambda", 3),
        ("lambda:3", 3),
        ("fig3", 2),
        ("chain:3", 3),
        ("antichain:2", 3),
    ] {
        let (name, p) = named(spec);
        let p0 = AugmentedPoset::new(p)?;
        chain_lemmas(&mut report, &name, &p0, cfg.max_w.min(len), cfg)?;
    }
    Ok(report)
}

fn up_closure(p: &FinitePoset, seeds: &[usize]) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| seeds.iter().any(|&x| p.le(x, y)))
        .collect()
}

fn report_inclusion_exclusion(
    report: &mut SuiteReport,
    name: &str,
    q: &FinitePoset,
    seed: u64,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q.len() as u64 ^ q.covers().len() as u64);
    for _ in 0..4 {
        let picks: Vec<usize> = (0..q.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let u = up_closure(q, &picks);
        let rest: Vec<usize> = (0..q.len()).filter(|x| !u.contains(x)).collect();
        let mut v = up_closure(q, &rest);
        // Let the two ideals overlap more than they have to.
        if let Some(&extra) = u.choose(&mut rng) {
            v = up_closure(q, &[v.clone(), vec![extra]].concat());
        }
        let both: Vec<usize> = u.iter().copied().filter(|x| v.contains(x)).collect();
        let lhs = mobius_hat_chain_count(q)?;
        let rhs = mobius_hat_chain_count(&q.induced(&u)?)?
            + mobius_hat_chain_count(&q.induced(&v)?)?
            - mobius_hat_chain_count(&q.induced(&both)?)?;
        report.check(lhs == rhs, || {
            format!("poset={name}: U={u:?} V={v:?}: {lhs} != {rhs}")
        });
    }
    Ok(())
}

/// Intervals with more maximal chains than this skip the quadratic
/// brute-force MSI search and rely on the sibling test alone.
pub const BRUTE_FORCE_CHAINS: usize = 5_000;

/// Descent and ascent lemmas, lexicographic totality, decreasing critical
/// chains and the single-position classification, with the sibling-test
/// MSIs compared against the brute-force search on smaller intervals.
fn chain_lemmas(
    report: &mut SuiteReport,
    name: &str,
    p0: &AugmentedPoset,
    max_w: usize,
    cfg: &VerifyConfig,
) -> Result<()> {
    let labeling = p0.base().natural_labeling();
    for w in all_words(p0.base(), max_w) {
        let d = build_interval(p0, &Word::empty(), &w, &cfg.limits)?;
        for u in d.nodes() {
            if *u == w {
                continue;
            }
            let case = Case { name, p0, u, w: &w };
            let mut previous: Option<Vec<crate::morse::Label>> = None;
            let mut fast_msis = Vec::new();
            let count = for_each_chain_decomposition(p0, &labeling, u, &w, &cfg.limits, |dec| {
                let c = &dec.chain;
                let ordered = previous.as_deref().is_none_or(|prev| prev < c.labels());
                report.check(ordered, || {
                    case.describe(format!("{} is out of order", c.display(p0.base())))
                });
                previous = Some(c.labels().to_vec());
                for j in 1..c.len() {
                    if c.is_one_descent(j) {
                        report.check(dec.msis.contains(&(j, j)), || {
                            case.describe(format!(
                                "descent {j} of {} is not an MSI",
                                c.display(p0.base())
                            ))
                        });
                    }
                    if c.is_ascent(j) {
                        report.check(!dec.msis.iter().any(|&(a, b)| a <= j && j <= b), || {
                            case.describe(format!(
                                "MSI of {} contains ascent {j}",
                                c.display(p0.base())
                            ))
                        });
                    }
                }
                if dec.is_critical {
                    report.check(c.is_lex_decreasing(), || {
                        case.describe(format!(
                            "critical chain {} is not decreasing",
                            c.display(p0.base())
                        ))
                    });
                }
                if let Ok(pred) = classify_single_position_msi(p0, &labeling, c) {
                    let actual = c.len() >= 2 && dec.msis.contains(&(1, c.len() - 1));
                    report.check(pred == actual, || {
                        case.describe(format!(
                            "classification of {}: {pred} vs {actual}",
                            c.display(p0.base())
                        ))
                    });
                }
                if fast_msis.len() <= BRUTE_FORCE_CHAINS {
                    fast_msis.push(dec.msis);
                }
                Ok(())
            })?;
            if count > BRUTE_FORCE_CHAINS {
                continue;
            }
            let ctx = ChainContext::new(p0, &labeling, u, &w, &cfg.limits)?;
            for (c, fast) in ctx.chains().iter().zip(&fast_msis) {
                let brute = msis(c, &ctx)?;
                report.check(brute == *fast, || {
                    case.describe(format!(
                        "sibling test disagrees on {}",
                        c.display(p0.base())
                    ))
                });
            }
            let crit = critical_chains_brute(&ctx)?;
            let fast_crit = critical_chains_with(p0, &labeling, u, &w, &cfg.limits)?;
            report.check(crit == fast_crit, || {
                case.describe("critical chains differ from brute force".into())
            });
        }
    }
    Ok(())
}

fn homotopy_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("homotopy");
    for (name, p) in [
        named("lambda"),
        named("antichain:2"),
        named("antichain:3"),
        named("lambda:3"),
    ] {
        let p0 = AugmentedPoset::new(p)?;
        let labeling = p0.base().natural_labeling();
        let rank_max = p0.base().rank();
        for w in all_words(p0.base(), cfg.max_w.min(3)) {
            let full = build_interval(&p0, &Word::empty(), &w, &cfg.limits)?;
            for (k, u) in full.nodes().iter().enumerate() {
                let gap = full.height() - full.ranks()[k];
                if gap < 2 {
                    continue;
                }
                let case = Case {
                    name: &name,
                    p0: &p0,
                    u,
                    w: &w,
                };
                let ctx = ChainContext::new(&p0, &labeling, u, &w, &cfg.limits)?;
                let pure = ctx.chains().iter().all(|c| c.len() == gap);
                report.check(pure, || {
                    case.describe("maximal chains of unequal length".into())
                });
                let singletons = ctx
                    .chains()
                    .iter()
                    .all(|c| msis(c, &ctx).is_ok_and(|m| m.iter().all(|&(a, b)| a == b)));
                report.check(singletons, || {
                    case.describe("an MSI with more than one element".into())
                });
                let h = homotopy_type(&p0, u, &w, &cfg.limits)?;
                let mu = formula(cfg, &p0, u, &w)?;
                report.check(
                    h.dimension == gap as i64 - 2 && h.sphere_count == mu.unsigned_abs(),
                    || case.describe(format!("report {h} with mu={mu}, gap {gap}")),
                );
                if rank_max == 0 {
                    let want = w.len() as i64 - u.len() as i64 - 2;
                    report.check(h.dimension == want, || {
                        case.describe(format!("dimension {} != {want}", h.dimension))
                    });
                }
            }
        }
    }
    let p0 = AugmentedPoset::new(lambda())?;
    for j in 1..=4usize {
        for i in 0..=j {
            if 2 * j - i < 2 {
                continue;
            }
            let (u, w) = (Word::repeat(0, i), Word::repeat(2, j));
            let h = homotopy_type(&p0, &u, &w, &cfg.limits)?;
            let want = 2 * j as i64 - i as i64 - 2;
            report.check(h.dimension == want, || {
                format!("[1^{i}, 3^{j}]: dimension {} != {want}", h.dimension)
            });
        }
    }
    Ok(report)
}

/// Fixed examples: `(poset, u, w, mu)` values that every method must
/// reproduce.
pub fn known_values() -> Vec<(&'static str, &'static str, &'static str, i64)> {
    vec![
        ("lambda", "11", "333", 5),
        ("lambda", "", "33333", 16),
        ("lambda", "1", "33", -3),
        ("fig3", "2", "29", 0),
        ("antichain:2", "121", "1122121", 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_posets_are_deterministic() {
        assert_eq!(random_poset(7, 5), random_poset(7, 5));
        for seed in 0..30 {
            let p = random_poset(seed, 5);
            assert!((1..=5).contains(&p.len()));
        }
        let p = random_poset(3, 4);
        assert_eq!(random_words(&p, 1, 3, 3), random_words(&p, 1, 3, 3));
        assert!(forest5().is_rooted_forest());
    }

    #[test]
    fn small_scale_passes() {
        let cfg = VerifyConfig {
            max_w: 2,
            random_posets: 5,
            ..VerifyConfig::default()
        };
        for r in run(&cfg, &[]).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.counterexamples);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn injected_fault_is_reported() {
        let cfg = VerifyConfig {
            max_w: 1,
            random_posets: 1,
            fault: Some(Fault::FlipSign),
            ..VerifyConfig::default()
        };
        let r = run(&cfg, &["oracle".to_owned()]).unwrap();
        assert!(!r[0].passed());
        assert!(r[0].counterexamples[0].starts_with("poset=lambda u=∅ w=∅"));
    }
}
