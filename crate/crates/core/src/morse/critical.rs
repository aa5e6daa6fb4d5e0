use super::msi::{msis_from_predicate, KeyedInterval, MsiDecomposition};
use super::{label_chain, LabeledChain};
use crate::error::{checked_add, Error, Result};
use crate::limits::Limits;
use crate::poset::{AugmentedPoset, NaturalLabeling};
use crate::word::{is_leq, single_step, Embedding, Word};

/// Runs the sibling-test MSI search on every maximal chain of `[u, w]` and
/// hands each decomposition to `f`, in lexicographic chain order.
/// Returns the number of chains visited.
pub fn for_each_chain_decomposition(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    u: &Word,
    w: &Word,
    limits: &Limits,
    mut f: impl FnMut(MsiDecomposition) -> Result<()>,
) -> Result<usize> {
    let keyed = KeyedInterval::new(p0, labeling, u, w, limits)?;
    keyed.for_each_chain(limits.max_chains, |path| {
        let chain = label_chain(p0, labeling, &keyed.words(path))?;
        f(MsiDecomposition::new(chain, keyed.fast_msis(p0, path)))
    })
}

/// Critical chains of `[u, w]` under a given natural labeling.
pub fn critical_chains_with(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    u: &Word,
    w: &Word,
    limits: &Limits,
) -> Result<Vec<MsiDecomposition>> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    if !is_leq(p, u.letters(), w.letters()) {
        return Err(Error::domain(format!(
            "{} is not below {}",
            u.display(p),
            w.display(p)
        )));
    }
    let keyed = KeyedInterval::new(p0, labeling, u, w, limits)?;
    let mut out = Vec::new();
    keyed.for_each_chain(limits.max_chains, |path| {
        let msis = keyed.fast_msis(p0, path);
        // Cheap pre-check before labeling the chain.
        let covered: usize = super::j_construction(&msis)
            .iter()
            .map(|&(a, b)| b - a + 1)
            .sum();
        if covered == path.len().saturating_sub(2) {
            let chain = label_chain(p0, labeling, &keyed.words(path))?;
            out.push(MsiDecomposition::new(chain, msis));
        }
        Ok(())
    })?;
    Ok(out)
}

/// Critical chains of `[u, w]` under the default natural labeling.
pub fn critical_chains(
    p0: &AugmentedPoset,
    u: &Word,
    w: &Word,
    limits: &Limits,
) -> Result<Vec<MsiDecomposition>> {
    critical_chains_with(p0, &p0.base().natural_labeling(), u, w, limits)
}

/// `mu(u, w)` as the signed count of critical chains. Incomparable pairs
/// give 0, `u = w` gives 1 and a cover gives -1.
pub fn mobius_morse_with(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    u: &Word,
    w: &Word,
    limits: &Limits,
) -> Result<i64> {
    let p = p0.base();
    u.check(p)?;
    w.check(p)?;
    if !is_leq(p, u.letters(), w.letters()) {
        return Ok(0);
    }
    if u == w {
        return Ok(1);
    }
    if single_step(p0, w.letters(), u.letters()).is_some() {
        return Ok(-1);
    }
    critical_chains_with(p0, labeling, u, w, limits)?
        .iter()
        .try_fold(0i64, |acc, d| {
            checked_add(acc, d.sign(), "critical chain sum")
        })
}

pub fn mobius_morse(p0: &AugmentedPoset, u: &Word, w: &Word, limits: &Limits) -> Result<i64> {
    mobius_morse_with(p0, &p0.base().natural_labeling(), u, w, limits)
}

/// Signed count of the critical chains of `[eta, w]` that end at the
/// embedding `eta`.
pub fn per_embedding_mu_with(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    eta: &Embedding,
    w: &Word,
    limits: &Limits,
) -> Result<i64> {
    if eta.host() != w {
        return Err(Error::domain(
            "embedding was built for a different host word",
        ));
    }
    let eta = Embedding::new(p0, eta.eta().to_vec(), w)?;
    let u = eta.word();
    if u == *w {
        return Ok(1);
    }
    let mut total = 0i64;
    for d in critical_chains_with(p0, labeling, &u, w, limits)? {
        if d.chain.final_embedding() == eta {
            total = checked_add(total, d.sign(), "critical chain sum")?;
        }
    }
    Ok(total)
}

pub fn per_embedding_mu(
    p0: &AugmentedPoset,
    eta: &Embedding,
    w: &Word,
    limits: &Limits,
) -> Result<i64> {
    per_embedding_mu_with(p0, &p0.base().natural_labeling(), eta, w, limits)
}

/// Predicts whether the whole open chain of `c` is an MSI when `c` changes
/// only one position `j` of `w`: if the final embedding is rightmost, the
/// matching chain of `P_0` at position `j` must itself have its open chain
/// as an MSI; otherwise that chain must avoid every element above
/// `w(j-1)` and have no proper skipped interval.
pub fn classify_single_position_msi(
    p0: &AugmentedPoset,
    labeling: &NaturalLabeling,
    c: &LabeledChain,
) -> Result<bool> {
    let w = c.top().letters();
    let eta = c.final_embedding();
    let changed: Vec<usize> = (0..w.len()).filter(|&j| eta.eta()[j] != w[j]).collect();
    let j = match changed[..] {
        [j] => j,
        _ => {
            return Err(Error::domain(format!(
                "chain changes {} positions; exactly one is required",
                changed.len()
            )))
        }
    };
    if c.len() < 2 {
        return Ok(false);
    }
    let column: Vec<usize> = (0..=c.len()).map(|i| c.embedding(i).eta()[j]).collect();
    let m = column.len() - 1;
    let bottom = column[m];
    // Lexicographic-first test inside [column[m], column[0]] of P_0: an
    // earlier lower cover of column[i] that still lies above column[s].
    let msis0 = msis_from_predicate(m, |i, s| {
        let next = labeling.label0(p0, column[i + 1]);
        p0.lower_covers(column[i])
            .iter()
            .any(|&z| p0.le(bottom, z) && labeling.label0(p0, z) < next && p0.le(column[s], z))
    });
    let whole = (1, m - 1);
    let rightmost = !(p0.is_zero(eta.eta()[j]) && j > 0 && p0.le(w[j - 1], w[j]));
    Ok(if rightmost {
        msis0.contains(&whole)
    } else {
        let avoids = column[1..m].iter().all(|&x| !p0.le(w[j - 1], x));
        avoids && msis0.iter().all(|&i| i == whole)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::{msis, ChainContext};
    use crate::poset::{fig3, lambda};

    fn parse(p0: &AugmentedPoset, s: &str) -> Word {
        Word::parse(p0.base(), s).unwrap()
    }

    #[test]
    fn fig3_critical_chains() {
        let p0 = AugmentedPoset::new(fig3()).unwrap();
        let (u, w) = (parse(&p0, "2"), parse(&p0, "29"));
        let crit = critical_chains(&p0, &u, &w, &Limits::default()).unwrap();
        let got: Vec<(String, i64, String)> = crit
            .iter()
            .map(|d| {
                (
                    d.chain.display(p0.base()).to_string(),
                    d.critical_dimension,
                    d.chain.final_embedding().display(&p0).to_string(),
                )
            })
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let want = [
            ("29 > 25 > 21 > 2", 0, "20"),
            ("29 > 26 > 21 > 2", 1, "20"),
            ("29 > 27 > 22 > 2", 1, "02"),
            ("29 > 28 > 23 > 2", 0, "20"),
        ];
        let want: Vec<(String, i64, String)> = want
            .iter()
            .map(|&(a, b, c)| (a.to_owned(), b, c.to_owned()))
            .collect();
        assert_eq!(got_sorted, want);
        assert_eq!(mobius_morse(&p0, &u, &w, &Limits::default()).unwrap(), 0);
        let e20 = Embedding::parse(&p0, "20", &w).unwrap();
        let e02 = Embedding::parse(&p0, "02", &w).unwrap();
        assert_eq!(
            per_embedding_mu(&p0, &e20, &w, &Limits::default()).unwrap(),
            1
        );
        assert_eq!(
            per_embedding_mu(&p0, &e02, &w, &Limits::default()).unwrap(),
            -1
        );
    }

    #[test]
    fn lambda_values() {
        let p0 = AugmentedPoset::new(lambda()).unwrap();
        let lim = Limits::default();
        let (u, w) = (parse(&p0, "11"), parse(&p0, "333"));
        assert_eq!(mobius_morse(&p0, &u, &w, &lim).unwrap(), 5);
        assert_eq!(mobius_morse(&p0, &u, &u, &lim).unwrap(), 1);
        assert_eq!(
            mobius_morse(&p0, &parse(&p0, "1"), &parse(&p0, "3"), &lim).unwrap(),
            -1
        );
        assert_eq!(
            mobius_morse(&p0, &parse(&p0, "3"), &parse(&p0, "1"), &lim).unwrap(),
            0
        );
        for (e, want) in [("110", 2), ("101", 2), ("011", 1)] {
            let eta = Embedding::parse(&p0, e, &w).unwrap();
            assert_eq!(per_embedding_mu(&p0, &eta, &w, &lim).unwrap(), want, "{e}");
        }
        let id = Embedding::identity(&p0, &w);
        assert_eq!(per_embedding_mu(&p0, &id, &w, &lim).unwrap(), 1);
    }

    #[test]
    fn classify_fig3_examples() {
        let p0 = AugmentedPoset::new(fig3()).unwrap();
        let l = p0.base().natural_labeling();
        let lim = Limits::default();
        let chain = |s: &[&str]| {
            let words: Vec<Word> = s.iter().map(|x| parse(&p0, x)).collect();
            label_chain(&p0, &l, &words).unwrap()
        };
        assert!(classify_single_position_msi(&p0, &l, &chain(&["29", "26", "21"])).unwrap());
        assert!(!classify_single_position_msi(&p0, &l, &chain(&["29", "28", "24", "2"])).unwrap());
        assert!(classify_single_position_msi(&p0, &l, &chain(&["29", "25", "21", "2"])).unwrap());
        assert!(classify_single_position_msi(&p0, &l, &chain(&["29", "25", "21", "1"])).is_err());

        // Agreement with the brute-force search on [2, 29].
        let ctx = ChainContext::new(&p0, &l, &parse(&p0, "2"), &parse(&p0, "29"), &lim).unwrap();
        let mut checked = 0;
        for c in ctx.chains() {
            if let Ok(pred) = classify_single_position_msi(&p0, &l, c) {
                let whole = (1, c.len() - 1);
                assert_eq!(
                    pred,
                    msis(c, &ctx).unwrap().contains(&whole),
                    "{}",
                    c.display(p0.base())
                );
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
