//! Acceptance checks, one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use subword_core::chebyshev::{
    chebyshev_t, chebyshev_t_closed, lambda_closed_form, verify_chebyshev,
};
use subword_core::mobius::{contribution, mobius_main, mobius_oracle, mobius_value};
use subword_core::morse::{critical_chains, mobius_morse, per_embedding_mu};
use subword_core::poset::{fig3, lambda};
use subword_core::verify::{run, SuiteReport, VerifyConfig};
use subword_core::{build_interval, AugmentedPoset, Embedding, Limits, Result, Word};

type Outcome = Result<(bool, String)>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn word(p0: &AugmentedPoset, s: &str) -> Word {
    Word::parse(p0.base(), s).expect("test word parses")
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f()?;
    let took = start.elapsed();
    Ok((
        ok && took < limit,
        format!(
            "{detail}; {:.2}s (limit {}s)",
            took.as_secs_f64(),
            limit.as_secs()
        ),
    ))
}

fn suites(cfg: &VerifyConfig, names: &[&str]) -> Outcome {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let reports: Vec<SuiteReport> = run(cfg, &names)?;
    let ok = reports.iter().all(|r| r.passed());
    let detail = reports
        .iter()
        .map(|r| {
            let first = r
                .counterexamples
                .first()
                .map(|c| format!(" [{c}]"))
                .unwrap_or_default();
            format!(
                "{}: {} cases, {} failures{first}",
                r.name, r.cases, r.failures
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let p0 = AugmentedPoset::new(lambda())?;
        let (u, w) = (word(&p0, "11"), word(&p0, "333"));
        let lim = Limits::default();
        let f = mobius_value(&p0, &u, &w)?;
        let o = mobius_oracle(&p0, &u, &w, &lim)?;
        let m = mobius_morse(&p0, &u, &w, &lim)?;
        Ok((
            f == 5 && o == 5 && m == 5,
            format!("formula={f} oracle={o} morse={m}"),
        ))
    })
}

fn criterion_2() -> Outcome {
    let p0 = AugmentedPoset::new(lambda())?;
    let (u, w) = (word(&p0, "11"), word(&p0, "333"));
    let report = mobius_main(&p0, &u, &w)?;
    let mut got = BTreeMap::new();
    let mut agree = true;
    for t in &report.per_embedding {
        got.insert(t.embedding.display(&p0).to_string(), t.product);
        agree &= per_embedding_mu(&p0, &t.embedding, &w, &Limits::default())? == t.product;
    }
    let want: BTreeMap<String, i64> = [("110", 2), ("101", 2), ("011", 1)]
        .iter()
        .map(|&(e, v)| (e.to_owned(), v))
        .collect();
    Ok((
        got == want && agree,
        format!("contributions {got:?}, morse per-embedding agrees: {agree}"),
    ))
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(30), || {
        let p0 = AugmentedPoset::new(lambda())?;
        let (u, w) = (Word::empty(), word(&p0, "33333"));
        let lim = Limits::default();
        let f = mobius_value(&p0, &u, &w)?;
        let o = mobius_oracle(&p0, &u, &w, &lim)?;
        let d = build_interval(&p0, &u, &w, &lim)?;
        let edges = d.edges().len();
        Ok((
            f == 16 && o == 16 && edges == 1904,
            format!("formula={f} oracle={o} nodes={} edges={edges}", d.len()),
        ))
    })
}

fn criterion_4() -> Outcome {
    let p0 = AugmentedPoset::new(fig3())?;
    let (u, w) = (word(&p0, "2"), word(&p0, "29"));
    let lim = Limits::default();
    let crit = critical_chains(&p0, &u, &w, &lim)?;
    let mut dims: Vec<i64> = crit.iter().map(|d| d.critical_dimension).collect();
    dims.sort_unstable();
    let mut flat: Vec<String> = crit
        .iter()
        .filter(|d| d.critical_dimension == 0)
        .map(|d| d.chain.display(p0.base()).to_string())
        .collect();
    flat.sort();
    let sum: i64 = crit.iter().map(|d| d.sign()).sum();
    let f = mobius_value(&p0, &u, &w)?;
    let o = mobius_oracle(&p0, &u, &w, &lim)?;
    let ok = crit.len() == 4
        && dims == [0, 0, 1, 1]
        && sum == 0
        && f == 0
        && o == 0
        && flat == ["29 > 25 > 21 > 2", "29 > 28 > 23 > 2"];
    Ok((ok, format!("{} critical chains, dimensions {dims:?}, d=0 chains {flat:?}, morse={sum} formula={f} oracle={o}", crit.len())))
}

fn criterion_5(cfg: &VerifyConfig) -> Outcome {
    timed(Duration::from_secs(300), || {
        suites(cfg, &["oracle", "morse"])
    })
}

fn criterion_6(cfg: &VerifyConfig) -> Outcome {
    suites(cfg, &["antichain"])
}

fn criterion_7(cfg: &VerifyConfig) -> Outcome {
    suites(cfg, &["forest"])
}

fn criterion_8(cfg: &VerifyConfig) -> Outcome {
    let (mut ok, mut detail) = suites(cfg, &["chebyshev"])?;
    let recurrence = (0..=20).all(|n| chebyshev_t(n) == chebyshev_t_closed(n));
    let mut closed = true;
    for j in 1..=8usize {
        for i in 0..=j {
            closed &= lambda_closed_form(i, j)?
                == verify_chebyshev(2, i, j, false, &cfg.limits)?.mu as i128;
        }
    }
    ok &= recurrence && closed;
    detail.push_str(&format!(
        "; recurrence=closed form: {recurrence}; mobius closed form: {closed}"
    ));
    Ok((ok, detail))
}

fn criterion_9(cfg: &VerifyConfig) -> Outcome {
    suites(cfg, &["homotopy"])
}

fn criterion_10(cfg: &VerifyConfig) -> Outcome {
    let (mut ok, mut detail) = suites(cfg, &["lemmas"])?;
    // One embedding checked directly: 20 as an embedding of 2 in 29 over fig3.
    let p0 = AugmentedPoset::new(fig3())?;
    let w = word(&p0, "29");
    let eta = Embedding::parse(&p0, "20", &w)?;
    let c = contribution(&p0, &eta, &w)?;
    let m = per_embedding_mu(&p0, &eta, &w, &Limits::default())?;
    let want = p0.mobius0(p0.zero(), p0.base().id_of("9").expect("fig3 has 9"))?;
    ok &= c == want && m == want;
    detail.push_str(&format!(
        "; fig3 embedding 20 of 2 in 29: contribution={c} critical={m} mu0(0,9)={want}"
    ));
    Ok((ok, detail))
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let criteria: Vec<(&str, Check)> = vec![
        (
            "mu(11, 333) = 5 by formula, oracle and Morse",
            Box::new(criterion_1),
        ),
        (
            "per-embedding contributions of (11, 333)",
            Box::new(criterion_2),
        ),
        (
            "mu(∅, 33333) = 16 and 1904 Hasse edges",
            Box::new(criterion_3),
        ),
        ("fig3 [2, 29] critical chains", Box::new(criterion_4)),
        (
            "formula = oracle = Morse sweep",
            Box::new(|| criterion_5(&cfg)),
        ),
        ("antichain specialization", Box::new(|| criterion_6(&cfg))),
        (
            "rooted-forest specialization",
            Box::new(|| criterion_7(&cfg)),
        ),
        ("Chebyshev coefficients", Box::new(|| criterion_8(&cfg))),
        (
            "homotopy reports and chain purity",
            Box::new(|| criterion_9(&cfg)),
        ),
        ("lemma suite", Box::new(|| criterion_10(&cfg))),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {}: {title} ({detail})",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
