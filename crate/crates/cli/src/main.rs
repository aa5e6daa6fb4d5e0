use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subword_core::chebyshev::{tomie_t, verify_chebyshev};
use subword_core::mobius::{homotopy_type, mobius_main, mobius_oracle};
use subword_core::poset::FinitePoset;
use subword_core::verify::{self, Fault, VerifyConfig, SUITES};
use subword_core::{
    build_interval, critical_chains, mobius_morse, AugmentedPoset, Error, Limits, Word,
};

/// Mobius functions and critical chains of generalized subword order.
#[derive(Debug, Parser)]
#[command(name = "subword", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest interval (in nodes) to build [env: SUBWORD_MAX_NODES]
    #[arg(long, global = true)]
    max_nodes: Option<usize>,

    /// Most maximal chains to walk per interval [env: SUBWORD_MAX_CHAINS]
    #[arg(long, global = true)]
    max_chains: Option<usize>,

    /// Longest top word accepted
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute mu(u, w).
    Mobius {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build the interval [u, w] and export its Hasse diagram.
    Interval {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the critical chains of [u, w].
    CriticalChains {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare Mobius values on lambda:s with polynomial coefficients.
    Chebyshev {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Also compute each value with the recursion oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Homotopy type of [u, w] for posets of rank at most one.
    Homotopy {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the property suites.
    Verify {
        /// Random poset count, as `random:N`.
        #[arg(long)]
        posets: Option<String>,
        /// Longest top word in the generic sweeps.
        #[arg(long)]
        max_w: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Suite to run; repeatable. Defaults to all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Deliberately break the formula (debug builds only).
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct Pair {
    /// Built-in poset (chain:n, antichain:n, lambda, lambda:s, fig3) or a JSON file.
    #[arg(long)]
    poset: String,
    /// Lower word; empty by default.
    #[arg(long, default_value = "")]
    u: String,
    /// Upper word.
    #[arg(long)]
    w: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Morse,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    FlipSign,
}

/// How a command ended, beyond library errors.
enum Failure {
    Lib(Error),
    /// Checks ran and something disagreed; the report is already printed.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<String, Failure>;

struct Loaded {
    p0: AugmentedPoset,
    u: Word,
    w: Word,
}

impl Pair {
    fn load(&self) -> Result<Loaded, Error> {
        let p = FinitePoset::load(&self.poset)?;
        let u = Word::parse(&p, &self.u)?;
        let w = Word::parse(&p, &self.w)?;
        Ok(Loaded {
            p0: AugmentedPoset::new(p)?,
            u,
            w,
        })
    }
}

impl Loaded {
    fn show(&self, v: &Word) -> String {
        v.display(self.p0.base()).to_string()
    }
}

fn limits(cli: &Cli, base: Limits) -> Result<Limits, Error> {
    let mut l = base.with_env()?;
    if let Some(n) = cli.max_nodes {
        l.max_nodes = n;
    }
    if let Some(n) = cli.max_chains {
        l.max_chains = n;
    }
    if let Some(n) = cli.max_word_len {
        l.max_word_len = n;
    }
    l.validate()?;
    Ok(l)
}

fn no_dot(format: Format, cmd: &str) -> Result<(), Error> {
    if format == Format::Dot {
        return Err(Error::Input(format!(
            "{cmd} has no dot output; use text or json"
        )));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn cmd_mobius(pair: &Pair, method: MethodArg, format: Format, lim: &Limits) -> CmdResult {
    no_dot(format, "mobius")?;
    let l = pair.load()?;
    let report = mobius_main(&l.p0, &l.u, &l.w)?;
    let mut values = Vec::new();
    if matches!(method, MethodArg::Formula | MethodArg::All) {
        values.push(("formula", report.value));
    }
    if matches!(method, MethodArg::Oracle | MethodArg::All) {
        values.push(("oracle", mobius_oracle(&l.p0, &l.u, &l.w, lim)?));
    }
    if matches!(method, MethodArg::Morse | MethodArg::All) {
        values.push(("morse", mobius_morse(&l.p0, &l.u, &l.w, lim)?));
    }
    let agree = values.iter().all(|&(_, v)| v == values[0].1);
    let value = values[0].1;

    let out = match format {
        Format::Json => {
            let mut j =
                serde_json::to_value(report.to_json_value(&l.p0)).expect("report serializes");
            j["value"] = json!(value);
            j["method"] = json!(match method {
                MethodArg::Formula => "formula",
                MethodArg::Oracle => "oracle",
                MethodArg::Morse => "morse",
                MethodArg::All => "all",
            });
            j["values"] = Value::Object(
                values
                    .iter()
                    .map(|&(k, v)| (k.to_owned(), json!(v)))
                    .collect(),
            );
            j["agree"] = json!(agree);
            pretty(&j)
        }
        _ => {
            let mut s = String::new();
            let (u, w) = (l.show(&l.u), l.show(&l.w));
            if agree {
                writeln!(s, "mu({u}, {w}) = {value}").unwrap();
            } else {
                writeln!(s, "mu({u}, {w}): methods disagree").unwrap();
            }
            if report.incomparable {
                writeln!(s, "{u} is not below {w}").unwrap();
            }
            if values.len() > 1 {
                for (name, v) in &values {
                    writeln!(s, "  {name}: {v}").unwrap();
                }
                if agree {
                    writeln!(s, "all methods agree").unwrap();
                }
            }
            if method != MethodArg::Oracle && method != MethodArg::Morse {
                for t in &report.per_embedding {
                    let factors: Vec<String> = t.factors.iter().map(i64::to_string).collect();
                    writeln!(
                        s,
                        "  eta={}  factors=[{}]  product={}",
                        t.embedding.display(&l.p0),
                        factors.join(", "),
                        t.product
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    if agree {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification)
    }
}

fn cmd_interval(pair: &Pair, format: Format, lim: &Limits) -> CmdResult {
    let l = pair.load()?;
    let d = build_interval(&l.p0, &l.u, &l.w, lim)?;
    let p = l.p0.base();
    Ok(match format {
        Format::Dot => {
            eprintln!("nodes={}, edges={}", d.len(), d.edges().len());
            d.to_dot(p)
        }
        Format::Json => d.to_json(p) + "\n",
        Format::Text => {
            let mut s = format!("nodes={}, edges={}\n", d.len(), d.edges().len());
            for r in (0..=d.height()).rev() {
                let layer: Vec<String> = (0..d.len())
                    .filter(|&i| d.ranks()[i] == r)
                    .map(|i| l.show(d.node(i)))
                    .collect();
                writeln!(s, "rank {r}: {}", layer.join(" ")).unwrap();
            }
            s
        }
    })
}

fn cmd_critical_chains(pair: &Pair, format: Format, lim: &Limits) -> CmdResult {
    no_dot(format, "critical-chains")?;
    let l = pair.load()?;
    let crit = critical_chains(&l.p0, &l.u, &l.w, lim)?;
    let total: i64 = crit.iter().map(|d| d.sign()).sum();
    Ok(match format {
        Format::Json => {
            let chains: Vec<_> = crit.iter().map(|d| d.to_json_value(&l.p0)).collect();
            pretty(&json!({
                "u": l.show(&l.u),
                "w": l.show(&l.w),
                "chains": chains,
                "mobius": total,
            }))
        }
        _ => {
            let mut s = String::new();
            for d in &crit {
                let js: Vec<String> = d
                    .j_intervals
                    .iter()
                    .map(|&(a, b)| format!("[{a},{b}]"))
                    .collect();
                writeln!(
                    s,
                    "{}  labels={}  J={{{}}}  d={}  sign={:+}",
                    d.chain.display(l.p0.base()),
                    d.chain.display_labels(&l.p0),
                    js.join(","),
                    d.critical_dimension,
                    d.sign()
                )
                .unwrap();
            }
            writeln!(s, "{} critical chains, signed count {total}", crit.len()).unwrap();
            s
        }
    })
}

fn cmd_chebyshev(s: u32, max_n: usize, oracle: bool, format: Format, lim: &Limits) -> CmdResult {
    no_dot(format, "chebyshev")?;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for i in 0..=n / 2 {
            rows.push(verify_chebyshev(s, i, n - i, oracle, lim)?);
        }
    }
    let all_equal = rows.iter().all(|r| r.equal);
    let out = match format {
        Format::Json => {
            pretty(&json!({ "s": s, "max_n": max_n, "rows": rows, "all_equal": all_equal }))
        }
        _ => {
            let mut t = String::new();
            for n in 1..=max_n {
                writeln!(t, "T^{s}_{n} = {}", tomie_t(s, n)?).unwrap();
            }
            let header = if oracle {
                "n  i  j  mu  coeff  oracle  equal"
            } else {
                "n  i  j  mu  coeff  equal"
            };
            writeln!(t, "{header}").unwrap();
            for r in &rows {
                let o = r.oracle.map(|v| format!("{v}  ")).unwrap_or_default();
                writeln!(
                    t,
                    "{}  {}  {}  {}  {}  {o}{}",
                    r.i + r.j,
                    r.i,
                    r.j,
                    r.mu,
                    r.coeff,
                    r.equal
                )
                .unwrap();
            }
            writeln!(t, "all equal: {all_equal}").unwrap();
            t
        }
    };
    if all_equal {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification)
    }
}

fn cmd_homotopy(pair: &Pair, format: Format, lim: &Limits) -> CmdResult {
    no_dot(format, "homotopy")?;
    let l = pair.load()?;
    let h = homotopy_type(&l.p0, &l.u, &l.w, lim)?;
    Ok(match format {
        Format::Json => pretty(&json!(h)),
        _ => format!("{h}\n"),
    })
}

fn parse_posets(spec: &str) -> Result<usize, Error> {
    spec.strip_prefix("random:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Input(format!("--posets expects random:N, got {spec:?}")))
}

fn cmd_verify(
    posets: Option<&str>,
    max_w: Option<usize>,
    seed: Option<u64>,
    suites: &[String],
    fault: Option<FaultArg>,
    format: Format,
    lim: Limits,
) -> CmdResult {
    no_dot(format, "verify")?;
    if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(Error::Input(format!(
            "unknown suite {bad:?}; expected one of {}",
            SUITES.join(", ")
        ))
        .into());
    }
    if fault.is_some() && !cfg!(debug_assertions) {
        return Err(Error::Input("--inject-fault is only available in debug builds".into()).into());
    }
    let mut cfg = VerifyConfig {
        limits: lim,
        ..VerifyConfig::default()
    };
    if let Some(spec) = posets {
        cfg.random_posets = parse_posets(spec)?;
    }
    if let Some(m) = max_w {
        cfg.max_w = m;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.fault = fault.map(|FaultArg::FlipSign| Fault::FlipSign);
    let reports = verify::run(&cfg, suites)?;
    let passed = reports.iter().all(|r| r.passed());
    let out = match format {
        Format::Json => pretty(&json!({ "suites": reports, "passed": passed })),
        _ => {
            let mut s = format!("{:<10} {:>8} {:>8}  status\n", "suite", "cases", "failures");
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                writeln!(
                    s,
                    "{:<10} {:>8} {:>8}  {status}",
                    r.name, r.cases, r.failures
                )
                .unwrap();
            }
            for r in reports.iter().filter(|r| !r.passed()) {
                for c in &r.counterexamples {
                    writeln!(s, "counterexample [{}]: {c}", r.name).unwrap();
                }
            }
            writeln!(
                s,
                "{}",
                if passed {
                    "all suites passed"
                } else {
                    "verification failed"
                }
            )
            .unwrap();
            s
        }
    };
    if passed {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification)
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Mobius {
            pair,
            method,
            format,
        } => cmd_mobius(pair, *method, *format, &limits(cli, Limits::default())?),
        Command::Interval { pair, format } => {
            cmd_interval(pair, *format, &limits(cli, Limits::default())?)
        }
        Command::CriticalChains { pair, format } => {
            cmd_critical_chains(pair, *format, &limits(cli, Limits::default())?)
        }
        Command::Chebyshev {
            s,
            max_n,
            oracle,
            format,
        } => cmd_chebyshev(
            *s,
            *max_n,
            *oracle,
            *format,
            &limits(cli, Limits::default())?,
        ),
        Command::Homotopy { pair, format } => {
            cmd_homotopy(pair, *format, &limits(cli, Limits::default())?)
        }
        Command::Verify {
            posets,
            max_w,
            seed,
            suites,
            inject_fault,
            format,
        } => cmd_verify(
            posets.as_deref(),
            *max_w,
            *seed,
            suites,
            *inject_fault,
            *format,
            limits(cli, Limits::generous())?,
        ),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Domain(_) | Error::Unsupported(_) => 2,
        Error::Resource(_) | Error::Overflow(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("subword: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
