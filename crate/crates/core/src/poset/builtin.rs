use super::FinitePoset;
use crate::error::{Error, Result};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["chain:n", "antichain:n", "lambda", "lambda:s", "fig3"];

/// The chain `1 < 2 < ... < n`.
pub fn chain(n: usize) -> FinitePoset {
    let covers = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::new(FinitePoset::numbered_names(n), covers).expect("chain is a valid poset")
}

/// `n` pairwise incomparable elements `1..=n`.
pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::new(FinitePoset::numbered_names(n), Vec::new())
        .expect("antichain is a valid poset")
}

/// An `s`-element antichain `1..=s` with a top `s + 1` added.
pub fn lambda_s(s: usize) -> FinitePoset {
    let covers = (0..s).map(|i| (i, s)).collect();
    FinitePoset::new(FinitePoset::numbered_names(s + 1), covers).expect("lambda_s is a valid poset")
}

/// The three-element poset with `3` covering both `1` and `2`.
pub fn lambda() -> FinitePoset {
    lambda_s(2)
}

/// Nine elements in three levels: `5 > 1`, `6 > 1, 2`, `7 > 2`, `8 > 3, 4`,
/// and `9` covering `5, 6, 7, 8`.
pub fn fig3() -> FinitePoset {
    let e = |k: usize| k - 1;
    let covers = vec![
        (e(1), e(5)),
        (e(1), e(6)),
        (e(2), e(6)),
        (e(2), e(7)),
        (e(3), e(8)),
        (e(4), e(8)),
        (e(5), e(9)),
        (e(6), e(9)),
        (e(7), e(9)),
        (e(8), e(9)),
    ];
    FinitePoset::new(FinitePoset::numbered_names(9), covers).expect("fig3 is a valid poset")
}

fn size_arg(spec: &str, arg: &str) -> Result<usize> {
    arg.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::input(format!("bad size in built-in poset {spec:?}")))
}

/// Resolves a built-in poset by name: `chain:n`, `antichain:n`, `lambda`,
/// `lambda:s` or `fig3`.
pub fn builtin(spec: &str) -> Result<FinitePoset> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, arg) {
        ("chain", Some(a)) => Ok(chain(size_arg(spec, a)?)),
        ("antichain", Some(a)) => Ok(antichain(size_arg(spec, a)?)),
        ("lambda", None) => Ok(lambda()),
        ("lambda", Some(a)) => Ok(lambda_s(size_arg(spec, a)?)),
        ("fig3", None) => Ok(fig3()),
        _ => Err(Error::input(format!(
            "unknown built-in poset {spec:?}; expected one of {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_names() {
        assert_eq!(builtin("chain:4").unwrap().len(), 4);
        assert_eq!(builtin("antichain:3").unwrap().covers().len(), 0);
        assert_eq!(builtin("lambda").unwrap(), lambda());
        assert_eq!(builtin("lambda:2").unwrap(), lambda());
        assert_eq!(builtin("lambda:4").unwrap().len(), 5);
        assert_eq!(builtin("fig3").unwrap().covers().len(), 10);
        assert!(builtin("chain:0").is_err());
        assert!(builtin("chain").is_err());
        assert!(builtin("cube:3").is_err());
    }
}
