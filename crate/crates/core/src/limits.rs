use crate::error::{Error, Result};

/// Caps on the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of nodes in an explicit interval.
    pub max_nodes: usize,
    /// Maximum number of maximal chains examined per interval.
    pub max_chains: usize,
    /// Maximum length of the top word of an interval.
    pub max_word_len: usize,
}

pub const ENV_MAX_NODES: &str = "SUBWORD_MAX_NODES";
pub const ENV_MAX_CHAINS: &str = "SUBWORD_MAX_CHAINS";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 200_000,
            max_chains: 50_000,
            max_word_len: 12,
        }
    }
}

impl Limits {
    /// Defaults overridden by `SUBWORD_MAX_NODES` / `SUBWORD_MAX_CHAINS`.
    pub fn from_env() -> Result<Self> {
        Limits::default().with_env()
    }

    /// `self` with any caps set in the environment applied on top.
    pub fn with_env(mut self) -> Result<Self> {
        if let Some(n) = read_env(ENV_MAX_NODES)? {
            self.max_nodes = n;
        }
        if let Some(n) = read_env(ENV_MAX_CHAINS)? {
            self.max_chains = n;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_chains == 0 || self.max_word_len == 0 {
            return Err(Error::input("caps must be positive"));
        }
        Ok(())
    }

    /// Limits large enough for every exhaustive check in this crate's
    /// test suites.
    pub fn generous() -> Self {
        Limits {
            max_nodes: 2_000_000,
            max_chains: 5_000_000,
            max_word_len: 16,
        }
    }
}

fn read_env(key: &str) -> Result<Option<usize>> {
    match std::env::var(key) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::input(format!("{key} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}
