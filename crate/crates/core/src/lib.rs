//! Mobius functions of generalized subword order.
//!
//! For a finite poset `P`, `P*` is the set of finite words over `P`, with
//! `u <= w` when some length-`|u|` subword of `w` dominates `u` letterwise.
//! This crate evaluates `mu(u, w)` three independent ways (the embedding
//! product formula, the classical recursion over an explicit interval, and
//! a discrete Morse sum over critical chains) together with the classical
//! specializations, homotopy reports and Chebyshev coefficient checks.

pub mod chebyshev;
pub mod error;
pub mod interval;
pub mod limits;
pub mod mobius;
pub mod morse;
pub mod poset;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use interval::{build_interval, DownSets, IntervalDiagram};
pub use limits::Limits;
pub use mobius::{mobius_main, mobius_oracle, HomotopyReport, Method, MobiusReport};
pub use morse::{
    critical_chains, label_chain, mobius_morse, per_embedding_mu, Label, LabeledChain,
    MsiDecomposition,
};
pub use poset::{AugmentedPoset, FinitePoset, NaturalLabeling};
pub use word::{embeddings, is_leq_words, rightmost_embedding, runs, Embedding, Run, Word};
