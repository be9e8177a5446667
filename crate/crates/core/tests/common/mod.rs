//! Helpers shared by the integration tests.

#![allow(dead_code)]

pub mod rewrite;

use thompson_core::format::parse_automorphism;
use thompson_core::{parse_word, Automorphism, SimpleWord, Word};

/// Loads a bundled example from `data/`.
pub fn load(name: &str) -> Automorphism {
    let path = format!("{}/../../data/{name}.thm", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_automorphism(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Parses a word in the signature of `psi`.
pub fn word(psi: &Automorphism, text: &str) -> Word {
    parse_word(&psi.sig(), text).unwrap()
}

/// Parses a simple word in the signature of `psi`.
pub fn simple(psi: &Automorphism, text: &str) -> SimpleWord {
    word(psi, text).as_simple().cloned().unwrap()
}

/// Canonical text of a list of simple words.
pub fn names(words: &[SimpleWord]) -> Vec<String> {
    words.iter().map(|w| w.to_string()).collect()
}

/// `w ψ^k` by repeated application of `ψ` or its inverse.
pub fn brute_power(psi: &Automorphism, w: &Word, k: i64) -> Word {
    psi.apply_power(&psi.inverse(), w, k)
}
