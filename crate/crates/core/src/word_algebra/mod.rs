//! Omega-rows, standard forms of `V_{n,r}` and A-bases.

mod basis;
mod word;

pub use basis::{
    is_basis, minimal_common_expansion, minimal_expansion_where, ABasis, Location,
};
pub use word::{
    equal_words, is_initial_segment, parse_row, parse_word, reduce, validate_row, OmegaRow,
    Signature, SimpleWord, Token, Word,
};
