//! GF(2) words, matrices and linear codes.

mod code;
mod cosets;
mod io;
mod matrix;
mod word;

pub(crate) use code::reed_muller_clamped;
pub use code::{
    dual_code, enumerate_codewords, enumeration_cap, gf2_rank, hamming_code, reed_muller,
    set_enumeration_cap, simplex_code, BinaryLinearCode, CodeFamily, Codewords,
    DEFAULT_ENUMERATION_CAP,
};
pub use cosets::{coset_decompose, coset_weight_enumerator, CosetDecomposition};
pub use io::{format_code, load_code, parse_code, save_code, MatrixKind};
pub use matrix::{BitMatrix, Echelon};
pub use word::{reverse_low_bits, BitWord};
