//! Fixed inputs shared by the benchmarks.

use euler_core::words::words_up_to;
use euler_core::Word;

/// A word of length `len` alternating weights 1 and 2, cycling roots through `0..r`.
pub fn sample_word(len: usize, r: u32) -> Word {
    let pairs: Vec<(u32, u32)> = (0..len).map(|k| (1 + (k % 2) as u32, k as u32 % r)).collect();
    Word::from_pairs(&pairs, r).expect("roots reduced mod r")
}

/// Every word with degree and length bounded as given.
pub fn all_words(max_degree: u32, max_len: usize, r: u32) -> Vec<Word> {
    words_up_to(max_degree, max_len, r).expect("positive r")
}
