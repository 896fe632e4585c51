use crate::ainf::{enumerate_cyclic_words, word_weight2, Word};
use crate::hoch::chain::word_hdegree;

/// Weight-parity filter on the (integer) total word weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightParity {
    Odd,
    Even,
    Any,
}

/// Deterministically ordered basis of a graded sector of cyclic words.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub words: Vec<Word>,
    pub degree: i64,
    pub max_len: usize,
    /// Pre-filter counts of all cyclic words per length (the transfer-matrix
    /// numbers `3^L + 1`).
    pub prefilter_counts: Vec<(usize, usize)>,
}

impl SectorBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }
}

/// Enumerates all cyclically composable words of length up to `max_len` in
/// the given homological degree, filtered by weight parity. Ordering is
/// deterministic: by length, then lexicographically in the generator order.
pub fn enumerate_sector(max_len: usize, degree: i64, parity: WeightParity) -> SectorBasis {
    let mut words = Vec::new();
    let mut prefilter = Vec::new();
    for len in 1..=max_len {
        let all = enumerate_cyclic_words(len);
        prefilter.push((len, all.len()));
        let mut sel: Vec<Word> = all
            .into_iter()
            .filter(|w| word_hdegree(w) == degree)
            .filter(|w| !crate::hoch::chain::is_degenerate(w))
            .filter(|w| match parity {
                WeightParity::Any => true,
                WeightParity::Odd => {
                    let w2 = word_weight2(w);
                    w2 % 2 == 0 && (w2 / 2) % 2 == 1
                }
                WeightParity::Even => {
                    let w2 = word_weight2(w);
                    w2 % 2 == 0 && (w2 / 2) % 2 == 0
                }
            })
            .collect();
        sel.sort();
        words.extend(sel);
    }
    SectorBasis { words, degree, max_len, prefilter_counts: prefilter }
}
