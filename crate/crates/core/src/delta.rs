//! Arithmetic in the simplex category: monotone maps `[m] -> [n]`, composition
//! and the epi-mono (degeneracy-face) factorization.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::DeltaError;

/// A weakly increasing map `[source_rank] -> [target_rank]` stored as its
/// list of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    source_rank: usize,
    target_rank: usize,
    values: Vec<usize>,
}

/// The unique factorization `mono ∘ epi` of a monotone map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiMonoPair {
    pub epi: MonotoneMap,
    pub mono: MonotoneMap,
}

impl MonotoneMap {
    pub fn new(target_rank: usize, values: Vec<usize>) -> Result<Self, DeltaError> {
        if values.is_empty() {
            return Err(DeltaError::EmptySource);
        }
        for w in values.windows(2) {
            if w[0] > w[1] {
                return Err(DeltaError::NotMonotone(values.clone()));
            }
        }
        if let Some(&v) = values.iter().find(|&&v| v > target_rank) {
            return Err(DeltaError::ValueOutOfRange {
                value: v,
                target_rank,
            });
        }
        Ok(MonotoneMap {
            source_rank: values.len() - 1,
            target_rank,
            values,
        })
    }

    pub(crate) fn from_values_unchecked(target_rank: usize, values: Vec<usize>) -> Self {
        debug_assert!(!values.is_empty());
        MonotoneMap {
            source_rank: values.len() - 1,
            target_rank,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap::from_values_unchecked(n, (0..=n).collect())
    }

    /// The coface `d_i : [n-1] -> [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, DeltaError> {
        if n == 0 || i > n {
            return Err(DeltaError::BadOperatorIndex { rank: n, index: i });
        }
        let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
        Ok(MonotoneMap::from_values_unchecked(n, values))
    }

    /// The codegeneracy `s_i : [n+1] -> [n]` repeating `i`.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, DeltaError> {
        if i > n {
            return Err(DeltaError::BadOperatorIndex { rank: n, index: i });
        }
        let values = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        Ok(MonotoneMap::from_values_unchecked(n, values))
    }

    /// Constant map `[m] -> [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Result<Self, DeltaError> {
        MonotoneMap::new(n, vec![v; m + 1])
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank == self.target_rank && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target_rank
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &MonotoneMap, inner: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
        if inner.target_rank != outer.source_rank {
            return Err(DeltaError::RankMismatch {
                expected: outer.source_rank,
                found: inner.target_rank,
            });
        }
        let values = inner.values.iter().map(|&v| outer.values[v]).collect();
        Ok(MonotoneMap::from_values_unchecked(outer.target_rank, values))
    }

    pub fn then(&self, outer: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
        MonotoneMap::compose(outer, self)
    }

    pub fn epi_mono_factor(&self) -> EpiMonoPair {
        let mut image: Vec<usize> = Vec::with_capacity(self.values.len());
        let mut epi_values = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi_values.push(image.len() - 1);
        }
        let k = image.len() - 1;
        EpiMonoPair {
            epi: MonotoneMap::from_values_unchecked(k, epi_values),
            mono: MonotoneMap::from_values_unchecked(self.target_rank, image),
        }
    }

    /// Degeneracy indices of a surjection, strictly decreasing: the map equals
    /// `s_{i_r} ∘ ... ∘ s_{i_1}` as an operator on simplices, read as the word
    /// `s_{i_1} ... s_{i_r}` applied to a simplex.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let pair = self.epi_mono_factor();
        let mut word: Vec<usize> = (0..pair.epi.source_rank)
            .filter(|&j| pair.epi.values[j] == pair.epi.values[j + 1])
            .collect();
        word.reverse();
        word
    }

    /// Face indices of the mono part, strictly increasing.
    pub fn face_word(&self) -> Vec<usize> {
        let pair = self.epi_mono_factor();
        let image = &pair.mono.values;
        (0..=self.target_rank).filter(|v| image.binary_search(v).is_err()).collect()
    }

    /// Surjection `[n] -> [n - word.len()]` with the given degeneracy word
    /// (strictly decreasing indices, each `< n`).
    pub fn surjection_from_word(n: usize, word: &[usize]) -> Result<MonotoneMap, DeltaError> {
        let mask = word_to_mask(n, word)?;
        Ok(surjection_from_mask(n, mask))
    }

    /// Enumerates all monotone maps `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut values = vec![0usize; m + 1];
        loop {
            out.push(MonotoneMap::from_values_unchecked(n, values.clone()));
            // next weakly increasing sequence
            let mut i = m as isize;
            while i >= 0 && values[i as usize] == n {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            let v = values[i as usize] + 1;
            for slot in values.iter_mut().skip(i as usize) {
                *slot = v;
            }
        }
        out
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}):[{}]->[{}]", vals.join(","), self.source_rank, self.target_rank)
    }
}

// ---------------------------------------------------------------------------
// Bitmask encodings used on the hot paths.
//
// A surjection `[n] -> [k]` is encoded by the set of positions `j < n` with
// `s(j) == s(j+1)`; an injection into `[k]` by the set of its image points.

pub(crate) type Mask = u32;


pub(crate) fn word_to_mask(n: usize, word: &[usize]) -> Result<Mask, DeltaError> {
    let mut mask: Mask = 0;
    for (idx, &i) in word.iter().enumerate() {
        if idx > 0 && word[idx - 1] <= i {
            return Err(DeltaError::WordNotDecreasing(word.to_vec()));
        }
        if i >= n {
            return Err(DeltaError::BadOperatorIndex { rank: n, index: i });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

pub(crate) fn mask_to_word(mask: Mask) -> Vec<usize> {
    let mut word: Vec<usize> = (0..32).filter(|i| mask & (1 << i) != 0).collect();
    word.reverse();
    word
}

/// Values of the surjection `[n] -> [n - |mask|]` with repeat set `mask`.
pub(crate) fn surjection_values(n: usize, mask: Mask) -> Vec<usize> {
    let mut values = Vec::with_capacity(n + 1);
    let mut v = 0;
    values.push(0);
    for j in 0..n {
        if mask & (1 << j) == 0 {
            v += 1;
        }
        values.push(v);
    }
    values
}

pub(crate) fn surjection_from_mask(n: usize, mask: Mask) -> MonotoneMap {
    let values = surjection_values(n, mask);
    let k = *values.last().unwrap();
    MonotoneMap::from_values_unchecked(k, values)
}

/// Removes the bit positions in `remove` from `mask`, compacting higher bits
/// downwards.
pub(crate) fn compress_mask(mask: Mask, remove: Mask) -> Mask {
    let mut out = 0;
    let mut pos = 0;
    for j in 0..32 {
        if remove & (1 << j) != 0 {
            continue;
        }
        if mask & (1 << j) != 0 {
            out |= 1 << pos;
        }
        pos += 1;
    }
    out
}

/// Repeat mask of `first` followed by `second` where `first : [n] -> [k]` has
/// mask `inner` and `second : [k] -> [j]` has mask `outer`, i.e. the mask of
/// `second ∘ first`.
pub(crate) fn compose_surjection_masks(n: usize, inner: Mask, outer: Mask) -> Mask {
    let mut mask = 0;
    let mut a = 0;
    for j in 0..n {
        if inner & (1 << j) != 0 {
            mask |= 1 << j;
        } else {
            if outer & (1 << a) != 0 {
                mask |= 1 << j;
            }
            a += 1;
        }
    }
    mask
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All subsets of `{0..n-1}` of size `k`, as masks, in increasing numeric order
/// of the reversed bit string (lexicographic on sorted index lists).
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(n: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let outer = mm(2, &[0, 2]);
        let inner = mm(1, &[0, 0, 1]);
        assert_eq!(MonotoneMap::compose(&outer, &inner).unwrap(), mm(2, &[0, 0, 2]));
        let f = mm(3, &[0, 2, 3]);
        assert_eq!(MonotoneMap::compose(&MonotoneMap::identity(3), &f).unwrap(), f);
        let s0 = MonotoneMap::degeneracy(0, 0).unwrap();
        let d0 = MonotoneMap::face(1, 0).unwrap();
        assert_eq!(s0, mm(0, &[0, 0]));
        assert_eq!(d0, mm(1, &[1]));
        assert!(MonotoneMap::compose(&s0, &d0).unwrap().is_identity());
    }

    #[test]
    fn compose_rank_mismatch() {
        let err = MonotoneMap::compose(&mm(2, &[0, 1]), &mm(2, &[0, 1, 2]));
        assert!(matches!(err, Err(DeltaError::RankMismatch { .. })));
    }

    #[test]
    fn invalid_maps_rejected() {
        assert!(MonotoneMap::new(2, vec![1, 0]).is_err());
        assert!(MonotoneMap::new(1, vec![0, 2]).is_err());
        assert!(MonotoneMap::new(1, vec![]).is_err());
    }

    #[test]
    fn factor_examples() {
        let pair = mm(2, &[0, 0, 2]).epi_mono_factor();
        assert_eq!(pair.epi, mm(1, &[0, 0, 1]));
        assert_eq!(pair.mono, mm(2, &[0, 2]));
        let inj = mm(4, &[1, 3, 4]);
        let pair = inj.epi_mono_factor();
        assert!(pair.epi.is_identity());
        assert_eq!(pair.mono, inj);
        let surj = mm(2, &[0, 1, 1, 2]);
        let pair = surj.epi_mono_factor();
        assert_eq!(pair.epi, surj);
        assert!(pair.mono.is_identity());
    }

    #[test]
    fn words() {
        // s_2 s_0 applied to an edge: repeats at 0 and 2
        let s = mm(1, &[0, 0, 1, 1]);
        assert_eq!(s.degeneracy_word(), vec![2, 0]);
        assert_eq!(MonotoneMap::surjection_from_word(3, &[2, 0]).unwrap(), s);
        assert_eq!(mm(4, &[0, 2, 4]).face_word(), vec![1, 3]);
        assert!(MonotoneMap::surjection_from_word(3, &[0, 2]).is_err());
        assert!(MonotoneMap::surjection_from_word(3, &[3]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for m in 0..=5 {
            for n in 0..=5 {
                assert_eq!(MonotoneMap::all(m, n).len() as u128, binomial(m + n + 1, n));
            }
        }
    }

    #[test]
    fn mask_helpers() {
        assert_eq!(surjection_values(3, 0b101), vec![0, 0, 1, 1]);
        assert_eq!(mask_to_word(0b101), vec![2, 0]);
        assert_eq!(word_to_mask(3, &[2, 0]).unwrap(), 0b101);
        assert_eq!(compress_mask(0b1011, 0b0010), 0b101);
        // s_0 then s_0: [2] -> [1] -> [0]
        assert_eq!(compose_surjection_masks(2, 0b01, 0b1), 0b11);
        assert_eq!(subsets_of_size(4, 2).len(), 6);
    }
}
