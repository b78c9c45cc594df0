use std::cmp::Ordering;
use std::fmt;

/// Fixed-width bitset over `1..=len`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64 || mask == 0);
        let mut s = Self::new(len);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s
    }

    /// Width of the ground set.
    pub fn width(&self) -> usize {
        self.len
    }

    /// Inserts the element `e ∈ 1..=len`.
    pub fn insert(&mut self, e: usize) {
        assert!((1..=self.len).contains(&e), "element {e} outside 1..={}", self.len);
        self.words[(e - 1) / 64] |= 1 << ((e - 1) % 64);
    }

    pub fn contains(&self, e: usize) -> bool {
        (1..=self.len).contains(&e) && self.words[(e - 1) / 64] >> ((e - 1) % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b + 1))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The low word, for widths up to 64.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl Ord for BitSet {
    /// Lexicographic on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
