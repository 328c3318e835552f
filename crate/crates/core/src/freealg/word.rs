use std::cmp::Ordering;
use std::fmt;

/// A tensor word x_{w_1} ... x_{w_n}; letters are zero-based generator indices.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    /// Position in the lexicographic enumeration of all words of this length.
    pub fn rank(&self, theta: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * theta + l as usize)
    }

    pub fn unrank(mut index: usize, len: usize, theta: usize) -> Word {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (index % theta) as u8;
            index /= theta;
        }
        Word(v)
    }

    /// All words of a given length, in lexicographic order.
    pub fn all(len: usize, theta: usize) -> impl Iterator<Item = Word> {
        let count = theta.checked_pow(len as u32).expect("word count overflow");
        (0..count).map(move |i| Word::unrank(i, len, theta))
    }

    /// Multidegree: letter counts.
    pub fn multidegree(&self, theta: usize) -> Vec<u32> {
        let mut d = vec![0u32; theta];
        for &l in &self.0 {
            d[l as usize] += 1;
        }
        d
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.0.iter().map(|&l| l as usize + 1).collect();
        write!(f, "Word{one_based:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let mut ws = vec![Word(vec![1, 0]), Word(vec![2]), Word(vec![0, 0]), Word::empty()];
        ws.sort();
        assert_eq!(ws, vec![Word::empty(), Word(vec![2]), Word(vec![0, 0]), Word(vec![1, 0])]);
    }

    #[test]
    fn rank_roundtrip() {
        for (i, w) in Word::all(3, 3).enumerate() {
            assert_eq!(w.rank(3), i);
            assert_eq!(Word::unrank(i, 3, 3), w);
        }
    }
}
