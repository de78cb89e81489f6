use std::fmt;

use serde::{Deserialize, Serialize};

/// A face as a strictly increasing list of 1-based vertex ids. The empty
/// face is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn new(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension `|F| - 1`.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Face::new(v)
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn without(&self, v: usize) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: usize) -> Face {
        let mut f = self.0.clone();
        f.push(v);
        Face::new(f)
    }

    /// Position of `v` in the sorted order.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn max_vertex(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    /// All subsets of size `k`, in lexicographic order.
    pub fn subsets(&self, k: usize) -> Vec<Face> {
        let n = self.0.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { break };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        out
    }

    /// Applies a vertex map and re-sorts.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Face {
        Face::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl From<Vec<usize>> for Face {
    fn from(v: Vec<usize>) -> Self {
        Face::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for Face {
    fn from(v: [usize; N]) -> Self {
        Face::new(v.to_vec())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_lexicographically() {
        let f = Face::from([1, 2, 3, 4]);
        let s = f.subsets(2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], Face::from([1, 2]));
        assert_eq!(s[5], Face::from([3, 4]));
        assert_eq!(f.subsets(0), vec![Face::empty()]);
        assert!(f.subsets(5).is_empty());
    }

    #[test]
    fn set_operations() {
        let a = Face::from([3, 1, 2]);
        assert_eq!(a.vertices(), &[1, 2, 3]);
        assert!(Face::from([1, 3]).is_subset(&a));
        assert!(!Face::from([1, 4]).is_subset(&a));
        assert_eq!(a.minus(&Face::from([2])), Face::from([1, 3]));
        assert_eq!(a.to_string(), "{1,2,3}");
    }
}
