//! Increasing multi-indices and the sign bookkeeping for wedge, contraction,
//! complement, and shuffle splits. All exterior-algebra signs in the crate
//! funnel through this module.

/// Strictly increasing list of coordinate indices. The empty index is the
/// basis label of Λ^0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(indices: Vec<u8>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "multi-index must be strictly increasing: {indices:?}"
        );
        MultiIndex(indices)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn from_usizes(indices: &[usize]) -> Self {
        MultiIndex::new(indices.iter().map(|&i| i as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max_index(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Sign and result of dx^i ∧ dx^self; None if i already occurs.
    pub fn insert(&self, i: u8) -> Option<(MultiIndex, i32)> {
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, i);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((MultiIndex(v), sign))
            }
        }
    }

    /// Sign and result of the contraction e_i ⨼ dx^self; None if i absent.
    /// If i sits in (1-based) position a, the sign is (-1)^(a-1).
    pub fn remove(&self, i: u8) -> Option<(MultiIndex, i32)> {
        match self.0.binary_search(&i) {
            Err(_) => None,
            Ok(pos) => {
                let mut v = self.0.clone();
                v.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((MultiIndex(v), sign))
            }
        }
    }

    /// Sign and result of dx^self ∧ dx^other; None if the indices overlap.
    /// The sign is the parity of the merge that sorts the concatenation.
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, i32)> {
        let mut inversions = 0usize;
        for &a in &self.0 {
            for &b in &other.0 {
                if a == b {
                    return None;
                }
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut v: Vec<u8> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(v), sign))
    }

    /// Complementary index in dimension d.
    pub fn complement(&self, d: usize) -> MultiIndex {
        MultiIndex((0..d as u8).filter(|i| !self.contains(*i)).collect())
    }

    /// Relabel every index through `map` (must stay strictly increasing).
    pub fn relabel(&self, map: impl Fn(u8) -> u8) -> MultiIndex {
        MultiIndex::new(self.0.iter().map(|&i| map(i)).collect())
    }
}

/// All increasing k-subsets of {0, .., d-1} in lexicographic order.
pub fn subsets(d: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut current: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(MultiIndex(current.clone()));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < (d - k + i) as u8 {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All splits of `k_index` into an ordered pair (I, J) with |I| = p, together
/// with the shuffle sign relating dx^I ∧ dx^J to dx^k_index.
pub fn splits(k_index: &MultiIndex, p: usize) -> Vec<(MultiIndex, MultiIndex, i32)> {
    let k = k_index.degree();
    if p > k {
        return Vec::new();
    }
    let all = subsets(k, p);
    all.into_iter()
        .map(|positions| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (pos, &idx) in k_index.indices().iter().enumerate() {
                if positions.contains(pos as u8) {
                    left.push(idx);
                } else {
                    right.push(idx);
                }
            }
            let left = MultiIndex(left);
            let right = MultiIndex(right);
            let (_, sign) = left.merge(&right).expect("split parts are disjoint");
            (left, right, sign)
        })
        .collect()
}
