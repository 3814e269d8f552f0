//! Small combinatorial helpers shared by the counting kernels.

use crate::hypergraph::VertexId;

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Calls `f` with every `k`-subset of `items`, in lexicographic position order.
pub fn for_each_subset<F: FnMut(&[VertexId])>(items: &[VertexId], k: usize, mut f: F) {
    let m = items.len();
    if k > m {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<VertexId> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < m - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
            buf[j] = items[idx[j]];
        }
    }
}

/// Hash key for a sorted vertex subset. Packs into a `u128` when the subset
/// fits, otherwise keeps the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubsetKey {
    Packed(u128),
    Wide(Box<[VertexId]>),
}

#[derive(Clone, Copy, Debug)]
pub struct KeyPacker {
    bits: u32,
}

impl KeyPacker {
    /// Packer for subsets of `[0, n)`.
    pub fn new(n: usize) -> Self {
        let bits = usize::BITS - n.max(2).saturating_sub(1).leading_zeros();
        KeyPacker { bits: bits.max(1) }
    }

    #[inline]
    pub fn key(&self, vertices: &[VertexId]) -> SubsetKey {
        if vertices.len() as u32 * self.bits < 128 {
            // leading sentinel bit keeps subsets of different sizes apart
            let mut acc: u128 = 1;
            for &v in vertices {
                acc = (acc << self.bits) | v as u128;
            }
            SubsetKey::Packed(acc)
        } else {
            SubsetKey::Wide(vertices.into())
        }
    }
}
