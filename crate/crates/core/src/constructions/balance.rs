//! Weight-balanced binary shapes over an ordered sequence of weighted items.
//!
//! Item `i` gets the interval `[P_i, P_i + w_i)` of `[0, W)`. The shape is the
//! trie of item midpoints under repeated halving of `[0, W)`, with unary
//! levels skipped. An item is alone once the dyadic cell around its midpoint
//! is narrower than half its interval, which bounds its leaf depth by
//! `ceil(log2(W / w_i)) + 1 <= floor(log2(W / w_i)) + 2`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("no items to balance")]
    Empty,
    #[error("item {0} has weight zero")]
    ZeroWeight(usize),
    #[error("total weight exceeds 2^60")]
    TooHeavy,
}

const MAX_TOTAL: u64 = 1 << 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeNode {
    /// Index into the input weights.
    Leaf(usize),
    /// Indices of the left and right child nodes.
    Internal(usize, usize),
}

/// Binary shape whose leaves, read left to right, are `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedShape {
    nodes: Vec<ShapeNode>,
    root: usize,
    leaves: usize,
}

impl BalancedShape {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, idx: usize) -> ShapeNode {
        self.nodes[idx]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaves
    }

    /// Depth of every leaf, indexed by item.
    pub fn leaf_depths(&self) -> Vec<usize> {
        let mut depths = vec![0; self.leaves];
        let mut stack = vec![(self.root, 0)];
        while let Some((idx, d)) = stack.pop() {
            match self.nodes[idx] {
                ShapeNode::Leaf(item) => depths[item] = d,
                ShapeNode::Internal(l, r) => {
                    stack.push((r, d + 1));
                    stack.push((l, d + 1));
                }
            }
        }
        depths
    }

    /// Leaves in left-to-right order.
    pub fn leaf_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.leaves);
        let mut stack = vec![self.root];
        while let Some(idx) = stack.pop() {
            match self.nodes[idx] {
                ShapeNode::Leaf(item) => out.push(item),
                ShapeNode::Internal(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }
}

pub fn build_weight_balanced(weights: &[u64]) -> Result<BalancedShape, BalanceError> {
    if weights.is_empty() {
        return Err(BalanceError::Empty);
    }
    if let Some(i) = weights.iter().position(|&w| w == 0) {
        return Err(BalanceError::ZeroWeight(i));
    }
    let total = weights
        .iter()
        .try_fold(0u64, |acc, &w| {
            acc.checked_add(w).filter(|&s| s <= MAX_TOTAL)
        })
        .ok_or(BalanceError::TooHeavy)?;

    // Midpoint of item i is mids[i] / (2 * total).
    let mut mids = Vec::with_capacity(weights.len());
    let mut prefix = 0u128;
    for &w in weights {
        mids.push(2 * prefix + w as u128);
        prefix += w as u128;
    }

    let mut builder = Builder {
        mids: &mids,
        total: total as u128,
        nodes: Vec::with_capacity(2 * weights.len()),
    };
    let root = builder.build(0, weights.len(), 0, 0);
    Ok(BalancedShape {
        nodes: builder.nodes,
        root,
        leaves: weights.len(),
    })
}

struct Builder<'a> {
    mids: &'a [u128],
    total: u128,
    nodes: Vec<ShapeNode>,
}

impl Builder<'_> {
    /// Items `lo..hi` all have midpoints inside the dyadic cell
    /// `[cell / 2^level, (cell + 1) / 2^level)`.
    fn build(&mut self, lo: usize, hi: usize, mut cell: u128, mut level: u32) -> usize {
        if hi - lo == 1 {
            self.nodes.push(ShapeNode::Leaf(lo));
            return self.nodes.len() - 1;
        }
        loop {
            // mid / 2W < (2 cell + 1) / 2^(level + 1)  <=>  mid * 2^level < (2 cell + 1) * W
            let bound = (2 * cell + 1) * self.total;
            let split = lo + self.mids[lo..hi].partition_point(|&m| (m << level) < bound);
            level += 1;
            if split == lo {
                cell = 2 * cell + 1;
            } else if split == hi {
                cell *= 2;
            } else {
                let left = self.build(lo, split, 2 * cell, level);
                let right = self.build(split, hi, 2 * cell + 1, level);
                self.nodes.push(ShapeNode::Internal(left, right));
                return self.nodes.len() - 1;
            }
        }
    }
}

/// `floor(log2(total / weight))` for `weight <= total`.
pub fn floor_log2_ratio(total: u64, weight: u64) -> usize {
    debug_assert!(weight >= 1 && weight <= total);
    // Largest k with weight * 2^k <= total.
    let mut k = 0;
    while (weight as u128) << (k + 1) <= total as u128 {
        k += 1;
    }
    k
}
