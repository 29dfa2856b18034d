//! Partitions of the coordinate set `{0, .., dim-1}` into blocks.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    dim: usize,
    blocks: Vec<Vec<usize>>,
    // block index of every coordinate
    owner: Vec<usize>,
}

impl Partition {
    /// Every coordinate must appear in exactly one nonempty block.
    pub fn new(dim: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; dim];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= dim {
                    return Err(Error::InvalidPartition(format!("coordinate {i} out of range for dim {dim}")));
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("coordinate {i} appears twice")));
                }
                owner[i] = b;
            }
        }
        if let Some(i) = owner.iter().position(|o| *o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("coordinate {i} is not covered")));
        }
        Ok(Partition { dim, blocks, owner })
    }

    /// Consecutive blocks of equal size `block_len`.
    pub fn contiguous(dim: usize, block_len: usize) -> Result<Self> {
        if block_len == 0 || !dim.is_multiple_of(block_len) {
            return Err(Error::InvalidPartition(format!("block length {block_len} does not divide {dim}")));
        }
        let blocks = (0..dim / block_len).map(|b| (b * block_len..(b + 1) * block_len).collect()).collect();
        Self::new(dim, blocks)
    }

    pub fn singletons(dim: usize) -> Self {
        Self::new(dim, (0..dim).map(|i| vec![i]).collect()).expect("singletons always partition")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.owner[i]
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.dim == coarser.dim
            && self.blocks.iter().all(|block| {
                let b = coarser.block_of(block[0]);
                block.iter().all(|&i| coarser.block_of(i) == b)
            })
    }
}
