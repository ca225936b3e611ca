use super::{hyperbola_divisor_sum, sieve_segment};
use crate::error::{invalid, Result};

/// One block of a streamed divisor sieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorChunk {
    /// First `n` covered by `counts`.
    pub start: u64,
    pub counts: Vec<u32>,
    /// `D(start − 1)`.
    pub prefix_before: u64,
}

impl DivisorChunk {
    /// `D(n)` for `start − 1 ≤ n < start + counts.len()`.
    pub fn prefix_at(&self, n: u64) -> u64 {
        let upto = (n + 1 - self.start) as usize;
        self.prefix_before + self.counts[..upto].iter().map(|&c| c as u64).sum::<u64>()
    }
}

/// Segmented sieve over `[start, end]` in bounded memory, for ranges past
/// what a [`DivisorTable`](super::DivisorTable) can hold.
#[derive(Debug, Clone)]
pub struct DivisorStream {
    next: u64,
    end: u64,
    chunk: usize,
    prefix: u64,
}

impl DivisorStream {
    pub fn new(start: u64, end: u64, chunk: usize) -> Result<Self> {
        if start == 0 || end < start || chunk == 0 {
            return invalid(format!("bad stream range [{start}, {end}] with chunk {chunk}"));
        }
        Ok(Self { next: start, end, chunk, prefix: hyperbola_divisor_sum(start - 1) })
    }
}

impl Iterator for DivisorStream {
    type Item = DivisorChunk;

    fn next(&mut self) -> Option<DivisorChunk> {
        if self.next > self.end {
            return None;
        }
        let len = ((self.end - self.next + 1) as usize).min(self.chunk);
        let mut counts = vec![0u32; len];
        sieve_segment(self.next, &mut counts);
        let out = DivisorChunk { start: self.next, counts, prefix_before: self.prefix };
        self.prefix += out.counts.iter().map(|&c| c as u64).sum::<u64>();
        self.next += len as u64;
        Some(out)
    }
}
