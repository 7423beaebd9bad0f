//! Lazy enumeration of compositions: ordered tuples of nonnegative integers
//! with a fixed sum.
//!
//! The residue sum ranges over every composition of `b_r − 1` into one part
//! per kernel factor. Their number grows combinatorially, so the stream
//! yields tuples one at a time from a reused internal buffer and never
//! materializes the full set.

/// Streams every tuple of `slots` nonnegative integers summing to `total`,
/// each exactly once, in colexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(total: u32, slots: usize) -> Self {
        assert!(slots >= 1, "at least one slot is required");
        let mut parts = vec![0u32; slots];
        parts[0] = total;
        Self {
            parts,
            started: false,
            done: false,
        }
    }

    /// Advances to the next composition and returns a view of it, or `None`
    /// once the stream is exhausted.
    pub fn next_parts(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.parts);
        }
        // Move one unit from the leftmost nonzero part to its right
        // neighbour, dumping the remainder back into the first slot.
        let h = match self.parts.iter().position(|&p| p > 0) {
            Some(h) if h + 1 < self.parts.len() => h,
            _ => {
                self.done = true;
                return None;
            }
        };
        let v = self.parts[h];
        self.parts[h] = 0;
        self.parts[0] = v - 1;
        self.parts[h + 1] += 1;
        Some(&self.parts)
    }

    /// Number of compositions of `total` into `slots` parts:
    /// C(total + slots − 1, slots − 1). Saturates at `u128::MAX`.
    pub fn count(total: u32, slots: usize) -> u128 {
        let n = u128::from(total) + slots as u128 - 1;
        let mut k = slots as u128 - 1;
        if k > n - k {
            k = n - k;
        }
        let mut result: u128 = 1;
        for i in 1..=k {
            // Multiply before dividing: each prefix is itself a binomial
            // coefficient, so the division is exact.
            result = match result.checked_mul(n - k + i) {
                Some(r) => r / i,
                None => return u128::MAX,
            };
        }
        result
    }
}

/// Owned-tuple adaptor, convenient in tests; the hot path uses `next_parts`.
impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_parts().map(|p| p.to_vec())
    }
}
