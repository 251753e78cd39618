//! Compensated, deterministic summation.
//!
//! Mode sums reach 10^7 terms. Every reduction here runs over a fixed
//! partition of the index range and combines partial sums in index order, so
//! results are bit-identical whatever the rayon thread count.

use rayon::prelude::*;

use crate::scalar::Scalar;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Scalar> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Scalar> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator in iteration order.
pub fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<NeumaierSum<T>>().value()
}

/// Pairwise (cascade) summation of a slice; leaves of up to 32 elements are
/// summed with compensation.
pub fn pairwise_sum<T: Scalar>(values: &[T]) -> T {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return compensated_sum(values.iter().copied());
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sums `f(i)` over `0..len` in parallel.
///
/// The range is cut into blocks of `block` indices; each block is summed
/// sequentially with compensation, and the block totals are then reduced
/// pairwise in block order.
pub fn chunked_sum<T, F>(len: usize, block: usize, f: F) -> T
where
    T: Scalar,
    F: Fn(usize) -> T + Sync,
{
    let partials = chunk_partials(len, block, |range| compensated_sum(range.map(&f)));
    pairwise_sum(&partials)
}

/// Like [`chunked_sum`] but for a pair of accumulators (real and imaginary
/// parts, typically).
pub fn chunked_sum2<T, F>(len: usize, block: usize, f: F) -> (T, T)
where
    T: Scalar,
    F: Fn(usize) -> (T, T) + Sync,
{
    let partials = chunk_partials(len, block, |range| {
        let mut a = NeumaierSum::new();
        let mut b = NeumaierSum::new();
        for i in range {
            let (x, y) = f(i);
            a.add(x);
            b.add(y);
        }
        (a.value(), b.value())
    });
    let re: Vec<T> = partials.iter().map(|p| p.0).collect();
    let im: Vec<T> = partials.iter().map(|p| p.1).collect();
    (pairwise_sum(&re), pairwise_sum(&im))
}

/// Evaluates `f` on each fixed block of `0..len` and returns the per-block
/// results in block order.
pub fn chunk_partials<R, F>(len: usize, block: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> R + Sync,
{
    let block = block.max(1);
    let blocks = len.div_ceil(block);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * block;
            f(start..(start + block).min(len))
        })
        .collect()
}
