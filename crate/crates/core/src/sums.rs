//! Shared sum-relation scan over sorted label sets, with a machine-word fast
//! path when every label fits comfortably in a `u64`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::par::{self, Parallelism};

pub(crate) trait LabelValue: Ord + Clone + Send + Sync {
    fn plus(&self, other: &Self) -> Self;
}

impl LabelValue for u64 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

impl LabelValue for BigUint {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

/// Every `(i, j, k)` with `i <= j` and `sorted[i] + sorted[j] == sorted[k]`.
/// `sorted` must be strictly increasing. Output is ordered by `(i, j)`.
pub(crate) fn sum_triples<T: LabelValue>(sorted: &[T], mode: Parallelism) -> Vec<(usize, usize, usize)> {
    let len = sorted.len();
    let Some(max) = sorted.last() else {
        return Vec::new();
    };
    par::flat_map_range(len, mode, |i| {
        let mut found = Vec::new();
        for j in i..len {
            let s = sorted[i].plus(&sorted[j]);
            if s > *max {
                break;
            }
            if let Ok(off) = sorted[j + 1..].binary_search(&s) {
                found.push((i, j, j + 1 + off));
            }
        }
        found
    })
}

/// `sum_triples` on big labels, switching to `u64` arithmetic when the largest
/// label has at most 62 bits so that no pair sum can overflow.
pub(crate) fn sum_triples_big(sorted: &[BigUint], mode: Parallelism) -> Vec<(usize, usize, usize)> {
    match as_small(sorted) {
        Some(small) => sum_triples(&small, mode),
        None => sum_triples(sorted, mode),
    }
}

pub(crate) fn as_small(labels: &[BigUint]) -> Option<Vec<u64>> {
    if labels.iter().all(|x| x.bits() <= 62) {
        Some(labels.iter().map(|x| x.to_u64().expect("fits in 62 bits")).collect())
    } else {
        None
    }
}

/// `ceil(log2(x))` for `x >= 1`, with `ceil(log2(1)) = 0`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    if x.is_zero() || x.is_one() {
        0
    } else {
        (x - 1u32).bits()
    }
}

pub fn ceil_log2_u64(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(64 - (x - 1).leading_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_on_small_set() {
        let v: Vec<u64> = vec![1, 3, 4, 5, 7];
        let t = sum_triples(&v, Parallelism::Sequential);
        // 1+3=4, 1+4=5, 3+4=7
        assert_eq!(t, vec![(0, 1, 2), (0, 2, 3), (1, 2, 4)]);
    }

    #[test]
    fn doubled_values_are_reported_with_equal_indices() {
        let v: Vec<u64> = vec![2, 4];
        assert_eq!(sum_triples(&v, Parallelism::Sequential), vec![(0, 0, 1)]);
    }

    #[test]
    fn big_and_small_paths_agree() {
        let small: Vec<u64> = vec![1, 2, 3, 5, 8, 13, 21];
        let big: Vec<BigUint> = small.iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(sum_triples(&big, Parallelism::Sequential), sum_triples(&small, Parallelism::Parallel));
        let shifted: Vec<BigUint> = big.iter().map(|x| x << 80u32).collect();
        assert_eq!(sum_triples_big(&shifted, Parallelism::Parallel), sum_triples(&small, Parallelism::Sequential));
    }

    #[test]
    fn ceil_log2_values() {
        let c = |x: u64| ceil_log2(&BigUint::from(x));
        assert_eq!([c(1), c(2), c(3), c(4), c(5), c(22)], [0, 1, 2, 2, 3, 5]);
        assert_eq!([ceil_log2_u64(1), ceil_log2_u64(8), ceil_log2_u64(9)], [0, 3, 4]);
    }
}
