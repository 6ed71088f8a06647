//! Integer partitions: conjugation, dominance and enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing with all parts positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        Partition(
            (1..=self.largest())
                .map(|j| self.0.iter().filter(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// Partial sums `p_1, p_1 + p_2, ...` padded with the total up to `len`.
    pub fn prefix_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len.max(self.0.len()))
            .map(|i| {
                acc += self.0.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }

    /// `Σ (2j - 1) · p_j`, the centralizer dimension of a single-eigenvalue
    /// nilpotent type with these block sizes.
    pub fn odd_weighted_sum(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &p)| (2 * j + 1) * p)
            .sum()
    }

    pub fn sum_of_squares(&self) -> usize {
        self.0.iter().map(|&p| p * p).sum()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// First index `k` (1-based) at which the prefix sums of `p` fall below those
/// of `q`, or `None` if `p` dominates `q`.
pub fn dominance_failure(p: &Partition, q: &Partition) -> Result<Option<usize>> {
    if p.weight() != q.weight() {
        return Err(Error::WeightMismatch {
            left: p.weight(),
            right: q.weight(),
        });
    }
    let len = p.len().max(q.len());
    let ps = p.prefix_sums(len);
    let qs = q.prefix_sums(len);
    Ok(ps.iter().zip(&qs).position(|(a, b)| a < b).map(|k| k + 1))
}

/// True iff `p` dominates `q`: every prefix sum of `p` is at least the
/// corresponding prefix sum of `q`.
pub fn dominates(p: &Partition, q: &Partition) -> Result<bool> {
    Ok(dominance_failure(p, q)?.is_none())
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
/// `partitions(0)` is the single empty partition.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(
            Partition::from_unsorted(vec![1, 3, 2]).unwrap(),
            p(&[3, 2, 1])
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[4]).conjugate(), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p(&[2]), &p(&[1, 1])).unwrap());
        assert!(!dominates(&p(&[1, 1]), &p(&[2])).unwrap());
        // prefix sums (3,6,6) vs (4,5,6)
        assert!(!dominates(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap());
        assert!(!dominates(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap());
        assert_eq!(dominance_failure(&p(&[1, 1]), &p(&[2])).unwrap(), Some(1));
        assert_eq!(
            dominates(&p(&[2]), &p(&[1])),
            Err(Error::WeightMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn enumeration_order() {
        let four: Vec<Vec<usize>> = partitions(4).into_iter().map(Vec::from).collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(0).len(), 1);
    }

    #[test]
    fn dominance_is_partial_order() {
        for n in 1..=8 {
            let all = partitions(n);
            for a in &all {
                assert!(dominates(a, a).unwrap());
                for b in &all {
                    let ab = dominates(a, b).unwrap();
                    let ba = dominates(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &all {
                        if dominates(b, c).unwrap() {
                            assert!(dominates(a, c).unwrap(), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..7, 0..7).prop_map(|v| Partition::from_unsorted(v).unwrap())
    }

    proptest! {
        #[test]
        fn conjugate_is_weight_preserving_involution(p in arb_partition()) {
            let c = p.conjugate();
            prop_assert_eq!(c.weight(), p.weight());
            prop_assert_eq!(c.conjugate(), p);
        }

        #[test]
        fn odd_weighted_sum_is_squares_of_conjugate(p in arb_partition()) {
            prop_assert_eq!(p.odd_weighted_sum(), p.conjugate().sum_of_squares());
        }
    }
}
