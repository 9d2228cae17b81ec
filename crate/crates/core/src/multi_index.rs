//! Weak compositions `K_{n,r}` of `n` into `r` nonnegative parts, and the
//! classes `K^s_{n,r}` of compositions with exactly `s` zero entries.
//!
//! Enumeration is lexicographic with the first coordinate descending:
//! `(n,0,…,0)` first, `(0,…,0,n)` last.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{binomial, Integer};

/// A weak composition `(k_1, …, k_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `|{i : k_i = 0}|`
    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&k| k == 0).count()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Streaming enumerator over `K_{n,r}`.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl Iterator for WeakCompositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let out = self.current.clone()?;
        let k = self.current.as_mut().expect("checked above");
        let r = k.len();
        if r == 0 {
            self.current = None;
            return Some(MultiIndex(out));
        }
        // Move the tail mass one slot left of the rightmost nonzero entry
        // that is not the last one.
        let tail = std::mem::take(&mut k[r - 1]);
        match (0..r - 1).rev().find(|&i| k[i] > 0) {
            Some(i) => {
                k[i] -= 1;
                k[i + 1] = tail + 1;
            }
            None => self.current = None,
        }
        Some(MultiIndex(out))
    }
}

/// All of `K_{n,r}`, each element exactly once.
pub fn enumerate(n: u32, r: usize) -> WeakCompositions {
    let current = if r == 0 {
        (n == 0).then(Vec::new)
    } else {
        let mut first = vec![0; r];
        first[0] = n;
        Some(first)
    };
    WeakCompositions { current }
}

/// Elements of `K_{n,r}` with exactly `s` zero entries.
pub fn enumerate_class(n: u32, r: usize, s: usize) -> impl Iterator<Item = MultiIndex> {
    enumerate(n, r).filter(move |k| k.zero_count() == s)
}

/// `|K_{n,r}| = C(n+r-1, n)`.
pub fn card(n: u32, r: usize) -> Integer {
    if r == 0 {
        return if n == 0 { Integer::one() } else { Integer::zero() };
    }
    binomial(n as u64 + r as u64 - 1, n as i64)
}

/// `|K^s_{n,r}| = C(r,s) C(n-1, r-s-1)` for `n ≥ 1`. For `n = 0` the only
/// element is the zero vector, which lies in the class `s = r`.
pub fn card_class(n: u32, r: usize, s: usize) -> Integer {
    if s > r {
        return Integer::zero();
    }
    if n == 0 {
        return if s == r { Integer::one() } else { Integer::zero() };
    }
    binomial(r as u64, s as i64) * binomial(n as u64 - 1, r as i64 - s as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, Rational};
    use std::collections::BTreeSet;

    fn brute_force(n: u32, r: usize) -> BTreeSet<Vec<u32>> {
        // nested loops over [0, n]^r, filtered by weight
        let mut out = BTreeSet::new();
        let total = (n as usize + 1).pow(r as u32);
        for mut code in 0..total {
            let mut v = Vec::with_capacity(r);
            for _ in 0..r {
                v.push((code % (n as usize + 1)) as u32);
                code /= n as usize + 1;
            }
            if v.iter().sum::<u32>() == n {
                out.insert(v);
            }
        }
        out
    }

    fn collect(n: u32, r: usize) -> Vec<Vec<u32>> {
        enumerate(n, r).map(|k| k.entries().to_vec()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(collect(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(collect(0, 4), vec![vec![0, 0, 0, 0]]);
        assert_eq!(collect(5, 1), vec![vec![5]]);
        assert_eq!(
            collect(2, 3),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force_and_is_lexicographic() {
        for n in 0..=6 {
            for r in 1..=5 {
                let list = collect(n, r);
                let set: BTreeSet<_> = list.iter().cloned().collect();
                assert_eq!(set.len(), list.len(), "duplicates at n={n} r={r}");
                assert_eq!(set, brute_force(n, r));
                assert!(list.windows(2).all(|w| w[0] > w[1]), "order at n={n} r={r}");
                assert_eq!(Integer::from(list.len()), card(n, r));
            }
        }
    }

    #[test]
    fn class_examples() {
        let c0: Vec<_> = enumerate_class(3, 2, 0).map(|k| k.entries().to_vec()).collect();
        assert_eq!(c0, vec![vec![2, 1], vec![1, 2]]);
        let c1: Vec<_> = enumerate_class(3, 2, 1).map(|k| k.entries().to_vec()).collect();
        assert_eq!(c1, vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(card_class(3, 2, 0), Integer::from(2));
        assert_eq!(card_class(3, 2, 1), Integer::from(2));
        // s < r - n is empty
        assert_eq!(enumerate_class(2, 5, 1).count(), 0);
        assert_eq!(card_class(2, 5, 1), Integer::zero());
    }

    #[test]
    fn card_examples() {
        assert_eq!(card(2, 2), Integer::from(3));
        assert_eq!(card(3, 3), Integer::from(10));
        for n in 0..10 {
            assert_eq!(card(n, 1), Integer::one());
        }
    }

    #[test]
    fn classes_partition_the_full_set() {
        for n in 1..=10 {
            for r in 1..=10usize {
                let total: Integer = (0..r).map(|s| card_class(n, r, s)).sum();
                assert_eq!(total, card(n, r));
            }
        }
        for n in 1..=6 {
            for r in 1..=5usize {
                let mut seen = BTreeSet::new();
                for s in 0..r {
                    let class: Vec<_> = enumerate_class(n, r, s).collect();
                    assert_eq!(Integer::from(class.len()), card_class(n, r, s));
                    for k in class {
                        assert!(seen.insert(k), "element in two classes");
                    }
                }
                assert_eq!(Integer::from(seen.len()), card(n, r));
            }
        }
    }

    #[test]
    fn cardinality_compatibility_identity() {
        let q = |v: Integer| Rational::from_integer(v);
        for r in 1..=8usize {
            for n in r as u32..=12 {
                for s in 0..r.saturating_sub(1) {
                    let lhs = q(card_class(n - r as u32 + 1, r - 1, s) * r);
                    let rhs = q(card_class(n - r as u32, r, s + 1) * (s + 1))
                        + rational(((s + 1) * (s + 2)) as i64, (r - 1 - s) as i64)
                            * q(card_class(n - r as u32, r, s + 2));
                    assert_eq!(lhs, rhs, "n={n} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn decomposition_cardinality() {
        for n in 1..=10 {
            for r in 1..=8usize {
                for s in 0..r {
                    assert_eq!(
                        card_class(n, r, s),
                        binomial(r as u64, s as i64) * card_class(n, r - s, 0)
                    );
                }
            }
        }
    }
}
