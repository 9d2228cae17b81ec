//! The bound coefficient
//!
//! ```text
//! C_{n,r} = C(n+r-1, n) (n+r)! / (S(n+r, r) r!)
//!         = |K_{n,r}| / Σ_{k∈K_{n,r}} ∏ 1/(k_i+1)!
//! ```
//!
//! Both expressions are implemented; they must agree exactly.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;

use crate::arith::{binomial, factorial, from_int, ipow, stirling2, Integer, Rational};
use crate::multi_index;
use crate::verdict::{Claim, Relation, Verdict};

/// First expression, through the Stirling number `S(n+r, r)`.
pub fn coeff_stirling(n: u32, r: u32) -> Rational {
    let num = binomial((n + r - 1) as u64, n as i64) * factorial(n + r);
    let den = stirling2(n + r, r) * factorial(r);
    Rational::new(num, den)
}

/// Second expression: harmonic mean of `∏ (k_i+1)!` over `K_{n,r}`.
pub fn coeff_mean(n: u32, r: u32) -> Rational {
    let weights: Rational = multi_index::enumerate(n, r as usize)
        .map(|k| {
            let den: Integer = k.entries().iter().map(|&ki| factorial(ki + 1)).product();
            Rational::new(Integer::one(), den)
        })
        .sum();
    from_int(multi_index::card(n, r as usize)) / weights
}

/// `(n+1)!`
pub fn closed_form_r1(n: u32) -> Rational {
    from_int(factorial(n + 1))
}

/// `(n+2)! (n+1) / (2^{n+2} - 2)`
pub fn closed_form_r2(n: u32) -> Rational {
    Rational::new(factorial(n + 2) * (n + 1), ipow(2, n + 2) - 2)
}

/// `4 (r+1) / (r + 1/3)`
pub fn closed_form_n2(r: u32) -> Rational {
    from_int(4 * (r as i64 + 1)) / (from_int(r) + Rational::new(1.into(), 3.into()))
}

/// `C_{n,r+1} < C_{n,r}` for `1 ≤ r < r_max`. Reports the first violating
/// pair, otherwise the pair with the smallest gap.
pub fn check_monotone(n: u32, r_max: u32) -> Verdict {
    let values: Vec<Rational> = (1..=r_max).map(|r| coeff_stirling(n, r)).collect();
    let mut tightest: Option<Verdict> = None;
    for r in 1..r_max {
        let v = Verdict::compare(
            Claim::CoefficientMonotone,
            values[r as usize].clone(),
            Relation::Lt,
            values[r as usize - 1].clone(),
        )
        .param("n", n)
        .param("r", r);
        if v.fails() {
            return v;
        }
        if tightest.as_ref().is_none_or(|t| v.gap < t.gap) {
            tightest = Some(v);
        }
    }
    tightest.unwrap_or_else(|| Verdict::not_applicable(Claim::CoefficientMonotone, "r_max < 2").param("n", n))
}

/// `2^n < C_{n,r}` for all `r ≤ r_max`, and `C_{n,r} - 2^n` decreasing in `r`
/// when `n ≥ 2`.
pub fn check_limit_bound(n: u32, r_max: u32) -> Verdict {
    let limit = from_int(ipow(2, n));
    let values: Vec<Rational> = (1..=r_max).map(|r| coeff_stirling(n, r)).collect();
    for (i, c) in values.iter().enumerate() {
        let v = Verdict::compare(Claim::CoefficientLimitBound, limit.clone(), Relation::Lt, c.clone())
            .param("n", n)
            .param("r", i + 1);
        if v.fails() {
            return v;
        }
    }
    if n >= 2 {
        for (i, pair) in values.windows(2).enumerate() {
            let v = Verdict::compare(
                Claim::CoefficientLimitBound,
                &pair[1] - &limit,
                Relation::Lt,
                &pair[0] - &limit,
            )
            .param("n", n)
            .param("r", i + 1)
            .with_note("gap to 2^n decreasing");
            if v.fails() {
                return v;
            }
        }
    }
    let last = values.last().expect("r_max >= 1").clone();
    Verdict::compare(Claim::CoefficientLimitBound, limit, Relation::Lt, last)
        .param("n", n)
        .param("r", r_max)
}

/// `(min, max)` of `∏ (k_i+1)!` over `K_{n,r}`.
pub fn product_bounds(n: u32, r: usize) -> (Integer, Integer) {
    let mut it =
        multi_index::enumerate(n, r).map(|k| k.entries().iter().map(|&ki| factorial(ki + 1)).product::<Integer>());
    let first = it.next().expect("K_{n,r} is nonempty for r >= 1");
    it.fold((first.clone(), first), |(lo, hi), v| {
        if v < lo {
            (v, hi)
        } else if v > hi {
            (lo, v)
        } else {
            (lo, hi)
        }
    })
}

pub fn min_product_bound(n: u32, r: usize) -> Integer {
    product_bounds(n, r).0
}

/// One cell of a [`CoefficientTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub via_stirling: Rational,
    pub via_mean: Rational,
}

impl CoefficientEntry {
    pub fn agree(&self) -> bool {
        self.via_stirling == self.via_mean
    }
}

#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub n_max: u32,
    pub r_max: u32,
    pub entries: BTreeMap<(u32, u32), CoefficientEntry>,
}

impl CoefficientTable {
    /// Every cell `1 ≤ n ≤ n_max`, `1 ≤ r ≤ r_max`, both routes.
    pub fn build(n_max: u32, r_max: u32) -> Self {
        let cells: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (1..=r_max).map(move |r| (n, r))).collect();
        let entries = cells
            .into_par_iter()
            .map(|(n, r)| {
                let entry = CoefficientEntry {
                    via_stirling: coeff_stirling(n, r),
                    via_mean: coeff_mean(n, r),
                };
                ((n, r), entry)
            })
            .collect();
        Self { n_max, r_max, entries }
    }

    pub fn get(&self, n: u32, r: u32) -> Option<&Rational> {
        self.entries.get(&(n, r)).map(|e| &e.via_stirling)
    }

    pub fn all_agree(&self) -> bool {
        self.entries.values().all(CoefficientEntry::agree)
    }
}
