//! Class means of monomials `x^k` and weights `y_{k,ℓ} = ∏ 1/(k_i+ℓ)!`
//! over `K^s_{n,r}`, their orderings in `s`, and the combinatorial inequality
//!
//! ```text
//! (1/|K_{n,r}|) (Σ_k y_{k,ℓ}) (Σ_k x^k)  ≥  Σ_k y_{k,ℓ} x^k
//! ```
//!
//! Sample points are positive rationals. Monomial sums are accumulated over
//! integers after clearing denominators (`x_i = z_i / L`), then divided once.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorial, from_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::invariants::{monomial, power_table};
use crate::multi_index::{self, MultiIndex};
use crate::verdict::{Claim, Relation, Verdict};

/// A point `(x_1, …, x_r)` of the open positive orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePoint(Vec<Rational>);

impl SamplePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if let Some(index) = coords.iter().position(|c| !c.is_positive()) {
            return Err(Error::NonPositiveCoordinate { index });
        }
        Ok(Self(coords))
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, t: &Rational) -> Result<Self> {
        Self::new(self.0.iter().map(|c| c * t).collect())
    }

    fn cleared(&self) -> (Vec<Integer>, Integer) {
        let scale = self.0.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let z = self.0.iter().map(|c| c.numer() * (&scale / c.denom())).collect();
        (z, scale)
    }
}

/// Deterministic source of sample points with numerators and denominators
/// drawn uniformly from `[1, 1000]`.
#[derive(Debug, Clone)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub const MAX: i64 = 1000;

    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn point(&mut self, r: usize) -> SamplePoint {
        let coords = (0..r)
            .map(|_| {
                let num = self.rng.gen_range(1..=Self::MAX);
                let den = self.rng.gen_range(1..=Self::MAX);
                Rational::new(num.into(), den.into())
            })
            .collect();
        SamplePoint(coords)
    }
}

/// `y_{k,ℓ} = ∏ 1/(k_i+ℓ)!`
pub fn y_weight(k: &MultiIndex, ell: u32) -> Rational {
    let den: Integer = k.entries().iter().map(|&ki| factorial(ki + ell)).product();
    Rational::new(Integer::one(), den)
}

fn check_len(x: &SamplePoint, r: usize) -> Result<()> {
    if x.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: x.len(),
        });
    }
    Ok(())
}

/// Per-class sums of `z^k` (cleared denominators) and class sizes.
fn x_class_sums(n: u32, r: usize, x: &SamplePoint) -> (Vec<Integer>, Vec<u64>, Integer) {
    let (z, scale) = x.cleared();
    let powers = power_table(&z, n);
    let mut sums = vec![Integer::zero(); r + 1];
    let mut counts = vec![0u64; r + 1];
    for k in multi_index::enumerate(n, r) {
        let s = k.zero_count();
        sums[s] += monomial(&powers, &k);
        counts[s] += 1;
    }
    (sums, counts, num_traits::pow(scale, n as usize))
}

/// Arithmetic mean of `x^k` over `K_{n,r}`.
pub fn x_mean(n: u32, r: usize, x: &SamplePoint) -> Result<Rational> {
    check_len(x, r)?;
    let (sums, counts, scale) = x_class_sums(n, r, x);
    let total: Integer = sums.into_iter().sum();
    let count: u64 = counts.into_iter().sum();
    Ok(Rational::new(total, scale * count))
}

/// Arithmetic mean of `x^k` over `K^s_{n,r}`; empty classes are an error.
pub fn x_mean_class(n: u32, r: usize, s: usize, x: &SamplePoint) -> Result<Rational> {
    check_len(x, r)?;
    x_class_means(n, r, x)?
        .get(s)
        .cloned()
        .flatten()
        .ok_or(Error::EmptyClass { n, r, s })
}

/// `X^s` for `s = 0..=r`, `None` for empty classes.
pub fn x_class_means(n: u32, r: usize, x: &SamplePoint) -> Result<Vec<Option<Rational>>> {
    check_len(x, r)?;
    let (sums, counts, scale) = x_class_sums(n, r, x);
    Ok(sums
        .into_iter()
        .zip(counts)
        .map(|(sum, c)| (c > 0).then(|| Rational::new(sum, &scale * c)))
        .collect())
}

/// `Y^s_{n,r,ℓ}` for `s = 0..=r`, `None` for empty classes.
pub fn y_class_means(n: u32, r: usize, ell: u32) -> Vec<Option<Rational>> {
    let mut sums = vec![Rational::zero(); r + 1];
    let mut counts = vec![0u64; r + 1];
    for k in multi_index::enumerate(n, r) {
        let s = k.zero_count();
        sums[s] += y_weight(&k, ell);
        counts[s] += 1;
    }
    sums.into_iter()
        .zip(counts)
        .map(|(sum, c)| (c > 0).then(|| sum / from_int(c)))
        .collect()
}

/// Arithmetic mean of `y_{k,ℓ}` over `K_{n,r}`.
pub fn y_mean(n: u32, r: usize, ell: u32) -> Rational {
    let (sum, count) =
        multi_index::enumerate(n, r).fold((Rational::zero(), 0u64), |(s, c), k| (s + y_weight(&k, ell), c + 1));
    sum / from_int(count)
}

pub fn y_mean_class(n: u32, r: usize, ell: u32, s: usize) -> Result<Rational> {
    y_class_means(n, r, ell)
        .get(s)
        .cloned()
        .flatten()
        .ok_or(Error::EmptyClass { n, r, s })
}

/// Walks adjacent nonempty classes and returns the first failure, otherwise
/// the tightest comparison.
fn adjacent_classes(
    claim: Claim,
    means: &[Option<Rational>],
    cmp: impl Fn(usize, &Rational, &Rational) -> Verdict,
) -> Option<Verdict> {
    let present: Vec<(usize, &Rational)> = means
        .iter()
        .enumerate()
        .filter_map(|(s, m)| m.as_ref().map(|m| (s, m)))
        .collect();
    let mut tightest: Option<Verdict> = None;
    for pair in present.windows(2) {
        let (s, a) = pair[0];
        let (_, b) = pair[1];
        let v = cmp(s, a, b);
        debug_assert_eq!(v.claim, claim);
        if v.fails() {
            return Some(v);
        }
        if tightest.as_ref().is_none_or(|t| v.gap < t.gap) {
            tightest = Some(v);
        }
    }
    tightest
}

/// `X^0 ≤ X^1 ≤ … ≤ X^{r-1}` at `x`, skipping empty classes.
pub fn check_x_ordering(n: u32, r: usize, x: &SamplePoint) -> Result<Verdict> {
    // the zero vector's class s = r only exists for n = 0
    let mut means = x_class_means(n, r, x)?;
    means.truncate(r);
    let verdict = adjacent_classes(Claim::XOrdering, &means, |s, a, b| {
        Verdict::compare(Claim::XOrdering, a.clone(), Relation::Le, b.clone()).param("s", s)
    })
    .unwrap_or_else(|| Verdict::not_applicable(Claim::XOrdering, "fewer than two nonempty classes"));
    Ok(verdict.param("n", n).param("r", r))
}

/// `Y^0 > Y^1 > … > Y^{r-1}` (exact, no sampling).
pub fn check_y_ordering(n: u32, r: usize, ell: u32) -> Verdict {
    let mut means = y_class_means(n, r, ell);
    means.truncate(r);
    adjacent_classes(Claim::YOrdering, &means, |s, a, b| {
        Verdict::compare(Claim::YOrdering, b.clone(), Relation::Lt, a.clone()).param("s", s)
    })
    .unwrap_or_else(|| Verdict::not_applicable(Claim::YOrdering, "fewer than two nonempty classes"))
    .param("n", n)
    .param("r", r)
    .param("ell", ell)
}

/// Exact sides of one comparison; `holds ⇔ gap ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub gap: Rational,
    pub holds: bool,
}

impl GapReport {
    pub fn new(lhs: Rational, rhs: Rational) -> Self {
        let gap = &lhs - &rhs;
        let holds = !gap.is_negative();
        Self { lhs, rhs, gap, holds }
    }
}

/// `I_{n,r,ℓ}` at `x`: `lhs = mean(y)·Σ x^k`, `rhs = Σ y_k x^k`.
pub fn check_comb_inequality(n: u32, r: usize, ell: u32, x: &SamplePoint) -> Result<GapReport> {
    check_len(x, r)?;
    let (z, scale) = x.cleared();
    let powers = power_table(&z, n);
    // (n + rℓ)! / ∏ (k_i+ℓ)! is a multinomial coefficient, hence integral
    let common = factorial(n + r as u32 * ell);
    let mut sum_w = Integer::zero();
    let mut sum_x = Integer::zero();
    let mut sum_wx = Integer::zero();
    let mut count = 0u64;
    for k in multi_index::enumerate(n, r) {
        let den: Integer = k.entries().iter().map(|&ki| factorial(ki + ell)).product();
        let w = &common / den;
        let m = monomial(&powers, &k);
        sum_wx += &w * &m;
        sum_w += w;
        sum_x += m;
        count += 1;
    }
    let denom = common * num_traits::pow(scale, n as usize);
    let lhs = Rational::new(sum_w * sum_x, &denom * count);
    let rhs = Rational::new(sum_wx, denom);
    Ok(GapReport::new(lhs, rhs))
}

/// `(Σα)(Σαβx) - (Σαβ)(Σαx)`, nonnegative when `β` and `x` are ordered the
/// same way and `α > 0`.
pub fn chebyshev_gap(alpha: &[Rational], beta: &[Rational], x: &[Rational]) -> Result<Rational> {
    if beta.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            expected: alpha.len(),
            got: beta.len(),
        });
    }
    if x.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            expected: alpha.len(),
            got: x.len(),
        });
    }
    if alpha.iter().any(|a| !a.is_positive()) {
        return Err(Error::Invalid("chebyshev weights must be positive".into()));
    }
    let sum_a: Rational = alpha.iter().sum();
    let mut sum_ab = Rational::zero();
    let mut sum_ax = Rational::zero();
    let mut sum_abx = Rational::zero();
    for ((a, b), xs) in alpha.iter().zip(beta).zip(x) {
        let ab = a * b;
        sum_ax += a * xs;
        sum_abx += &ab * xs;
        sum_ab += ab;
    }
    Ok(sum_a * sum_abx - sum_ab * sum_ax)
}
