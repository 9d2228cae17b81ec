//! Milnor number and geometric genus of a homogeneous ICIS
//! `{f_1 = … = f_r = 0} ⊂ (C^{n+r}, 0)` with `deg f_i = p_i`.
//!
//! Each invariant has two independent routes:
//!
//! | invariant | primary                                   | oracle                                      |
//! |-----------|-------------------------------------------|---------------------------------------------|
//! | `μ`       | alternating sum of monomial sums over `K` | Euler characteristic via series coefficient |
//! | `p_g`     | `Σ_{k∈K_{n,r}} ∏ C(p_i, k_i+1)`           | inclusion–exclusion lattice-point count     |

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, from_int, ipow, Integer, Rational};
use crate::error::{Error, Result};
use crate::multi_index::{self, MultiIndex};
use crate::series::TruncatedSeries;

pub const MAX_CODIMENSION: usize = 20;

/// Dimension `n` and multidegree `(p_1, …, p_r)`. Degrees are kept in the
/// order given; [`DegreeVector::canonical`] sorts them descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeVector {
    n: u32,
    degrees: Vec<u64>,
}

impl DegreeVector {
    pub fn new(n: u32, degrees: Vec<u64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Dimension { min: 1, got: n });
        }
        if degrees.is_empty() {
            return Err(Error::NoDegrees);
        }
        if degrees.len() > MAX_CODIMENSION {
            return Err(Error::Codimension(degrees.len()));
        }
        if let Some((index, &value)) = degrees.iter().enumerate().find(|(_, &p)| p < 1) {
            return Err(Error::Degree {
                index: index + 1,
                value,
                min: 1,
            });
        }
        Ok(Self { n, degrees })
    }

    /// `r` copies of `p`.
    pub fn equal(n: u32, r: usize, p: u64) -> Result<Self> {
        Self::new(n, vec![p; r])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    /// `N = n + r`
    pub fn embedding_dim(&self) -> u64 {
        self.n as u64 + self.r() as u64
    }

    /// `P = ∏ p_i`
    pub fn multiplicity(&self) -> Integer {
        self.degrees.iter().map(|&p| Integer::from(p)).product()
    }

    /// Degrees sorted descending.
    pub fn canonical(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn without(&self, index: usize) -> Option<Self> {
        let mut degrees = self.degrees.clone();
        degrees.remove(index);
        Self::new(self.n, degrees).ok()
    }
}

/// `Σ_{k∈K_{m,s}} ∏ v_i^{k_i}` where `s = values.len()`.
pub fn monomial_sum(m: u32, values: &[Integer]) -> Integer {
    let powers = power_table(values, m);
    multi_index::enumerate(m, values.len())
        .map(|k| monomial(&powers, &k))
        .sum()
}

pub(crate) fn power_table(values: &[Integer], max_exp: u32) -> Vec<Vec<Integer>> {
    values
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(max_exp as usize + 1);
            row.push(Integer::one());
            for e in 1..=max_exp as usize {
                let next = &row[e - 1] * v;
                row.push(next);
            }
            row
        })
        .collect()
}

pub(crate) fn monomial(powers: &[Vec<Integer>], k: &MultiIndex) -> Integer {
    let mut acc = Integer::one();
    for (row, &e) in powers.iter().zip(k.entries()) {
        if e > 0 {
            acc *= &row[e as usize];
        }
    }
    acc
}

fn sign(j: u32) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `μ = (∏ p_i) Σ_{j=0}^{n} (-1)^j Σ_{k∈K_{n-j,r}} ∏ (p_i-1)^{k_i} - (-1)^n`.
pub fn milnor(d: &DegreeVector) -> Integer {
    let n = d.n();
    let shifted: Vec<Integer> = d.degrees().iter().map(|&p| Integer::from(p - 1)).collect();
    let mut alternating = Integer::zero();
    for j in 0..=n {
        let h = monomial_sum(n - j, &shifted);
        if j.is_multiple_of(2) {
            alternating += h;
        } else {
            alternating -= h;
        }
    }
    d.multiplicity() * alternating - sign(n)
}

/// `μ` through the Euler characteristic of the Milnor fiber,
/// `χ = (∏ p_i) [(1+x)^N / ∏(1 + p_i x)]_n` and `μ = (-1)^n (χ - 1)`.
pub fn milnor_oracle(d: &DegreeVector) -> Integer {
    let order = d.n() as usize;
    let numerator = TruncatedSeries::binomial_power(d.embedding_dim(), order);
    let denominator = d.degrees().iter().fold(TruncatedSeries::one(order), |acc, &p| {
        let factor = TruncatedSeries::from_coefficients(vec![Rational::one(), from_int(p)], order);
        acc.multiply(&factor)
    });
    let quotient = numerator.multiply(&denominator.invert().expect("constant term is 1"));
    let chi = quotient.coefficient_at(order).expect("order n") * from_int(d.multiplicity());
    assert!(chi.is_integer(), "Euler characteristic {chi} is not integral");
    (chi.to_integer() - 1) * sign(d.n())
}

/// `p_g = Σ_{k∈K_{n,r}} ∏ C(p_i, k_i + 1)`.
pub fn genus(d: &DegreeVector) -> Integer {
    multi_index::enumerate(d.n(), d.r())
        .map(|k| {
            let mut acc = Integer::one();
            for (&p, &ki) in d.degrees().iter().zip(k.entries()) {
                if ki as u64 + 1 > p {
                    return Integer::zero();
                }
                acc *= binomial(p, ki as i64 + 1);
            }
            acc
        })
        .sum()
}

/// `p_g = Σ_{S⊆{1..r}} (-1)^{|S|} C(Σ_k p_k - Σ_{i∈S} p_i, N)`.
pub fn genus_oracle(d: &DegreeVector) -> Integer {
    let total: u64 = d.degrees().iter().sum();
    let big_n = d.embedding_dim() as i64;
    let mut acc = Integer::zero();
    for mask in 0u32..(1u32 << d.r()) {
        let removed: u64 = d
            .degrees()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .sum();
        let term = binomial(total - removed, big_n);
        if mask.count_ones() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `μ` for `p_1 = … = p_r = p`:
/// `(-1)^n (p^r Σ_{j=0}^{n} (1-p)^j C(j+r-1, j) - 1)`.
pub fn milnor_equal(n: u32, r: usize, p: u64) -> Integer {
    let one_minus_p = 1 - p as i64;
    let sum: Integer = (0..=n)
        .map(|j| ipow(one_minus_p, j) * binomial(j as u64 + r as u64 - 1, j as i64))
        .sum();
    (num_traits::pow(Integer::from(p), r) * sum - 1) * sign(n)
}

/// Coefficients of `p^N` in `μ` and `p_g` for equal degrees `p`:
/// `(C(N-1, n), Σ_{k∈K_{n,r}} ∏ 1/(k_i+1)!)`.
pub fn leading_coefficients(n: u32, r: usize) -> (Integer, Rational) {
    let mu_lead = binomial(n as u64 + r as u64 - 1, n as i64);
    let pg_lead = multi_index::enumerate(n, r)
        .map(|k| {
            let den: Integer = k.entries().iter().map(|&ki| factorial(ki + 1)).product();
            Rational::new(Integer::one(), den)
        })
        .sum();
    (mu_lead, pg_lead)
}

/// `μ`, `p_g`, multiplicity and `μ/p_g` for one germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub n: u32,
    /// Canonical (descending) degrees.
    pub degrees: Vec<u64>,
    pub mu: Integer,
    pub pg: Integer,
    pub multiplicity: Integer,
    /// `None` when `p_g = 0`.
    pub ratio: Option<Rational>,
}

impl InvariantRecord {
    pub fn compute(d: &DegreeVector) -> Self {
        Self::from_parts(d, milnor(d), genus(d))
    }

    pub fn from_parts(d: &DegreeVector, mu: Integer, pg: Integer) -> Self {
        let ratio = (!pg.is_zero()).then(|| Rational::new(mu.clone(), pg.clone()));
        Self {
            n: d.n(),
            degrees: d.canonical(),
            mu,
            pg,
            multiplicity: d.multiplicity(),
            ratio,
        }
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }
}
