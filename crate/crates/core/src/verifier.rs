//! Headline checks on individual germs and exhaustive sweeps over degree grids.
//!
//! Degree tuples in a sweep are enumerated sorted descending; `μ` and `p_g`
//! are symmetric in the degrees, so each germ is visited once. Checks that
//! need "`p_r` largest" reorder internally.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, factorial, from_int, Integer, Rational};
use crate::coefficients::coeff_stirling;
use crate::error::{Error, Result};
use crate::invariants::{genus, milnor, milnor_equal, monomial_sum, DegreeVector, InvariantRecord};
use crate::multi_index;
use crate::verdict::{Claim, Relation, Verdict};

/// All descending tuples `p_1 ≥ … ≥ p_r` with entries in `[p_min, p_max]`,
/// in lexicographic order.
pub fn sorted_degree_tuples(r: usize, p_min: u64, p_max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, r: usize, lo: u64, hi: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        for p in lo..=hi {
            prefix.push(p);
            extend(prefix, r, lo, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if p_min <= p_max {
        extend(&mut Vec::with_capacity(r), r, p_min, p_max, &mut out);
    }
    out
}

fn degrees_param(degrees: &[u64]) -> String {
    degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn stamp(v: Verdict, record: &InvariantRecord) -> Verdict {
    v.param("n", record.n)
        .param("degrees", degrees_param(&record.degrees))
        .with_witness(record.clone())
}

fn require_min_degree(d: &DegreeVector, min: u64) -> Result<()> {
    match d.degrees().iter().enumerate().find(|(_, &p)| p < min) {
        Some((index, &value)) => Err(Error::Degree {
            index: index + 1,
            value,
            min,
        }),
        None => Ok(()),
    }
}

/// `C_{n,r} p_g ≤ μ` for `n ≥ 3`; `4 p_g < μ` for `n = 2`.
pub fn check_new_conjecture(d: &DegreeVector) -> Verdict {
    let record = InvariantRecord::compute(d);
    let verdict = if d.n() < 2 {
        Verdict::not_applicable(Claim::NewConjecture, "stated for n >= 2")
    } else if record.pg.is_zero() {
        Verdict::compare(
            Claim::NewConjecture,
            Rational::zero(),
            Relation::Le,
            from_int(record.mu.clone()),
        )
        .with_note("p_g = 0")
    } else if d.n() == 2 {
        Verdict::compare(
            Claim::NewConjecture,
            from_int(&record.pg * 4),
            Relation::Lt,
            from_int(record.mu.clone()),
        )
    } else {
        let c = coeff_stirling(d.n(), d.r() as u32);
        Verdict::compare(
            Claim::NewConjecture,
            c * from_int(record.pg.clone()),
            Relation::Le,
            from_int(record.mu.clone()),
        )
    };
    stamp(verdict, &record)
}

/// `(n+1)! p_g ≤ μ`
pub fn check_strong_durfee(d: &DegreeVector) -> Verdict {
    let record = InvariantRecord::compute(d);
    let lhs = from_int(factorial(d.n() + 1) * &record.pg);
    let verdict = Verdict::compare(Claim::StrongDurfee, lhs, Relation::Le, from_int(record.mu.clone()));
    stamp(verdict, &record)
}

/// Degrees reordered ascending so that `p_r` is the largest.
fn ascending(d: &DegreeVector) -> Vec<u64> {
    let mut p = d.canonical();
    p.reverse();
    p
}

/// `C_n(p_1..p_s) = Σ_{k∈K_{n,s}} ∏ (p_i-1)^{k_i}`
fn c_sum(n: u32, degrees: &[u64]) -> Integer {
    let shifted: Vec<Integer> = degrees.iter().map(|&p| Integer::from(p - 1)).collect();
    monomial_sum(n, &shifted)
}

/// `D_n(p_1..p_s) = Σ_{k∈K_{n,s}} ∏ C(p_i-1, k_i)/(k_i+1)`; zero for `s = 0`.
fn d_sum(n: u32, degrees: &[u64]) -> Rational {
    if degrees.is_empty() {
        return Rational::zero();
    }
    multi_index::enumerate(n, degrees.len())
        .map(|k| {
            k.entries()
                .iter()
                .zip(degrees)
                .map(|(&ki, &p)| Rational::new(binomial(p - 1, ki as i64), Integer::from(ki + 1)))
                .product::<Rational>()
        })
        .sum()
}

/// `Σ_{k∈K_{n,r}, k_r>0} C(p_r-2, k_r-1)/(k_r(k_r+1)) ∏_{i<r} C(p_i-1,k_i)/(k_i+1)`
fn split_sum(n: u32, degrees: &[u64]) -> Rational {
    let (&last, rest) = degrees.split_last().expect("r >= 1");
    multi_index::enumerate(n, degrees.len())
        .filter(|k| *k.entries().last().expect("r >= 1") > 0)
        .map(|k| {
            let (&kr, head) = k.entries().split_last().expect("r >= 1");
            let tail = Rational::new(binomial(last - 2, kr as i64 - 1), Integer::from(kr * (kr + 1)));
            head.iter()
                .zip(rest)
                .map(|(&ki, &p)| Rational::new(binomial(p - 1, ki as i64), Integer::from(ki + 1)))
                .fold(tail, |acc, f| acc * f)
        })
        .sum()
}

/// `Σ_{k∈K_{n,r}} ∏ (p_i-1)^{k_i}/(k_i+1)!`
fn factorial_weighted_sum(n: u32, degrees: &[u64]) -> Rational {
    multi_index::enumerate(n, degrees.len())
        .map(|k| {
            let mut num = Integer::one();
            let mut den = Integer::one();
            for (&ki, &p) in k.entries().iter().zip(degrees) {
                num *= num_traits::pow(Integer::from(p - 1), ki as usize);
                den *= factorial(ki + 1);
            }
            Rational::new(num, den)
        })
        .sum()
}

/// The expansion of `μ` by decreasing codimension and the matching
/// rewriting of `C_{n,r} p_g`. Returns three exact identities:
///
/// 1. `μ = Σ_{s=1}^{r} (p_s-1)(∏_{i<s} p_i) C_n(p_1..p_s)`
/// 2. `(∏ p_i) D_n(p_1..p_r) = p_g`
/// 3. `D_n(p_1..p_r) - D_n(p_1..p_{r-1}) = (p_r-1) · split sum`
///
/// Requires every `p_i ≥ 2`.
pub fn cn_dn_expansion_check(d: &DegreeVector) -> Result<Vec<Verdict>> {
    require_min_degree(d, 2)?;
    let n = d.n();
    let p = ascending(d);
    let record = InvariantRecord::compute(d);

    let mut telescoped = Integer::zero();
    let mut prefix_product = Integer::one();
    for s in 1..=p.len() {
        telescoped += Integer::from(p[s - 1] - 1) * &prefix_product * c_sum(n, &p[..s]);
        prefix_product *= p[s - 1];
    }
    let mu = Verdict::compare(
        Claim::ExpansionMilnor,
        from_int(telescoped),
        Relation::Eq,
        from_int(milnor(d)),
    );

    let d_full = d_sum(n, &p);
    let pg = Verdict::compare(
        Claim::ExpansionGenus,
        from_int(d.multiplicity()) * &d_full,
        Relation::Eq,
        from_int(record.pg.clone()),
    );

    let r = p.len();
    let last = *p.last().expect("r >= 1");
    let split = Verdict::compare(
        Claim::ExpansionSplit,
        &d_full - d_sum(n, &p[..r - 1]),
        Relation::Eq,
        from_int(last - 1) * split_sum(n, &p),
    );

    Ok([mu, pg, split].into_iter().map(|v| stamp(v, &record)).collect())
}

/// The three displayed inequalities behind `C_{n,r} p_g ≤ μ`, evaluated at
/// `d` with degrees ordered so that `p_r` is largest:
///
/// 1. `C_n(p) ≥ C_{n,r} (D_n(p) + split)` (stated for `n ≥ 3`)
/// 2. `Σ ∏ (p_i-1)^{k_i}/(k_i+1)! ≥ D_n(p) + split` (`n ≥ 3`)
/// 3. `C_n(p) ≥ C_{n,r} Σ ∏ (p_i-1)^{k_i}/(k_i+1)!` (`n ≥ 2`)
///
/// Parts outside their dimension range come back `NotApplicable`.
pub fn intermediate_bounds_check(d: &DegreeVector) -> Result<[Verdict; 3]> {
    require_min_degree(d, 2)?;
    let n = d.n();
    let p = ascending(d);
    let record = InvariantRecord::compute(d);
    let c = coeff_stirling(n, p.len() as u32);

    let a = from_int(c_sum(n, &p));
    let b = factorial_weighted_sum(n, &p);
    let dx = d_sum(n, &p) + split_sum(n, &p);

    let part1 = if n >= 3 {
        Verdict::compare(Claim::Thm3Part1, &c * &dx, Relation::Le, a.clone())
    } else {
        Verdict::not_applicable(Claim::Thm3Part1, "requires n >= 3")
    };
    let part2 = if n >= 3 {
        Verdict::compare(Claim::Thm3Part2, dx, Relation::Le, b.clone())
    } else {
        Verdict::not_applicable(Claim::Thm3Part2, "requires n >= 3")
    };
    let part3 = if n >= 2 {
        Verdict::compare(Claim::Thm3Part3, c * b, Relation::Le, a)
    } else {
        Verdict::not_applicable(Claim::Thm3Part3, "requires n >= 2")
    };
    Ok([part1, part2, part3].map(|v| stamp(v, &record)))
}

/// `E = ((r-1)/(3r+1)) Σ (p_i-1) - Σ_{i<j} (p_i-p_j)^2/(3r+1) - 1`
pub fn surface_e(degrees: &[u64]) -> Rational {
    let r = degrees.len() as i64;
    let linear: i64 = degrees.iter().map(|&p| p as i64 - 1).sum();
    let mut squares = 0i64;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            let diff = degrees[i] as i64 - degrees[j] as i64;
            squares += diff * diff;
        }
    }
    Rational::new(((r - 1) * linear - squares).into(), (3 * r + 1).into()) - Rational::one()
}

/// The surface (`n = 2`) statements, in order:
/// `(a)` `6 p_g = μ+1-P` when `r = 1`; `(b)` `C_{2,r} p_g ≤ μ+1` (informational);
/// `(E)` `μ + P·E + 1 = C_{2,r} p_g`; `(c)` `4 p_g ≤ μ+1-P`;
/// `(d)` the refined bound with `d = min p_i - 1`.
///
/// Requires every `p_i ≥ 2`.
pub fn surface_checks(degrees: &[u64]) -> Result<Vec<Verdict>> {
    let d = DegreeVector::new(2, degrees.to_vec())?;
    require_min_degree(&d, 2)?;
    let record = InvariantRecord::compute(&d);
    let r = d.r() as u32;
    let mu = from_int(record.mu.clone());
    let pg = from_int(record.pg.clone());
    let big_p = from_int(record.multiplicity.clone());
    let c2 = coeff_stirling(2, r);
    let refined_rhs = &mu + Rational::one() - &big_p;

    let a = if r == 1 {
        Verdict::compare(Claim::SurfaceA, from_int(6) * &pg, Relation::Eq, refined_rhs.clone())
    } else {
        Verdict::not_applicable(Claim::SurfaceA, "requires r = 1")
    };
    let b = Verdict::compare(Claim::SurfaceB, &c2 * &pg, Relation::Le, &mu + Rational::one());
    let e = surface_e(degrees);
    let identity = Verdict::compare(
        Claim::SurfaceE,
        &mu + &big_p * &e + Rational::one(),
        Relation::Eq,
        &c2 * &pg,
    )
    .param("E", crate::arith::format_rational(&e));
    let c = Verdict::compare(Claim::SurfaceC, from_int(4) * &pg, Relation::Le, refined_rhs.clone());

    let dd = *degrees.iter().min().expect("nonempty") as i64 - 1;
    let denom = from_int(dd * (r as i64 - 1)) + Rational::new(4.into(), 3.into()) * from_int(dd - 1);
    let refined = if dd >= 1 && denom > Rational::zero() {
        let coeff = from_int(4 * (dd * (r as i64 - 1) + 2 * (dd - 1))) / denom;
        Verdict::compare(Claim::SurfaceD, &coeff * &pg, Relation::Le, refined_rhs)
            .param("d", dd)
            .param("coeff", crate::arith::format_rational(&coeff))
    } else {
        Verdict::not_applicable(Claim::SurfaceD, "coefficient undefined").param("d", dd)
    };

    Ok([a, b, identity, c, refined]
        .into_iter()
        .map(|v| stamp(v, &record))
        .collect())
}

/// Claims a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepClaim {
    StrongDurfee,
    NewConjecture,
    Surface,
    Thm3,
    Expansion,
}

impl SweepClaim {
    pub const ALL: [SweepClaim; 5] = [
        SweepClaim::StrongDurfee,
        SweepClaim::NewConjecture,
        SweepClaim::Surface,
        SweepClaim::Thm3,
        SweepClaim::Expansion,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SweepClaim::StrongDurfee => "strong-durfee",
            SweepClaim::NewConjecture => "new-conjecture",
            SweepClaim::Surface => "surface",
            SweepClaim::Thm3 => "thm3",
            SweepClaim::Expansion => "expansion",
        }
    }

    /// Smallest degree the claim's checks accept.
    pub fn min_degree(self) -> u64 {
        match self {
            SweepClaim::StrongDurfee | SweepClaim::NewConjecture => 1,
            SweepClaim::Surface | SweepClaim::Thm3 | SweepClaim::Expansion => 2,
        }
    }

    fn evaluate(self, d: &DegreeVector) -> Result<Vec<Verdict>> {
        Ok(match self {
            SweepClaim::StrongDurfee => vec![check_strong_durfee(d)],
            SweepClaim::NewConjecture => vec![check_new_conjecture(d)],
            SweepClaim::Surface => surface_checks(d.degrees())?,
            SweepClaim::Thm3 => intermediate_bounds_check(d)?.into(),
            SweepClaim::Expansion => cn_dn_expansion_check(d)?,
        })
    }
}

impl fmt::Display for SweepClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SweepClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown claim '{s}'")))
    }
}

/// Grid of germs for a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub n: RangeInclusive<u32>,
    pub r: RangeInclusive<usize>,
    pub p_min: u64,
    pub p_max: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self, claim: SweepClaim) -> Result<()> {
        if self.n.is_empty() || self.r.is_empty() {
            return Err(Error::Invalid("empty n or r range".into()));
        }
        if *self.n.start() < 1 {
            return Err(Error::Dimension {
                min: 1,
                got: *self.n.start(),
            });
        }
        if *self.r.start() < 1 || *self.r.end() > crate::invariants::MAX_CODIMENSION {
            return Err(Error::Invalid(format!("r range {:?} outside [1, 20]", self.r)));
        }
        if self.p_min < claim.min_degree() {
            return Err(Error::Invalid(format!("{claim} needs p_min >= {}", claim.min_degree())));
        }
        if self.p_min > self.p_max {
            return Err(Error::Invalid("p_min > p_max".into()));
        }
        if claim == SweepClaim::Surface && !self.n.contains(&2) {
            return Err(Error::Invalid("surface sweeps run at n = 2".into()));
        }
        Ok(())
    }

    /// Germs in `(n, r, degrees)` order; surface sweeps only visit `n = 2`.
    pub fn germs(&self, claim: SweepClaim) -> Vec<DegreeVector> {
        let dims: Vec<u32> = if claim == SweepClaim::Surface {
            vec![2]
        } else {
            self.n.clone().collect()
        };
        let mut out = Vec::new();
        for &n in &dims {
            for r in self.r.clone() {
                for degrees in sorted_degree_tuples(r, self.p_min, self.p_max) {
                    out.push(DegreeVector::new(n, degrees).expect("validated grid"));
                }
            }
        }
        out
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))
}

/// Every verdict of `claim` over the grid, sorted by `(n, r, degrees)`.
/// `jobs = 0` lets the pool pick its size. The result does not depend on
/// `jobs`.
pub fn sweep(spec: &SweepSpec, claim: SweepClaim, jobs: usize) -> Result<Vec<Verdict>> {
    spec.validate(claim)?;
    let germs = spec.germs(claim);
    // indexed collect keeps the germ order
    let results: Vec<Vec<Verdict>> =
        pool(jobs)?.install(|| germs.par_iter().map(|d| claim.evaluate(d)).collect::<Result<_>>())?;
    Ok(results.into_iter().flatten().collect())
}

/// The violating verdicts of a sweep (informational claims excluded).
pub fn search_counterexamples(spec: &SweepSpec, claim: SweepClaim, jobs: usize) -> Result<Vec<Verdict>> {
    Ok(sweep(spec, claim, jobs)?
        .into_iter()
        .filter(Verdict::is_violation)
        .collect())
}

/// One equal-degree germ in a sharpness sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessRow {
    pub p: u64,
    pub mu: Integer,
    pub pg: Integer,
    pub ratio: Rational,
    /// `|μ/p_g - C_{n,r}|`
    pub deviation: Rational,
}

impl SharpnessRow {
    pub fn scaled_deviation(&self) -> Rational {
        from_int(self.p) * &self.deviation
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessReport {
    pub n: u32,
    pub r: usize,
    pub coefficient: Rational,
    pub rows: Vec<SharpnessRow>,
    /// Deviations strictly decrease along the list.
    pub decreasing: bool,
    /// `2 · max(p·deviation)` over the two largest `p`.
    pub bound_constant: Rational,
    /// `p·deviation ≤ bound_constant` for every row.
    pub bounded: bool,
}

/// `μ/p_g` for `p_1 = … = p_r = p` along an increasing list of `p ≥ 2`,
/// against its limit `C_{n,r}`.
pub fn sharpness_sweep(n: u32, r: usize, ps: &[u64]) -> Result<SharpnessReport> {
    if n < 1 {
        return Err(Error::Dimension { min: 1, got: n });
    }
    if !(1..=crate::invariants::MAX_CODIMENSION).contains(&r) {
        return Err(Error::Invalid(format!("r = {r} outside [1, 20]")));
    }
    if ps.is_empty() {
        return Err(Error::Invalid("empty p list".into()));
    }
    if let Some(&p) = ps.iter().find(|&&p| p < 2) {
        return Err(Error::Invalid(format!("p = {p} is below 2")));
    }
    if ps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("p list must be strictly increasing".into()));
    }
    let coefficient = coeff_stirling(n, r as u32);
    let rows = ps
        .iter()
        .map(|&p| {
            let d = DegreeVector::equal(n, r, p)?;
            let pg = genus(&d);
            if pg.is_zero() {
                return Err(Error::ZeroGenus { p });
            }
            let mu = milnor_equal(n, r, p);
            let ratio = Rational::new(mu.clone(), pg.clone());
            let deviation = num_traits::abs(&ratio - &coefficient);
            Ok(SharpnessRow {
                p,
                mu,
                pg,
                ratio,
                deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let tail_max = rows
        .iter()
        .rev()
        .take(2)
        .map(SharpnessRow::scaled_deviation)
        .max()
        .expect("nonempty");
    let bound_constant = from_int(2) * tail_max;
    let bounded = rows.iter().all(|row| row.scaled_deviation() <= bound_constant);
    Ok(SharpnessReport {
        n,
        r,
        coefficient,
        rows,
        decreasing,
        bound_constant,
        bounded,
    })
}
