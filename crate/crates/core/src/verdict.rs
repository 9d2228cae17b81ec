//! Outcome of a single exact comparison.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, Rational};
use crate::invariants::InvariantRecord;

/// The statement a [`Verdict`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `(n+1)! p_g ≤ μ`
    StrongDurfee,
    /// `C_{n,r} p_g ≤ μ` for `n ≥ 3`, `4 p_g < μ` for `n = 2`
    NewConjecture,
    /// `C_{n,r+1} < C_{n,r}`
    CoefficientMonotone,
    /// `2^n < C_{n,r}`, with `C_{n,r} - 2^n` decreasing in `r`
    CoefficientLimitBound,
    /// `X^s ≤ X^{s+1}`
    XOrdering,
    /// `Y^{s+1} < Y^s`
    YOrdering,
    /// `μ` equals the telescoping sum `Σ_s (p_s-1)(∏_{i<s} p_i) C_n(p_1..p_s)`
    ExpansionMilnor,
    /// `(∏ p_i) D_n(p) = p_g`
    ExpansionGenus,
    /// `D_n(p_1..p_r) - D_n(p_1..p_{r-1})` equals the split `k_r > 0` sum
    ExpansionSplit,
    Thm3Part1,
    Thm3Part2,
    Thm3Part3,
    /// `6 p_g = μ + 1 - P` for `r = 1`
    SurfaceA,
    /// `C_{2,r} p_g ≤ μ + 1`; known to fail, informational only
    SurfaceB,
    /// `μ + P E + 1 = C_{2,r} p_g`
    SurfaceE,
    /// `4 p_g ≤ μ + 1 - P`
    SurfaceC,
    /// refined bound for `p_i ≥ d + 1`
    SurfaceD,
}

impl Claim {
    pub fn id(self) -> &'static str {
        match self {
            Claim::StrongDurfee => "strong-durfee",
            Claim::NewConjecture => "new-conjecture",
            Claim::CoefficientMonotone => "coeff-monotone",
            Claim::CoefficientLimitBound => "coeff-limit-bound",
            Claim::XOrdering => "x-ordering",
            Claim::YOrdering => "y-ordering",
            Claim::ExpansionMilnor => "expansion-mu",
            Claim::ExpansionGenus => "expansion-pg",
            Claim::ExpansionSplit => "expansion-split",
            Claim::Thm3Part1 => "thm3-part1",
            Claim::Thm3Part2 => "thm3-part2",
            Claim::Thm3Part3 => "thm3-part3",
            Claim::SurfaceA => "surface-a",
            Claim::SurfaceB => "surface-b",
            Claim::SurfaceE => "surface-e",
            Claim::SurfaceC => "surface-c",
            Claim::SurfaceD => "surface-d",
        }
    }

    /// Informational claims are reported but never count as violations.
    pub fn is_informational(self) -> bool {
        matches!(self, Claim::SurfaceB)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }

    fn holds(self, slack: &Rational) -> bool {
        match self {
            Relation::Le => !slack.is_negative(),
            Relation::Lt => slack.is_positive(),
            Relation::Eq => slack.is_zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    NotApplicable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::NotApplicable => "n/a",
        }
    }
}

/// `lhs <relation> rhs`, with `gap = rhs - lhs` (the slack: nonnegative
/// whenever a `<=` claim holds).
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub claim: Claim,
    pub params: Vec<(String, String)>,
    pub outcome: Outcome,
    pub relation: Relation,
    pub lhs: Rational,
    pub rhs: Rational,
    pub gap: Rational,
    pub witness: Option<InvariantRecord>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn compare(claim: Claim, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let gap = &rhs - &lhs;
        let outcome = if relation.holds(&gap) {
            Outcome::Holds
        } else {
            Outcome::Fails
        };
        Self {
            claim,
            params: Vec::new(),
            outcome,
            relation,
            lhs,
            rhs,
            gap,
            witness: None,
            note: None,
        }
    }

    pub fn not_applicable(claim: Claim, note: impl Into<String>) -> Self {
        Self {
            claim,
            params: Vec::new(),
            outcome: Outcome::NotApplicable,
            relation: Relation::Le,
            lhs: Rational::zero(),
            rhs: Rational::zero(),
            gap: Rational::zero(),
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn with_witness(mut self, record: InvariantRecord) -> Self {
        self.witness = Some(record);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    /// A failure that should count against a sweep.
    pub fn is_violation(&self) -> bool {
        self.fails() && !self.claim.is_informational()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.outcome.as_str(), self.claim)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        if self.outcome != Outcome::NotApplicable {
            write!(
                f,
                ": {} {} {} (gap {})",
                format_rational(&self.lhs),
                self.relation.symbol(),
                format_rational(&self.rhs),
                format_rational(&self.gap)
            )?;
        }
        if let Some(note) = &self.note {
            write!(f, " -- {note}")?;
        }
        Ok(())
    }
}
