//! Integer combinatorics on arbitrary-precision values.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `m!`, with `0! = 1`.
pub fn factorial(m: u32) -> Integer {
    (2..=m).fold(Integer::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(a, b)`. Returns zero when `b < 0` or `b > a`,
/// which is the convention the alternating lattice-point sum for `p_g` relies on.
pub fn binomial(a: u64, b: i64) -> Integer {
    if b < 0 || b as u64 > a {
        return Integer::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = Integer::one();
    for i in 0..b {
        // acc = C(a, i) * (a - i) / (i + 1) stays integral at every step
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Stirling number of the second kind `S(m, r)`, computed from the
/// alternating sum `(1/r!) Σ_j (-1)^j C(r,j) (r-j)^m`.
///
/// Panics if the sum is not divisible by `r!`; that can only happen through
/// an arithmetic bug.
pub fn stirling2(m: u32, r: u32) -> Integer {
    let mut sum = Integer::zero();
    for j in 0..=r {
        let term = binomial(r as u64, j as i64) * num_traits::pow(Integer::from(r - j), m as usize);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let denom = factorial(r);
    let (q, rem) = sum.div_rem(&denom);
    assert!(
        rem.is_zero(),
        "alternating Stirling sum S({m},{r}) not divisible by {r}!"
    );
    q
}

/// `base^exp` for a signed machine integer base.
pub fn ipow(base: i64, exp: u32) -> Integer {
    num_traits::pow(Integer::from(base), exp as usize)
}

pub fn rational(num: impl Into<Integer>, den: impl Into<Integer>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

/// `num/den` in lowest terms, with `den > 0`; integers keep the `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
