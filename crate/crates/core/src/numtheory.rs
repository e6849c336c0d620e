//! Exact combinatorics behind the commutativity criteria: binomials, Lucas
//! residues, Catalan numbers, the `Δ` table and the stem predicates for
//! `[J_{4n±1}(S^1), ΩS^{2n}]`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Trial division; enough for the small moduli used with Lucas' theorem.
pub fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `C(n, k) mod p` via the base-`p` digits of `n` and `k`.
pub fn binomial_mod_p(n: u64, k: u64, p: u64) -> Result<u64> {
    if !is_small_prime(p) || p > u64::from(u32::MAX) {
        return Err(Error::domain(format!("{p} is not a small prime")));
    }
    if k > n {
        return Ok(0);
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return Ok(0);
        }
        acc = acc * small_binomial_mod(a, b, p) % p;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

// a, b < p, so none of the factorials below vanish mod p.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Whether `C(n, k)` is odd: every binary digit of `k` is at most the
/// corresponding digit of `n`.
pub fn binomial_odd(n: u64, k: u64) -> bool {
    k <= n && k & !n == 0
}

/// The `n`-th Catalan number, by `C_{m+1} = C_m · 2(2m+1) / (m+2)`.
pub fn catalan(n: u64) -> BigUint {
    CatalanNumbers::new().nth(n as usize).expect("infinite sequence")
}

/// `C_0, C_1, C_2, ..` without recomputing from scratch.
#[derive(Clone, Debug)]
pub struct CatalanNumbers {
    m: u64,
    current: BigUint,
}

impl CatalanNumbers {
    pub fn new() -> Self {
        CatalanNumbers {
            m: 0,
            current: BigUint::one(),
        }
    }
}

impl Default for CatalanNumbers {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CatalanNumbers {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.current.clone();
        let m = self.m;
        self.current = &self.current * (2 * (2 * m + 1)) / (m + 2);
        self.m += 1;
        Some(out)
    }
}

/// Order of a Whitehead product; infinite order is its own value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for BracketOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketOrder::Finite(k) => write!(f, "{k}"),
            BracketOrder::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for BracketOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinite" | "Infinite" => Ok(BracketOrder::Infinite),
            _ => match s.parse::<u64>() {
                Ok(k) if k >= 1 => Ok(BracketOrder::Finite(k)),
                _ => Err(Error::domain(format!(
                    "bracket order must be a positive integer or `inf`, got `{s}`"
                ))),
            },
        }
    }
}

/// One entry of the `Δ` table, for `α ∈ π_{n+1}` and `β ∈ π_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEntry {
    pub n: u64,
    pub m: u64,
    pub value: BigUint,
}

/// `Δ(n, m)`: the coefficient whose divisibility by the order of `[α, β]`
/// decides whether `α` and `β` commute.
pub fn delta(n: u64, m: u64) -> Result<DeltaEntry> {
    if n == 0 || m == 0 {
        return Err(Error::domain("delta(n, m) needs n, m >= 1"));
    }
    let value = match (n % 2 == 1, m % 2 == 1) {
        (true, true) => BigUint::zero(),
        (true, false) => binomial((n + m - 1) / 2, (m / 2) as i64),
        (false, true) => binomial((n + m - 1) / 2, (n / 2) as i64),
        (false, false) => binomial((n + m) / 2, (n / 2) as i64),
    };
    Ok(DeltaEntry { n, m, value })
}

/// Whether homogeneous `α ∈ π_{n+1}` and `β ∈ π_{m+1}` commute when their
/// bracket has the given order.
pub fn commutes_by_degree(n: u64, m: u64, bracket_order: BracketOrder) -> Result<bool> {
    if n % 2 == 1 && m % 2 == 1 {
        return Ok(true);
    }
    let d = delta(n, m)?;
    Ok(match bracket_order {
        BracketOrder::Infinite => false,
        BracketOrder::Finite(k) => (&d.value % k).is_zero(),
    })
}

pub fn is_power_of_two(n: u64) -> bool {
    n.is_power_of_two()
}

/// Membership in `T*(01)`: every base-3 digit above the units digit is 0 or 1.
/// The units digit is unrestricted.
pub fn in_tstar01(n: u64) -> bool {
    let mut rest = n / 3;
    while rest > 0 {
        if rest % 3 == 2 {
            return false;
        }
        rest /= 3;
    }
    true
}

/// Whether `[J_{4n-1}(S^1), ΩS^{2n}]` is abelian.
pub fn j4n_minus1_abelian(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("stem index n must be >= 1"));
    }
    Ok(!is_power_of_two(n))
}

/// Order of `[ι_{2n}, ν_{2n}]` for `n` not a power of two: 12 for odd `n`, 24 for even.
pub fn iota_nu_bracket_order(n: u64) -> u64 {
    if n % 2 == 1 {
        12
    } else {
        24
    }
}

fn require_not_power_of_two(n: u64) -> Result<()> {
    if n == 0 || is_power_of_two(n) {
        return Err(Error::domain(format!(
            "the J_(4n+1) criterion needs n not a power of two, got {n}"
        )));
    }
    Ok(())
}

/// Whether `[J_{4n+1}(S^1), ΩS^{2n}]` is abelian, decided by exact
/// divisibility of `n·C_n` by the order of `[ι_{2n}, ν_{2n}]`.
pub fn j4n_plus1_abelian(n: u64) -> Result<bool> {
    require_not_power_of_two(n)?;
    let delta = catalan(n) * n;
    Ok((delta % iota_nu_bracket_order(n)).is_zero())
}

/// The same predicate through base-2 and base-3 digit conditions:
/// for odd `n`, `n + 1` has at least three binary ones (that is,
/// `n ≠ 2^a - 1` and `n ≠ 2^a + 2^b - 1`), and for every `n`, `3 | n` or
/// `n + 1 ∉ T*(01)`.
pub fn j4n_plus1_abelian_by_digits(n: u64) -> Result<bool> {
    require_not_power_of_two(n)?;
    let three_part = n.is_multiple_of(3) || !in_tstar01(n + 1);
    if n % 2 == 1 {
        let two_part = (n + 1).count_ones() >= 3;
        Ok(two_part && three_part)
    } else {
        Ok(three_part)
    }
}

/// Row of the stem table for `S^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemReport {
    pub n: u64,
    /// `Δ(2n-1, 2n) = C(2n-1, n)`, for the pair `ι_{2n}`, `η_{2n}`.
    pub delta_low: BigUint,
    /// `Δ(2n-1, 2n+2) = n·C_n`, for the pair `ι_{2n}`, `ν_{2n}`.
    pub delta_high: BigUint,
    pub j4nm1_abelian: bool,
    /// `None` when `n` is a power of two.
    pub j4np1_abelian: Option<bool>,
}

pub fn stem_report(n: u64) -> Result<StemReport> {
    if n == 0 {
        return Err(Error::domain("stem index n must be >= 1"));
    }
    let delta_low = delta(2 * n - 1, 2 * n)?.value;
    let delta_high = delta(2 * n - 1, 2 * n + 2)?.value;
    let j4np1_abelian = if is_power_of_two(n) {
        None
    } else {
        Some((&delta_high % iota_nu_bracket_order(n)).is_zero())
    };
    Ok(StemReport {
        n,
        delta_low,
        delta_high,
        j4nm1_abelian: j4n_minus1_abelian(n)?,
        j4np1_abelian,
    })
}

/// `v_p(x)` for nonzero `x`.
pub fn valuation(x: &BigUint, p: u64) -> u32 {
    let mut x = x.clone();
    let mut v = 0;
    while !x.is_zero() {
        let (q, r) = x.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            break;
        }
        x = q;
        v += 1;
    }
    v
}
