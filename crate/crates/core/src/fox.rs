//! Fox signs and the Fox function `φ(l, k)`.
//!
//! For disjoint index sets `a`, `b` the Fox sign is `(-1)^(w + |a| - 1)`
//! where `w` counts the pairs `i ∈ a`, `j ∈ b` with `j < i`. The Fox
//! function sums the Fox sign over all `l`-subsets `a` of `{1..k}`, with
//! `b` the complement.
//!
//! Boundary values follow the subset sum itself: `φ(0, k) = -1` (the empty
//! subset contributes `(-1)^(-1)`) and `φ(k, k) = (-1)^(k-1)`. With these
//! boundaries the recurrence, the parity relations and the four-case closed
//! form all agree; the three evaluation routes here are checked against each
//! other in the tests.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numtheory::binomial;

/// Printed alongside φ tables so readers know which boundary values are in use.
pub const CONVENTION_NOTE: &str =
    "convention: phi(0,k) = -1 and phi(k,k) = (-1)^(k-1), the values of the subset sum";

/// Largest `k` that [`phi_bruteforce`] enumerates unless told otherwise.
pub const DEFAULT_ENUMERATION_BUDGET: u32 = 24;

/// A finite set of positive integers, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<u32>);

impl IndexSet {
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = elements.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::domain("index sets contain positive integers only"));
        }
        v.sort_unstable();
        v.dedup();
        Ok(IndexSet(v))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, .., k}`.
    pub fn range(k: u32) -> Self {
        IndexSet((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    /// Elements of `universe` not in `self`.
    pub fn complement_in(&self, universe: &IndexSet) -> IndexSet {
        IndexSet(universe.iter().filter(|&i| !self.contains(i)).collect())
    }

    /// Bit `i - 1` is set for every element `i`. `None` if an element exceeds 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.iter()
            .try_fold(0u64, |m, i| (i <= 64).then(|| m | (1u64 << (i - 1))))
    }

    pub fn from_mask(mask: u64) -> Self {
        IndexSet((0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Number of pairs `(i, j)` with `i ∈ a`, `j ∈ b` and `j < i`.
pub fn inversions(a: &IndexSet, b: &IndexSet) -> usize {
    a.iter()
        .map(|i| b.iter().filter(|&j| j < i).count())
        .sum()
}

/// The Fox sign `(-1)^(w + |a| - 1)` of an ordered pair of disjoint sets.
pub fn fox_sign(a: &IndexSet, b: &IndexSet) -> Result<i8> {
    if a.is_empty() {
        return Err(Error::domain("the first index set of a Fox sign must be nonempty"));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Disjointness {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(sign_of(inversions(a, b) + a.len() - 1))
}

/// Fox sign on bitmask-encoded sets; the caller guarantees disjointness and `a != 0`.
pub(crate) fn fox_sign_mask(a: u64, b: u64) -> i8 {
    debug_assert!(a != 0 && a & b == 0);
    let mut w = 0u32;
    let mut rest = a;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        w += (b & ((1u64 << bit) - 1)).count_ones();
        rest &= rest - 1;
    }
    sign_of(w as usize + a.count_ones() as usize - 1)
}

fn sign_of(exponent: usize) -> i8 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_args(l: u32, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("phi(l, k) needs k >= 1"));
    }
    if l > k {
        return Err(Error::domain(format!("phi({l}, {k}) needs l <= k")));
    }
    Ok(())
}

/// `φ(l, k)` by summing Fox signs over every `l`-subset of `{1..k}`.
pub fn phi_bruteforce(l: u32, k: u32) -> Result<BigInt> {
    phi_bruteforce_with_budget(l, k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn phi_bruteforce_with_budget(l: u32, k: u32, budget: u32) -> Result<BigInt> {
    check_args(l, k)?;
    if k > budget {
        return Err(Error::BudgetExceeded { k, budget });
    }
    if l == 0 {
        // Single empty subset, exponent 0 + 0 - 1.
        return Ok(BigInt::from(-1));
    }
    let universe = IndexSet::range(k);
    let mut total: i64 = 0;
    // Lexicographic l-combinations of 1..=k.
    let mut comb: Vec<u32> = (1..=l).collect();
    loop {
        let a = IndexSet(comb.clone());
        let b = a.complement_in(&universe);
        total += i64::from(fox_sign(&a, &b)?);

        let Some(pos) = (0..l as usize).rev().find(|&i| comb[i] < k - (l - 1 - i as u32)) else {
            break;
        };
        comb[pos] += 1;
        for i in pos + 1..l as usize {
            comb[i] = comb[i - 1] + 1;
        }
    }
    Ok(BigInt::from(total))
}

/// Memoized values of `φ(l, k)` for `0 <= l <= k <= max_k`, filled by the
/// recurrence `φ(l,k) = (-1)^(k-l+1) φ(l-1,k-1) + φ(l,k-1)`.
#[derive(Clone, Debug)]
pub struct FoxTable {
    rows: Vec<Vec<BigInt>>,
}

impl FoxTable {
    pub fn new(max_k: u32) -> Self {
        let mut table = FoxTable { rows: Vec::new() };
        table.extend_to(max_k);
        table
    }

    pub fn max_k(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn extend_to(&mut self, max_k: u32) {
        let minus_one = BigInt::from(-1);
        if self.rows.is_empty() {
            self.rows.push(vec![minus_one.clone()]);
        }
        while self.rows.len() <= max_k as usize {
            let k = self.rows.len();
            let prev = &self.rows[k - 1];
            let mut row = Vec::with_capacity(k + 1);
            row.push(minus_one.clone());
            for l in 1..k {
                let lower = &prev[l - 1];
                let v = if (k - l + 1).is_multiple_of(2) {
                    lower + &prev[l]
                } else {
                    &prev[l] - lower
                };
                row.push(v);
            }
            row.push(if k % 2 == 1 { BigInt::from(1) } else { minus_one.clone() });
            self.rows.push(row);
        }
    }

    pub fn get(&self, l: u32, k: u32) -> Option<&BigInt> {
        self.rows.get(k as usize)?.get(l as usize)
    }

    /// Row `k` as `φ(0,k), .., φ(k,k)`.
    pub fn row(&self, k: u32) -> Option<&[BigInt]> {
        self.rows.get(k as usize).map(Vec::as_slice)
    }
}

fn shared_table() -> &'static Mutex<FoxTable> {
    static TABLE: OnceLock<Mutex<FoxTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(FoxTable::new(16)))
}

/// `φ(l, k)` from a process-wide [`FoxTable`], grown on demand.
pub fn phi_recurrence(l: u32, k: u32) -> Result<BigInt> {
    check_args(l, k)?;
    let mut table = shared_table().lock().unwrap_or_else(|e| e.into_inner());
    if table.max_k() < k {
        table.extend_to(k);
    }
    Ok(table.get(l, k).cloned().expect("table covers k"))
}

/// Four-case closed form of `φ(l, k)`, defined for `1 <= l <= k`.
pub fn phi_closed(l: u32, k: u32) -> Result<BigInt> {
    if l == 0 || l > k {
        return Err(Error::domain(format!(
            "closed form of phi({l}, {k}) needs 1 <= l <= k"
        )));
    }
    let (l, k) = (u64::from(l), u64::from(k));
    let value = match (l % 2 == 0, k % 2 == 0) {
        (true, true) => -BigInt::from(binomial(k / 2, (l / 2) as i64)),
        (false, true) => BigInt::from(0),
        (false, false) => BigInt::from(binomial((k - 1) / 2, ((l - 1) / 2) as i64)),
        (true, false) => -BigInt::from(binomial((k - 1) / 2, (l / 2) as i64)),
    };
    Ok(value)
}
