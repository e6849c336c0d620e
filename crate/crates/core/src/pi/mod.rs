//! Truncated graded homotopy data: a finitely generated abelian group per
//! degree and a bilinear, graded-symmetric Whitehead bracket table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::BracketOrder;

pub mod catalog;
pub(crate) mod schema;

pub use schema::{load_space, serialize_space};

/// `Z^r ⊕ Z_{d_1} ⊕ ..` with a fixed generator order. An order of `0` is an
/// infinite cyclic factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    orders: Vec<u64>,
}

static TRIVIAL: FgAbelianGroup = FgAbelianGroup { orders: Vec::new() };

impl FgAbelianGroup {
    pub fn new(orders: impl Into<Vec<u64>>) -> Result<Self> {
        let orders = orders.into();
        if let Some(pos) = orders.iter().position(|&d| d == 1) {
            return Err(Error::domain(format!(
                "factor {pos} has order 1; trivial factors are not part of a basis"
            )));
        }
        Ok(FgAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup::default()
    }

    /// Shorthand for `Z`.
    pub fn integers() -> Self {
        FgAbelianGroup { orders: vec![0] }
    }

    /// Shorthand for `Z_d`, `d >= 2`.
    pub fn cyclic(d: u64) -> Self {
        assert!(d >= 2, "cyclic factor order must be at least 2");
        FgAbelianGroup { orders: vec![d] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Same as [`is_trivial`](Self::is_trivial): no generators.
    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&d| d != 0)
    }

    /// Number of elements, `None` if infinite.
    pub fn cardinality(&self) -> Option<u128> {
        self.orders.iter().try_fold(1u128, |acc, &d| {
            if d == 0 {
                None
            } else {
                acc.checked_mul(u128::from(d))
            }
        })
    }

    fn normalize(&self, coeffs: &mut [BigInt]) {
        for (c, &d) in coeffs.iter_mut().zip(&self.orders) {
            if d != 0 {
                *c = c.mod_floor(&BigInt::from(d));
            }
        }
    }

    fn is_normalized(&self, coeffs: &[BigInt]) -> bool {
        coeffs.len() == self.orders.len()
            && coeffs
                .iter()
                .zip(&self.orders)
                .all(|(c, &d)| d == 0 || (!c.is_negative() && *c < BigInt::from(d)))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, &d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if d == 0 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z{d}")?;
            }
        }
        Ok(())
    }
}

/// An element of `π_degree`, stored as normalized coordinates in the
/// degree's generator basis. Degrees above the truncation carry no
/// coordinates and are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiElement {
    degree: u32,
    coeffs: Vec<BigInt>,
}

impl PiElement {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Overwrites one coordinate; the caller keeps it normalized.
    pub(crate) fn set_coeff(&mut self, i: usize, v: BigInt) {
        self.coeffs[i] = v;
    }
}

impl fmt::Display for PiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Generator `index` of `π_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub degree: u32,
    pub index: usize,
}

impl Generator {
    pub fn new(degree: u32, index: usize) -> Self {
        Generator { degree, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.degree, self.index)
    }
}

/// Sign relating `[β, α]` to `[α, β]` for `α ∈ π_p`, `β ∈ π_q`.
pub fn graded_sign(p: u32, q: u32) -> i64 {
    if (u64::from(p) * u64::from(q)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Brackets of generator pairs; absent pairs bracket to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketTable {
    entries: BTreeMap<(Generator, Generator), PiElement>,
}

impl BracketTable {
    pub fn get(&self, a: Generator, b: Generator) -> Option<&PiElement> {
        self.entries.get(&(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, Generator, &PiElement)> {
        self.entries.iter().map(|(&(a, b), v)| (a, b, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with a nonzero value.
    pub fn nonzero(&self) -> impl Iterator<Item = (Generator, Generator, &PiElement)> {
        self.iter().filter(|(_, _, v)| !v.is_zero())
    }
}

/// A rule broken by a bracket table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `[b, a]` differs from `(-1)^(pq) [a, b]`.
    Symmetry {
        a: Generator,
        b: Generator,
        expected: PiElement,
        found: PiElement,
    },
    /// `2 [g, g] != 0` for `g` of odd degree.
    SelfBracketTorsion { generator: Generator },
    /// The value is not killed by `gcd(|a|, |b|)`.
    Torsion { a: Generator, b: Generator, bound: u64 },
    /// Unknown generator, wrong value degree, value above the truncation, or
    /// unnormalized coordinates.
    Malformed {
        a: Generator,
        b: Generator,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Symmetry {
                a,
                b,
                expected,
                found,
            } => write!(
                f,
                "SymmetryViolation: [{b},{a}] is {found}, expected {expected}"
            ),
            Violation::SelfBracketTorsion { generator } => write!(
                f,
                "SelfBracketTorsion: 2*[{generator},{generator}] is nonzero in odd degree"
            ),
            Violation::Torsion { a, b, bound } => write!(
                f,
                "TorsionViolation: [{a},{b}] is not annihilated by gcd of generator orders {bound}"
            ),
            Violation::Malformed { a, b, reason } => {
                write!(f, "MalformedEntry: [{a},{b}]: {reason}")
            }
        }
    }
}

/// The input data for every group computation: groups `π_2..π_truncation`
/// and their Whitehead brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    name: String,
    truncation: u32,
    groups: BTreeMap<u32, FgAbelianGroup>,
    brackets: BracketTable,
    notes: BTreeMap<(Generator, Generator), String>,
}

impl SpaceModel {
    /// A model with the given groups and no brackets. Degrees not listed are
    /// trivial.
    pub fn new(
        name: impl Into<String>,
        truncation: u32,
        groups: impl IntoIterator<Item = (u32, FgAbelianGroup)>,
    ) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::domain("truncation must be at least 2"));
        }
        let mut map = BTreeMap::new();
        for (d, g) in groups {
            if !(2..=truncation).contains(&d) {
                return Err(Error::domain(format!(
                    "group degree {d} outside 2..={truncation}"
                )));
            }
            if !g.is_trivial() {
                map.insert(d, g);
            }
        }
        Ok(SpaceModel {
            name: name.into(),
            truncation,
            groups: map,
            brackets: BracketTable::default(),
            notes: BTreeMap::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn group(&self, degree: u32) -> &FgAbelianGroup {
        self.groups.get(&degree).unwrap_or(&TRIVIAL)
    }

    /// Nontrivial groups by degree.
    pub fn groups(&self) -> impl Iterator<Item = (u32, &FgAbelianGroup)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    pub fn note(&self, a: Generator, b: Generator) -> Option<&str> {
        self.notes.get(&(a, b)).map(String::as_str)
    }

    pub fn order_of_generator(&self, g: Generator) -> Option<u64> {
        self.group(g.degree).orders().get(g.index).copied()
    }

    /// All generators of degree at most `max_degree`, by degree then index.
    pub fn generators_up_to(&self, max_degree: u32) -> Vec<Generator> {
        self.groups
            .range(..=max_degree)
            .flat_map(|(&d, g)| (0..g.len()).map(move |i| Generator::new(d, i)))
            .collect()
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.generators_up_to(self.truncation)
    }

    pub fn zero(&self, degree: u32) -> PiElement {
        PiElement {
            degree,
            coeffs: vec![BigInt::zero(); self.group(degree).len()],
        }
    }

    /// The element with coordinates `coeffs`, reduced modulo the finite factors.
    pub fn element(&self, degree: u32, coeffs: Vec<BigInt>) -> Result<PiElement> {
        let group = self.group(degree);
        if coeffs.len() != group.len() {
            return Err(Error::Element(format!(
                "degree {degree} has {} generators, got {} coefficients",
                group.len(),
                coeffs.len()
            )));
        }
        let mut coeffs = coeffs;
        group.normalize(&mut coeffs);
        Ok(PiElement { degree, coeffs })
    }

    pub fn element_i64(&self, degree: u32, coeffs: &[i64]) -> Result<PiElement> {
        self.element(degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The basis element for `g`.
    pub fn basis(&self, g: Generator) -> Result<PiElement> {
        let mut x = self.zero(g.degree);
        match x.coeffs.get_mut(g.index) {
            Some(c) => *c = BigInt::one(),
            None => return Err(Error::Element(format!("no generator {g}"))),
        }
        self.group(g.degree).normalize(&mut x.coeffs);
        Ok(x)
    }

    pub fn add(&self, x: &PiElement, y: &PiElement) -> Result<PiElement> {
        check_same_degree(x, y)?;
        let mut out = x.clone();
        self.add_scaled(&mut out, y, &BigInt::one());
        Ok(out)
    }

    pub fn sub(&self, x: &PiElement, y: &PiElement) -> Result<PiElement> {
        check_same_degree(x, y)?;
        let mut out = x.clone();
        self.add_scaled(&mut out, y, &-BigInt::one());
        Ok(out)
    }

    pub fn neg(&self, x: &PiElement) -> PiElement {
        self.scale(x, &-BigInt::one())
    }

    pub fn scale(&self, x: &PiElement, factor: &BigInt) -> PiElement {
        let mut out = PiElement {
            degree: x.degree,
            coeffs: x.coeffs.iter().map(|c| c * factor).collect(),
        };
        self.group(x.degree).normalize(&mut out.coeffs);
        out
    }

    /// `target += factor * src`, same degree assumed.
    pub(crate) fn add_scaled(&self, target: &mut PiElement, src: &PiElement, factor: &BigInt) {
        debug_assert_eq!(target.degree, src.degree);
        if factor.is_zero() {
            return;
        }
        for (t, s) in target.coeffs.iter_mut().zip(&src.coeffs) {
            if !s.is_zero() {
                *t += s * factor;
            }
        }
        self.group(target.degree).normalize(&mut target.coeffs);
    }

    /// Order of `x` in its group.
    pub fn element_order(&self, x: &PiElement) -> BracketOrder {
        let mut acc = 1u64;
        for (c, &d) in x.coeffs.iter().zip(self.group(x.degree).orders()) {
            if c.is_zero() {
                continue;
            }
            if d == 0 {
                return BracketOrder::Infinite;
            }
            let g = c.gcd(&BigInt::from(d));
            let part = d / u64::try_from(g).expect("gcd divides a u64");
            acc = acc.lcm(&part);
        }
        BracketOrder::Finite(acc)
    }

    /// Bilinear extension of the bracket table. Brackets landing above the
    /// truncation are zero.
    pub fn bracket(&self, x: &PiElement, y: &PiElement) -> PiElement {
        let degree = x.degree + y.degree - 1;
        let mut out = self.zero(degree);
        if degree > self.truncation {
            return out;
        }
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let a = Generator::new(x.degree, i);
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                if let Some(v) = self.brackets.get(a, Generator::new(y.degree, j)) {
                    self.add_scaled(&mut out, v, &(xi * yj));
                }
            }
        }
        out
    }

    /// Sets the single entry `[a, b]`; the mirror entry is left alone.
    pub fn set_bracket(
        &mut self,
        a: Generator,
        b: Generator,
        value: PiElement,
        note: impl Into<String>,
    ) {
        let note = note.into();
        if !note.is_empty() {
            self.notes.insert((a, b), note);
        }
        self.brackets.entries.insert((a, b), value);
    }

    /// Sets `[a, b]` and its mirror `[b, a] = (-1)^(pq) [a, b]`.
    pub fn set_bracket_symmetric(
        &mut self,
        a: Generator,
        b: Generator,
        value: PiElement,
        note: impl Into<String>,
    ) {
        let note = note.into();
        let mirror = self.scale(&value, &BigInt::from(graded_sign(a.degree, b.degree)));
        self.set_bracket(b, a, mirror, note.clone());
        self.set_bracket(a, b, value, note);
    }

    /// Fills `[b, a]` from `[a, b]` wherever only one order is present.
    pub fn complete_symmetry(&mut self) {
        let missing: Vec<_> = self
            .brackets
            .iter()
            .filter(|(a, b, _)| self.brackets.get(*b, *a).is_none())
            .map(|(a, b, v)| (a, b, v.clone()))
            .collect();
        for (a, b, v) in missing {
            let mirror = self.scale(&v, &BigInt::from(graded_sign(a.degree, b.degree)));
            if let Some(note) = self.notes.get(&(a, b)).cloned() {
                self.notes.insert((b, a), note);
            }
            self.brackets.entries.insert((b, a), mirror);
        }
    }

    /// Every broken bracket-table rule; empty when the model is consistent.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut pairs = BTreeSet::new();
        for (a, b, v) in self.brackets.iter() {
            if let Some(reason) = self.malformed_reason(a, b, v) {
                out.push(Violation::Malformed { a, b, reason });
                continue;
            }
            pairs.insert(if a <= b { (a, b) } else { (b, a) });
        }
        for (a, b) in pairs {
            let v_ab = self.brackets.get(a, b).cloned().unwrap_or_else(|| self.zero(a.degree + b.degree - 1));
            if a == b {
                if a.degree % 2 == 1 && !self.scale(&v_ab, &BigInt::from(2)).is_zero() {
                    out.push(Violation::SelfBracketTorsion { generator: a });
                }
            } else {
                let v_ba = self.brackets.get(b, a).cloned().unwrap_or_else(|| self.zero(v_ab.degree));
                let expected = self.scale(&v_ab, &BigInt::from(graded_sign(a.degree, b.degree)));
                if v_ba != expected {
                    out.push(Violation::Symmetry {
                        a,
                        b,
                        expected,
                        found: v_ba,
                    });
                }
            }
            let bound = self
                .order_of_generator(a)
                .unwrap_or(0)
                .gcd(&self.order_of_generator(b).unwrap_or(0));
            if bound != 0 {
                for (x, y) in [(a, b), (b, a)] {
                    if let Some(v) = self.brackets.get(x, y) {
                        if !self.scale(v, &BigInt::from(bound)).is_zero() {
                            out.push(Violation::Torsion { a: x, b: y, bound });
                        }
                    }
                    if a == b {
                        break;
                    }
                }
            }
        }
        out
    }

    fn malformed_reason(&self, a: Generator, b: Generator, v: &PiElement) -> Option<String> {
        for g in [a, b] {
            if g.degree < 2 || g.degree > self.truncation {
                return Some(format!("generator {g} outside degrees 2..={}", self.truncation));
            }
            if g.index >= self.group(g.degree).len() {
                return Some(format!("no generator {g}"));
            }
        }
        let degree = a.degree + b.degree - 1;
        if v.degree != degree {
            return Some(format!("value has degree {}, expected {degree}", v.degree));
        }
        if degree > self.truncation {
            return Some(format!("value degree {degree} exceeds truncation {}", self.truncation));
        }
        if !self.group(degree).is_normalized(&v.coeffs) {
            return Some(format!("value {v} is not a normalized element of {}", self.group(degree)));
        }
        None
    }

    /// Degrees that receive a nonzero bracket.
    pub fn bracket_output_degrees(&self) -> BTreeSet<u32> {
        self.brackets.nonzero().map(|(_, _, v)| v.degree).collect()
    }
}

fn check_same_degree(x: &PiElement, y: &PiElement) -> Result<()> {
    if x.degree != y.degree {
        return Err(Error::DegreeMismatch {
            left: x.degree,
            right: y.degree,
        });
    }
    Ok(())
}
