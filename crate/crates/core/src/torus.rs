//! Class-2 truncations of Fox torus homotopy groups `τ_{n+1}(Y)`.
//!
//! An element has one slot per nonempty subset `a ⊆ {1..n}`, valued in
//! `π_{|a|+1}`. Subsets are stored as bitmasks (bit `i - 1` for index `i`).
//! The product twists slotwise addition by a bilinear cocycle:
//!
//! ```text
//! (x·y)_c = x_c + y_c + Σ_{a ∪ b = c, a ∩ b = ∅, b ≺ a} fox_sign(a, b) [x_a, y_b]
//! ```
//!
//! Commutators of embedded classes do not depend on the choice of `≺`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fox::{fox_sign_mask, IndexSet};
use crate::numtheory::binomial;
use crate::pi::schema::{coeffs_json, expect_array, expect_bigint, expect_object, parse_json};
use crate::pi::{Generator, PiElement, SpaceModel};

/// Largest supported level; subsets must fit in a 64-bit mask.
pub const MAX_LEVEL: u32 = 63;

/// Total order on subsets used to normalize products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsetOrder {
    /// Compare largest differing elements; numeric order of bitmasks.
    #[default]
    Colex,
    ReverseColex,
}

impl SubsetOrder {
    /// `b ≺ a`.
    fn precedes(self, b: u64, a: u64) -> bool {
        match self {
            SubsetOrder::Colex => b < a,
            SubsetOrder::ReverseColex => b > a,
        }
    }
}

/// Sparse element: zero slots are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauElement {
    level: u32,
    slots: BTreeMap<u64, PiElement>,
}

impl TauElement {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_identity(&self) -> bool {
        self.slots.is_empty()
    }

    /// Value at subset `a` (zero slots return `None`).
    pub fn slot(&self, a: &IndexSet) -> Option<&PiElement> {
        self.slots.get(&a.to_mask()?)
    }

    /// Nonzero slots in colex order.
    pub fn slots(&self) -> impl Iterator<Item = (IndexSet, &PiElement)> {
        self.slots.iter().map(|(&m, v)| (IndexSet::from_mask(m), v))
    }
}

impl fmt::Display for TauElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, v)) in self.slots().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}@{a}")?;
        }
        Ok(())
    }
}

/// A class-2 torus group over a model.
#[derive(Clone, Debug)]
pub struct TauGroup {
    model: SpaceModel,
    level: u32,
    order: SubsetOrder,
}

impl TauGroup {
    /// Rejects models in which a bracket takes a bracket output as argument.
    pub fn new(model: &SpaceModel, level: u32) -> Result<Self> {
        Self::with_order(model, level, SubsetOrder::Colex)
    }

    pub fn with_order(model: &SpaceModel, level: u32, order: SubsetOrder) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL || level + 1 > model.truncation() {
            return Err(Error::domain(format!(
                "level {level} outside 1..={} for truncation {}",
                (model.truncation() - 1).min(MAX_LEVEL),
                model.truncation()
            )));
        }
        let top = level + 1;
        let relevant = || {
            model
                .brackets()
                .nonzero()
                .filter(move |(_, _, v)| v.degree() <= top)
        };
        let outputs: Vec<u32> = relevant().map(|(_, _, v)| v.degree()).collect();
        if let Some((a, b, _)) =
            relevant().find(|(a, b, _)| outputs.contains(&a.degree) || outputs.contains(&b.degree))
        {
            return Err(Error::ModelNotClass2 { a, b });
        }
        Ok(TauGroup {
            model: model.clone(),
            level,
            order,
        })
    }

    pub fn model(&self) -> &SpaceModel {
        &self.model
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn subset_order(&self) -> SubsetOrder {
        self.order
    }

    pub fn identity(&self) -> TauElement {
        TauElement {
            level: self.level,
            slots: BTreeMap::new(),
        }
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.level) - 1
    }

    /// `x` placed at slot `a`; needs `|a| + 1 = deg x` and `a ⊆ {1..level}`.
    pub fn embed(&self, x: &PiElement, a: &IndexSet) -> Result<TauElement> {
        let mask = a
            .to_mask()
            .filter(|m| *m != 0 && m & !self.full_mask() == 0)
            .ok_or_else(|| Error::domain(format!("subset {a} is not a nonempty subset of 1..={}", self.level)))?;
        if a.len() as u32 + 1 != x.degree() {
            return Err(Error::DegreeMismatch {
                left: a.len() as u32 + 1,
                right: x.degree(),
            });
        }
        let x = self.model.element(x.degree(), x.coeffs().to_vec())?;
        let mut out = self.identity();
        if !x.is_zero() {
            out.slots.insert(mask, x);
        }
        Ok(out)
    }

    pub fn embed_generator(&self, g: Generator, a: &IndexSet) -> Result<TauElement> {
        self.embed(&self.model.basis(g)?, a)
    }

    fn check(&self, x: &TauElement) -> Result<()> {
        if x.level != self.level {
            return Err(Error::LevelMismatch {
                left: x.level as usize,
                right: self.level as usize,
            });
        }
        Ok(())
    }

    fn add_into(&self, slots: &mut BTreeMap<u64, PiElement>, c: u64, v: &PiElement, factor: &BigInt) {
        let entry = slots.entry(c).or_insert_with(|| self.model.zero(v.degree()));
        self.model.add_scaled(entry, v, factor);
        if entry.is_zero() {
            slots.remove(&c);
        }
    }

    /// `Σ_{b ≺ a} fox_sign(a, b) [x_a, y_b]` over disjoint supports.
    fn cocycle(&self, x: &BTreeMap<u64, PiElement>, y: &BTreeMap<u64, PiElement>) -> BTreeMap<u64, PiElement> {
        let mut out = BTreeMap::new();
        for (&a, xa) in x {
            for (&b, yb) in y {
                if a & b != 0 || !self.order.precedes(b, a) {
                    continue;
                }
                let br = self.model.bracket(xa, yb);
                if br.is_zero() {
                    continue;
                }
                self.add_into(&mut out, a | b, &br, &BigInt::from(fox_sign_mask(a, b)));
            }
        }
        out
    }

    pub fn multiply(&self, x: &TauElement, y: &TauElement) -> Result<TauElement> {
        self.check(x)?;
        self.check(y)?;
        let mut slots = self.cocycle(&x.slots, &y.slots);
        let one = BigInt::one();
        for (&c, v) in x.slots.iter().chain(&y.slots) {
            self.add_into(&mut slots, c, v, &one);
        }
        Ok(TauElement {
            level: self.level,
            slots,
        })
    }

    /// Solves `x·y = 1` slot by slot in increasing subset size.
    pub fn inverse(&self, x: &TauElement) -> Result<TauElement> {
        self.check(x)?;
        let mut masks: Vec<u64> = Vec::new();
        for &a in x.slots.keys() {
            for &b in x.slots.keys() {
                if a & b == 0 {
                    masks.push(a | b);
                }
            }
            masks.push(a);
        }
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.dedup();
        let mut y: BTreeMap<u64, PiElement> = BTreeMap::new();
        for c in masks {
            let mut t = x.slots.get(&c).cloned().unwrap_or_else(|| self.model.zero(c.count_ones() + 1));
            for (&a, xa) in &x.slots {
                if a & c != a || a == c {
                    continue;
                }
                let b = c & !a;
                if !self.order.precedes(b, a) {
                    continue;
                }
                if let Some(yb) = y.get(&b) {
                    let br = self.model.bracket(xa, yb);
                    self.model.add_scaled(&mut t, &br, &BigInt::from(fox_sign_mask(a, b)));
                }
            }
            let v = self.model.neg(&t);
            if !v.is_zero() {
                y.insert(c, v);
            }
        }
        Ok(TauElement {
            level: self.level,
            slots: y,
        })
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, x: &TauElement, y: &TauElement) -> Result<TauElement> {
        let xy = self.multiply(x, y)?;
        let xyx = self.multiply(&xy, &self.inverse(x)?)?;
        self.multiply(&xyx, &self.inverse(y)?)
    }

    /// Slot counts by degree, found by listing every subset (level at most
    /// 24). They equal `C(level, k)` for `π_{k+1}`.
    pub fn slot_counts(&self) -> Result<BTreeMap<u32, u64>> {
        if self.level > 24 {
            return Err(Error::BudgetExceeded {
                k: self.level,
                budget: 24,
            });
        }
        let mut out = BTreeMap::new();
        for mask in 1..=self.full_mask() {
            *out.entry(mask.count_ones() + 1).or_insert(0) += 1;
        }
        Ok(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, density: f64, spread: i64) -> TauElement {
        let mut slots = BTreeMap::new();
        for mask in 1..=self.full_mask() {
            if !rng.gen_bool(density) {
                continue;
            }
            let d = mask.count_ones() + 1;
            let coeffs = self
                .model
                .group(d)
                .orders()
                .iter()
                .map(|&o| {
                    if o == 0 {
                        BigInt::from(rng.gen_range(-spread..=spread))
                    } else {
                        BigInt::from(rng.gen_range(0..o))
                    }
                })
                .collect();
            let v = self.model.element(d, coeffs).expect("lengths match the group");
            if !v.is_zero() {
                slots.insert(mask, v);
            }
        }
        TauElement {
            level: self.level,
            slots,
        }
    }

    /// Parses `{"1,3":[1], "2":[0,1]}`.
    pub fn parse_element(&self, literal: &str) -> Result<TauElement> {
        self.parse_inner(literal).map_err(|e| match e {
            Error::Element(_) => e,
            other => Error::Element(other.to_string()),
        })
    }

    fn parse_inner(&self, literal: &str) -> Result<TauElement> {
        let value = parse_json(literal)?;
        let mut out = self.identity();
        for (key, v) in expect_object(&value, "element")? {
            let indices = key
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Element(format!("subset key `{key}` is not a list of indices")))?;
            let a = IndexSet::new(indices)?;
            let coeffs = expect_array(v, key)?
                .iter()
                .map(|c| expect_bigint(c, key))
                .collect::<Result<Vec<_>>>()?;
            let x = self.model.element(a.len() as u32 + 1, coeffs)?;
            out = self.multiply(&out, &self.embed(&x, &a)?)?;
        }
        Ok(out)
    }

    /// Compact JSON, nonzero slots only, in colex order.
    pub fn format_element(&self, x: &TauElement) -> String {
        let mut map = Map::new();
        for (&mask, v) in &x.slots {
            let key = IndexSet::from_mask(mask)
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.insert(key, coeffs_json(v.coeffs()));
        }
        Value::Object(map).to_string()
    }
}

/// Multiplicity of `π_{k+1}` in `τ_n`, `C(n - 1, k)` for `k = 1..n-1`, keyed
/// by degree `k + 1`.
pub fn binomial_multiplicities(n: u32) -> BTreeMap<u32, BigUint> {
    (1..n)
        .map(|k| (k + 1, binomial(u64::from(n - 1), i64::from(k))))
        .collect()
}

/// [`binomial_multiplicities`] restricted to degrees where the model's group
/// is nontrivial.
pub fn tau_multiplicities(n: u32, model: &SpaceModel) -> BTreeMap<u32, BigUint> {
    binomial_multiplicities(n)
        .into_iter()
        .filter(|(d, _)| !model.group(*d).is_trivial())
        .collect()
}

/// Multiplicity `C(n - 2, i - 2)` of `π_i` in the kernel of `τ_n → τ_{n-1}`,
/// for `i = 2..=n`.
pub fn kernel_multiplicities(n: u32) -> BTreeMap<u32, BigUint> {
    (2..=n)
        .map(|i| (i, binomial(u64::from(n.saturating_sub(2)), i64::from(i) - 2)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::fox_sign;
    use crate::pi::catalog::catalog_model;
    use crate::pi::FgAbelianGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[u32]) -> IndexSet {
        IndexSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn s2_disjoint_singletons() {
        let m = catalog_model("S2@4").unwrap();
        for order in [SubsetOrder::Colex, SubsetOrder::ReverseColex] {
            let g = TauGroup::with_order(&m, 2, order).unwrap();
            let iota = m.basis(Generator::new(2, 0)).unwrap();
            let x = g.embed(&iota, &set(&[2])).unwrap();
            let y = g.embed(&iota, &set(&[1])).unwrap();
            let c = g.commutator(&x, &y).unwrap();
            let expected = m.neg(&m.bracket(&iota, &iota));
            assert_eq!(c, g.embed(&expected, &set(&[1, 2])).unwrap());
            assert_eq!(g.format_element(&c), r#"{"1,2":[-2]}"#);
        }
    }

    #[test]
    fn overlapping_supports_commute() {
        let m = catalog_model("Wedge23@4").unwrap();
        let g = TauGroup::new(&m, 3).unwrap();
        let x = g.embed_generator(Generator::new(3, 0), &set(&[1, 2])).unwrap();
        let y = g.embed_generator(Generator::new(3, 0), &set(&[2, 3])).unwrap();
        assert!(g.commutator(&x, &y).unwrap().is_identity());
    }

    #[test]
    fn commutator_law_with_signs() {
        let m = catalog_model("Wedge23@4").unwrap();
        let g = TauGroup::new(&m, 3).unwrap();
        let i1 = Generator::new(2, 0);
        let i2 = Generator::new(3, 0);
        for (a, b) in [(vec![3], vec![1, 2]), (vec![1], vec![2, 3]), (vec![2], vec![1, 3])] {
            let (a, b) = (set(&a), set(&b));
            let c = g
                .commutator(&g.embed_generator(i1, &a).unwrap(), &g.embed_generator(i2, &b).unwrap())
                .unwrap();
            let sign = fox_sign(&a, &b).unwrap();
            let value = m.element_i64(4, &[i64::from(sign)]).unwrap();
            assert_eq!(c, g.embed(&value, &a.union(&b)).unwrap(), "{a} {b}");
        }
    }

    #[test]
    fn inverse_and_identity() {
        let m = catalog_model("S2@4").unwrap();
        let g = TauGroup::new(&m, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = g.random_element(&mut rng, 0.6, 4);
            let y = g.random_element(&mut rng, 0.6, 4);
            let z = g.random_element(&mut rng, 0.6, 4);
            assert!(g.multiply(&x, &g.inverse(&x).unwrap()).unwrap().is_identity());
            assert!(g.multiply(&g.inverse(&x).unwrap(), &x).unwrap().is_identity());
            assert_eq!(g.multiply(&x, &g.identity()).unwrap(), x);
            let l = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
            let r = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
            assert_eq!(l, r);
            assert!(g.commutator(&x, &x).unwrap().is_identity());
        }
    }

    #[test]
    fn class_two_guard() {
        let mut m = SpaceModel::new(
            "deep",
            4,
            [(2, FgAbelianGroup::integers()), (3, FgAbelianGroup::integers()), (4, FgAbelianGroup::integers())],
        )
        .unwrap();
        let a = Generator::new(2, 0);
        let b = Generator::new(3, 0);
        m.set_bracket_symmetric(a, a, m.element_i64(3, &[1]).unwrap(), "");
        m.set_bracket_symmetric(a, b, m.element_i64(4, &[1]).unwrap(), "");
        assert!(matches!(TauGroup::new(&m, 3), Err(Error::ModelNotClass2 { .. })));
        // At level 2 the second bracket lands above the top degree.
        assert!(TauGroup::new(&m, 2).is_ok());
    }

    #[test]
    fn literals() {
        let m = catalog_model("S2@4").unwrap();
        let g = TauGroup::new(&m, 3).unwrap();
        let x = g.parse_element(r#"{"1,3":[1],"2":[5]}"#).unwrap();
        assert_eq!(g.parse_element(&g.format_element(&x)).unwrap(), x);
        assert_eq!(g.format_element(&g.identity()), "{}");
        assert!(g.parse_element(r#"{"1,4":[1]}"#).is_err());
        assert!(g.parse_element(r#"{"1":[1,1]}"#).is_err());
        assert!(g.parse_element(r#"{"0":[1]}"#).is_err());
    }

    #[test]
    fn embed_checks_degree() {
        let m = catalog_model("S2@4").unwrap();
        let g = TauGroup::new(&m, 3).unwrap();
        let iota = m.basis(Generator::new(2, 0)).unwrap();
        assert!(matches!(g.embed(&iota, &set(&[1, 2])), Err(Error::DegreeMismatch { .. })));
        assert!(g.embed(&m.zero(2), &set(&[1])).unwrap().is_identity());
    }

    #[test]
    fn multiplicities() {
        let t8 = binomial_multiplicities(8);
        assert_eq!(t8[&4], BigUint::from(35u32));
        assert_eq!(t8[&5], BigUint::from(35u32));
        let k5 = kernel_multiplicities(5);
        assert_eq!(k5[&5], BigUint::from(1u32));
        assert_eq!(k5[&4], BigUint::from(3u32));
        let s4 = catalog_model("S4reduced@8").unwrap();
        let filtered = tau_multiplicities(8, &s4);
        assert_eq!(filtered.keys().copied().collect::<Vec<_>>(), vec![4, 5, 8]);
        let g = TauGroup::new(&s4, 7).unwrap();
        let counts = g.slot_counts().unwrap();
        assert_eq!(counts[&4], 35);
        assert_eq!(counts[&5], 35);
    }
}
