//! The Cohen group `[J_n(S^1), ΩY]` at level `n`.
//!
//! As a set the group is `π_2 × .. × π_{n+1}`. The product is addition in
//! the lowest coordinate; in degree `d >= 3` it is
//!
//! ```text
//! (x # y)_d = x_d + y_d + Σ_{k + j = d + 1, k, j >= 2} φ(k - 1, d - 2) [x_k, y_j]
//! ```
//!
//! which unrolls the inductive description one level at a time: the top
//! coordinate of level `n` uses `φ(k - 1, n - 1)` and lower coordinates
//! multiply as at level `n - 1`. Dropping the top coordinate is a surjective
//! homomorphism with central kernel.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fox::{phi_bruteforce, phi_closed};
use crate::numtheory::BracketOrder;
use crate::pi::schema::{coeffs_json, expect_array, expect_bigint, expect_object, parse_json};
use crate::pi::{Generator, PiElement, SpaceModel};

/// Where the `φ` coefficients of the product come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiSource {
    #[default]
    Closed,
    /// Subset enumeration; a slow cross-check of the closed form.
    Bruteforce,
}

/// An element: one coordinate per degree `2..=level+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohenElement {
    level: u32,
    coords: Vec<PiElement>,
}

impl CohenElement {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coordinate in `π_degree`.
    pub fn coord(&self, degree: u32) -> Option<&PiElement> {
        degree.checked_sub(2).and_then(|i| self.coords.get(i as usize))
    }

    pub fn coords(&self) -> &[PiElement] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(PiElement::is_zero)
    }

    /// Lowest degree with a nonzero coordinate.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.coords.iter().position(|c| !c.is_zero()).map(|i| i as u32 + 2)
    }
}

impl fmt::Display for CohenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Result of [`CohenGroup::order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
    ExceedsBound,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
            Order::ExceedsBound => write!(f, "exceeds bound"),
        }
    }
}

/// Outcome of [`CohenGroup::is_abelian`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianCheck {
    Abelian,
    /// Two generators whose homogeneous elements do not commute.
    NonAbelian { a: Generator, b: Generator },
}

impl AbelianCheck {
    pub fn is_abelian(&self) -> bool {
        matches!(self, AbelianCheck::Abelian)
    }
}

/// Outcome of [`CohenGroup::nilpotency_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyProbe {
    /// All left-normed generator commutators of weight `class + 1` vanish.
    Class(u32),
    ExceedsDepth,
}

/// A finite Cohen group listed in full.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub elements: Vec<CohenElement>,
    /// Element order to number of elements of that order.
    pub order_census: BTreeMap<u64, usize>,
    pub exponent: u64,
    /// Every product of two listed elements is listed.
    pub closed: bool,
}

impl EnumeratedGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.order_census.contains_key(&(self.elements.len() as u64))
    }
}

/// The group `[J_level(S^1), ΩY]` for a fixed model.
#[derive(Clone, Debug)]
pub struct CohenGroup {
    model: SpaceModel,
    level: u32,
    /// `phi[d - 3][k - 2] = φ(k - 1, d - 2)` for `3 <= d <= level + 1`, `2 <= k <= d - 1`.
    phi: Vec<Vec<BigInt>>,
}

impl CohenGroup {
    pub fn new(model: &SpaceModel, level: u32) -> Result<Self> {
        Self::with_phi_source(model, level, PhiSource::Closed)
    }

    pub fn with_phi_source(model: &SpaceModel, level: u32, source: PhiSource) -> Result<Self> {
        if level == 0 || level + 1 > model.truncation() {
            return Err(Error::domain(format!(
                "level {level} outside 1..={} for truncation {}",
                model.truncation() - 1,
                model.truncation()
            )));
        }
        let phi = (3..=level + 1)
            .map(|d| {
                (2..d)
                    .map(|k| match source {
                        PhiSource::Closed => phi_closed(k - 1, d - 2),
                        PhiSource::Bruteforce => phi_bruteforce(k - 1, d - 2),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CohenGroup {
            model: model.clone(),
            level,
            phi,
        })
    }

    pub fn model(&self) -> &SpaceModel {
        &self.model
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<u32> {
        2..=self.level + 1
    }

    /// Coefficient of `[x_k, y_{d+1-k}]` in coordinate `d` of a product.
    pub fn coefficient(&self, d: u32, k: u32) -> Option<&BigInt> {
        if d < 3 || d > self.level + 1 || k < 2 || k >= d {
            return None;
        }
        self.phi.get((d - 3) as usize)?.get((k - 2) as usize)
    }

    pub fn identity(&self) -> CohenElement {
        CohenElement {
            level: self.level,
            coords: self.degrees().map(|d| self.model.zero(d)).collect(),
        }
    }

    /// Element from coordinates listed by degree; missing degrees are zero.
    pub fn element(&self, coords: impl IntoIterator<Item = PiElement>) -> Result<CohenElement> {
        let mut out = self.identity();
        for c in coords {
            let d = c.degree();
            if !self.degrees().contains(&d) {
                return Err(Error::Element(format!("degree {d} outside 2..={}", self.level + 1)));
            }
            out.coords[(d - 2) as usize] = self.model.element(d, c.coeffs().to_vec())?;
        }
        Ok(out)
    }

    /// `x` placed in its own degree slot, all other coordinates zero.
    pub fn homogeneous(&self, x: &PiElement) -> Result<CohenElement> {
        self.element([x.clone()])
    }

    pub fn generator_element(&self, g: Generator) -> Result<CohenElement> {
        self.homogeneous(&self.model.basis(g)?)
    }

    /// Generators of the coordinate groups in degrees `2..=level+1`.
    pub fn generators(&self) -> Vec<Generator> {
        self.model.generators_up_to(self.level + 1)
    }

    fn check(&self, x: &CohenElement) -> Result<()> {
        if x.level != self.level {
            return Err(Error::LevelMismatch {
                left: x.level as usize,
                right: self.level as usize,
            });
        }
        Ok(())
    }

    /// Correction `Σ φ [x_k, y_j]` in degree `d` (from the stored coefficients).
    fn correction(&self, d: u32, x: &CohenElement, y_coords: &[PiElement]) -> PiElement {
        let mut acc = self.model.zero(d);
        if d < 3 {
            return acc;
        }
        let row = &self.phi[(d - 3) as usize];
        for k in 2..d {
            let coeff = &row[(k - 2) as usize];
            if coeff.is_zero() {
                continue;
            }
            let xk = &x.coords[(k - 2) as usize];
            let yj = &y_coords[(d - k - 1) as usize];
            if xk.is_zero() || yj.is_zero() {
                continue;
            }
            let b = self.model.bracket(xk, yj);
            self.model.add_scaled(&mut acc, &b, coeff);
        }
        acc
    }

    pub fn multiply(&self, x: &CohenElement, y: &CohenElement) -> Result<CohenElement> {
        self.check(x)?;
        self.check(y)?;
        let coords = self
            .degrees()
            .map(|d| {
                let i = (d - 2) as usize;
                let mut z = self.correction(d, x, &y.coords);
                self.model.add_scaled(&mut z, &x.coords[i], &BigInt::one());
                self.model.add_scaled(&mut z, &y.coords[i], &BigInt::one());
                z
            })
            .collect();
        Ok(CohenElement {
            level: self.level,
            coords,
        })
    }

    /// Solves `x # y = identity` one degree at a time, lowest first.
    pub fn inverse(&self, x: &CohenElement) -> Result<CohenElement> {
        self.check(x)?;
        let mut coords: Vec<PiElement> = Vec::with_capacity(x.coords.len());
        for d in self.degrees() {
            let mut t = self.correction(d, x, &coords);
            self.model.add_scaled(&mut t, &x.coords[(d - 2) as usize], &BigInt::one());
            coords.push(self.model.neg(&t));
        }
        Ok(CohenElement {
            level: self.level,
            coords,
        })
    }

    /// `x # y # x^-1 # y^-1`.
    pub fn commutator(&self, x: &CohenElement, y: &CohenElement) -> Result<CohenElement> {
        let xy = self.multiply(x, y)?;
        let xyx = self.multiply(&xy, &self.inverse(x)?)?;
        self.multiply(&xyx, &self.inverse(y)?)
    }

    /// `x^m` by repeated squaring; negative `m` uses the inverse.
    pub fn power(&self, x: &CohenElement, m: i64) -> Result<CohenElement> {
        self.check(x)?;
        let mut base = if m < 0 { self.inverse(x)? } else { x.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Order of `x`, or `ExceedsBound` if it is finite but larger than `bound`.
    ///
    /// The lowest nonzero coordinate of `x^m` is `m` times that of `x`, so
    /// a free component there makes `x` of infinite order; otherwise, with
    /// `k` the order of that coordinate, `order(x) = k * order(x^k)` and
    /// `x^k` starts in a higher degree.
    pub fn order(&self, x: &CohenElement, bound: u64) -> Result<Order> {
        self.check(x)?;
        let mut total: u64 = 1;
        let mut current = x.clone();
        while let Some(d) = current.lowest_degree() {
            let k = match self.model.element_order(&current.coords[(d - 2) as usize]) {
                BracketOrder::Infinite => return Ok(Order::Infinite),
                BracketOrder::Finite(k) => k,
            };
            total = match total.checked_mul(k) {
                Some(t) if t <= bound => t,
                _ => return Ok(Order::ExceedsBound),
            };
            current = self.power(&current, k as i64)?;
        }
        Ok(Order::Finite(total))
    }

    /// Image at level `level - 1` (drop the top coordinate).
    pub fn project(&self, x: &CohenElement) -> Result<CohenElement> {
        self.check(x)?;
        if self.level == 1 {
            return Err(Error::domain("level 1 has no projection"));
        }
        Ok(CohenElement {
            level: self.level - 1,
            coords: x.coords[..x.coords.len() - 1].to_vec(),
        })
    }

    /// The group one level down, target of [`CohenGroup::project`].
    pub fn projected_group(&self) -> Result<CohenGroup> {
        if self.level == 1 {
            return Err(Error::domain("level 1 has no projection"));
        }
        Ok(CohenGroup {
            model: self.model.clone(),
            level: self.level - 1,
            phi: self.phi[..self.phi.len().saturating_sub(1)].to_vec(),
        })
    }

    /// Checks all pairs of homogeneous generator elements.
    pub fn is_abelian(&self) -> Result<AbelianCheck> {
        let gens = self.generators();
        let elems = gens
            .iter()
            .map(|&g| self.generator_element(g))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !self.commutator(&elems[i], &elems[j])?.is_identity() {
                    return Ok(AbelianCheck::NonAbelian { a: gens[i], b: gens[j] });
                }
            }
        }
        Ok(AbelianCheck::Abelian)
    }

    /// Smallest `c <= depth` such that every left-normed commutator of
    /// `c + 1` homogeneous generators is trivial.
    pub fn nilpotency_probe(&self, depth: u32) -> Result<NilpotencyProbe> {
        let gens = self
            .generators()
            .into_iter()
            .map(|g| self.generator_element(g))
            .collect::<Result<Vec<_>>>()?;
        let mut layer: Vec<CohenElement> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut c = 0;
        while !layer.is_empty() {
            if c == depth {
                return Ok(NilpotencyProbe::ExceedsDepth);
            }
            c += 1;
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for s in &layer {
                for g in &gens {
                    let t = self.commutator(s, g)?;
                    if !t.is_identity() && seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            layer = next;
        }
        Ok(NilpotencyProbe::Class(c))
    }

    /// Number of elements, `None` if some coordinate group is infinite or
    /// the count overflows.
    pub fn cardinality(&self) -> Option<u128> {
        self.degrees()
            .try_fold(1u128, |acc, d| acc.checked_mul(self.model.group(d).cardinality()?))
    }

    /// Lists every element (coordinates in lexicographic order, lowest
    /// degree most significant), with order census, exponent and a Cayley
    /// table closure check.
    pub fn enumerate(&self, size_bound: u64) -> Result<EnumeratedGroup> {
        let size = self
            .cardinality()
            .ok_or_else(|| Error::NotEnumerable("a coordinate group is infinite".into()))?;
        if size > u128::from(size_bound) {
            return Err(Error::NotEnumerable(format!(
                "{size} elements exceed the bound {size_bound}"
            )));
        }
        let mut elements = vec![self.identity()];
        for d in self.degrees() {
            let orders = self.model.group(d).orders();
            for (i, &ord) in orders.iter().enumerate() {
                let mut grown = Vec::with_capacity(elements.len() * ord as usize);
                for e in &elements {
                    for v in 0..ord {
                        let mut e = e.clone();
                        e.coords[(d - 2) as usize].set_coeff(i, BigInt::from(v));
                        grown.push(e);
                    }
                }
                elements = grown;
            }
        }
        let mut census = BTreeMap::new();
        let mut exponent = 1u64;
        for e in &elements {
            match self.order(e, size as u64)? {
                Order::Finite(k) => {
                    *census.entry(k).or_insert(0) += 1;
                    exponent = exponent.lcm(&k);
                }
                other => {
                    return Err(Error::NotEnumerable(format!("element {e} has order {other}")));
                }
            }
        }
        let members: HashSet<&CohenElement> = elements.iter().collect();
        let mut closed = true;
        'outer: for x in &elements {
            for y in &elements {
                if !members.contains(&self.multiply(x, y)?) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        Ok(EnumeratedGroup {
            elements,
            order_census: census,
            exponent,
            closed,
        })
    }

    /// Uniform in finite factors, `-spread..=spread` in free factors.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> CohenElement {
        let coords = self
            .degrees()
            .map(|d| {
                let coeffs = self
                    .model
                    .group(d)
                    .orders()
                    .iter()
                    .map(|&ord| {
                        if ord == 0 {
                            BigInt::from(rng.gen_range(-spread..=spread))
                        } else {
                            BigInt::from(rng.gen_range(0..ord))
                        }
                    })
                    .collect();
                self.model.element(d, coeffs).expect("lengths match the group")
            })
            .collect();
        CohenElement {
            level: self.level,
            coords,
        }
    }

    pub fn is_associative_on(&self, x: &CohenElement, y: &CohenElement, z: &CohenElement) -> Result<bool> {
        let left = self.multiply(&self.multiply(x, y)?, z)?;
        let right = self.multiply(x, &self.multiply(y, z)?)?;
        Ok(left == right)
    }

    /// Searches for a non-associative triple: exhaustively when the group
    /// has at most `exhaustive_limit` elements, otherwise over `samples`
    /// random triples drawn from `seed`.
    pub fn associativity_failure(
        &self,
        samples: usize,
        seed: u64,
        exhaustive_limit: u64,
    ) -> Result<Option<[CohenElement; 3]>> {
        if self.cardinality().is_some_and(|n| n <= u128::from(exhaustive_limit)) {
            let all = self.enumerate(exhaustive_limit)?.elements;
            for x in &all {
                for y in &all {
                    for z in &all {
                        if !self.is_associative_on(x, y, z)? {
                            return Ok(Some([x.clone(), y.clone(), z.clone()]));
                        }
                    }
                }
            }
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let t = [
                self.random_element(&mut rng, 5),
                self.random_element(&mut rng, 5),
                self.random_element(&mut rng, 5),
            ];
            if !self.is_associative_on(&t[0], &t[1], &t[2])? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Parses a literal such as `{"2":[1],"3":[0]}`; omitted degrees are zero.
    pub fn parse_element(&self, literal: &str) -> Result<CohenElement> {
        self.parse_element_inner(literal)
            .map_err(|e| match e {
                Error::Element(_) => e,
                other => Error::Element(other.to_string()),
            })
    }

    fn parse_element_inner(&self, literal: &str) -> Result<CohenElement> {
        let value = parse_json(literal)?;
        let obj = expect_object(&value, "element")?;
        let mut coords = Vec::new();
        for (key, v) in obj {
            let d: u32 = key
                .parse()
                .map_err(|_| Error::Element(format!("degree key `{key}` is not an integer")))?;
            let coeffs = expect_array(v, key)?
                .iter()
                .map(|c| expect_bigint(c, key))
                .collect::<Result<Vec<_>>>()?;
            if !self.degrees().contains(&d) {
                return Err(Error::Element(format!("degree {d} outside 2..={}", self.level + 1)));
            }
            coords.push(self.model.element(d, coeffs)?);
        }
        self.element(coords)
    }

    /// Compact JSON with degrees in increasing order; degrees whose group is
    /// trivial are left out.
    pub fn format_element(&self, x: &CohenElement) -> String {
        let mut map = Map::new();
        for c in &x.coords {
            if !c.coeffs().is_empty() {
                map.insert(c.degree().to_string(), coeffs_json(c.coeffs()));
            }
        }
        Value::Object(map).to_string()
    }
}
