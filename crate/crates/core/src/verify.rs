//! The regression suite behind `foxcohen verify` and the `acceptance` test
//! target. Each criterion is a self-contained check with an optional time
//! limit; a check that finishes correctly but late counts as a failure.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohen::{AbelianCheck, CohenGroup, Order};
use crate::error::{Error, Result};
use crate::fox::{fox_sign, phi_bruteforce, phi_closed, phi_recurrence, FoxTable, IndexSet};
use crate::numtheory::{
    binomial, binomial_mod_p, catalan, commutes_by_degree, delta, in_tstar01, is_power_of_two,
    j4n_minus1_abelian, j4n_plus1_abelian, j4n_plus1_abelian_by_digits, BracketOrder, CatalanNumbers,
};
use crate::pi::catalog::{catalog, catalog_model};
use crate::pi::{FgAbelianGroup, Generator, SpaceModel};
use crate::torus::{binomial_multiplicities, kernel_multiplicities, tau_multiplicities, SubsetOrder, TauGroup};

/// Group names accepted by [`run`].
pub const GROUPS: [&str; 4] = ["fox", "numtheory", "cohen", "torus"];

type Outcome = std::result::Result<String, String>;

/// One acceptance criterion.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u32,
    pub group: &'static str,
    pub title: &'static str,
    pub limit: Option<Duration>,
    check: fn() -> Outcome,
}

impl fmt::Debug for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Criterion")
            .field("id", &self.id)
            .field("group", &self.group)
            .field("title", &self.title)
            .field("limit", &self.limit)
            .finish()
    }
}

/// Outcome of running a [`Criterion`].
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: u32,
    pub group: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl CheckResult {
    /// A single report line, e.g. `PASS  1 fox  ...  (0.21s) ...`.
    pub fn line(&self) -> String {
        let limit = match self.limit {
            Some(l) => format!(" / limit {}s", l.as_secs()),
            None => String::new(),
        };
        format!(
            "{} {:>2} {:<9} {} ({:.2}s{}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.group,
            self.title,
            self.elapsed.as_secs_f64(),
            limit,
            self.detail
        )
    }
}

impl Criterion {
    pub fn run(&self) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(limit) = self.limit {
            if elapsed > limit {
                passed = false;
                detail = format!("exceeded time limit; {detail}");
            }
        }
        CheckResult {
            id: self.id,
            group: self.group,
            title: self.title,
            passed,
            detail,
            elapsed,
            limit: self.limit,
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// All criteria in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, group: "fox", title: "phi oracle agreement for 1 <= l <= k <= 16", limit: secs(30), check: c01_phi_oracles },
        Criterion { id: 2, group: "fox", title: "parity, stability, alternation, even-even recursion for k <= 200", limit: secs(5), check: c02_phi_relations },
        Criterion { id: 3, group: "numtheory", title: "Delta equals the phi commutator coefficient for n, m <= 40", limit: None, check: c03_delta_phi },
        Criterion { id: 4, group: "cohen", title: "S2 level 2 product rule and the (m, m(m-1)+n) isomorphism", limit: None, check: c04_s2_rule },
        Criterion { id: 5, group: "cohen", title: "M3 level 2 has 8 elements, census {1:1, 2:3, 4:4}", limit: secs(1), check: c05_m3_census },
        Criterion { id: 6, group: "cohen", title: "M7 level 10 bottom-cell element has order 4", limit: None, check: c06_m7_order },
        Criterion { id: 7, group: "cohen", title: "S4 level 7 non-abelian; J_(4n-1) criterion for n <= 64", limit: None, check: c07_s4_and_powers_of_two },
        Criterion { id: 8, group: "numtheory", title: "J_(4n+1) criterion: n = 29, 34 and digit form for n <= 1000", limit: secs(10), check: c08_j4n_plus1 },
        Criterion { id: 9, group: "numtheory", title: "Catalan mod 3 and n C_n = C(2n, n-1) for n <= 3000", limit: secs(10), check: c09_catalan },
        Criterion { id: 10, group: "torus", title: "torus commutators of embedded classes for |a| + |b| <= 8", limit: None, check: c10_torus_commutators },
        Criterion { id: 11, group: "torus", title: "binomial multiplicities of tau_8 and the tau_5 kernel", limit: None, check: c11_multiplicities },
        Criterion { id: 12, group: "cohen", title: "group axioms on 10^4 random triples over the catalog", limit: secs(60), check: c12_group_axioms },
        Criterion { id: 13, group: "cohen", title: "connectivity window: abelian up to level 4n-2 for n = 2, 3", limit: None, check: c13_connectivity_window },
    ]
}

/// The criterion with the given number.
pub fn criterion(id: u32) -> Option<Criterion> {
    criteria().into_iter().find(|c| c.id == id)
}

/// Runs every criterion, or only those in group `only`.
pub fn run(only: Option<&str>) -> Result<Vec<CheckResult>> {
    if let Some(g) = only {
        if !GROUPS.contains(&g) {
            return Err(Error::domain(format!(
                "unknown group `{g}`; expected one of {}",
                GROUPS.join(", ")
            )));
        }
    }
    Ok(criteria()
        .into_iter()
        .filter(|c| only.is_none_or(|g| c.group == g))
        .map(|c| c.run())
        .collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c01_phi_oracles() -> Outcome {
    let mut count = 0;
    for k in 1..=16 {
        for l in 1..=k {
            let b = lib(phi_bruteforce(l, k))?;
            let r = lib(phi_recurrence(l, k))?;
            let c = lib(phi_closed(l, k))?;
            ensure(b == r && r == c, || format!("phi({l},{k}): bruteforce {b}, recurrence {r}, closed {c}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} values agree"))
}

fn c02_phi_relations() -> Outcome {
    const K: u32 = 200;
    let t = FoxTable::new(K);
    let phi = |l: u32, k: u32| t.get(l, k).expect("in table");
    for k in 1..=K {
        for l in 1..=k {
            let c = lib(phi_closed(l, k))?;
            ensure(phi(l, k) == &c, || format!("recurrence and closed form differ at ({l},{k})"))?;
        }
    }
    let mut checks = 0usize;
    for k in 1..=K / 2 {
        for l in (1..=2 * k).step_by(2) {
            ensure(phi(l, 2 * k).is_zero(), || format!("phi({l},{}) != 0", 2 * k))?;
            checks += 1;
        }
        for l in (0..=2 * k).step_by(2) {
            if 2 * k < K {
                ensure(phi(l, 2 * k) == phi(l, 2 * k + 1), || format!("stability fails at l={l}, k={k}"))?;
                ensure(phi(l + 1, 2 * k + 1) == &-phi(l, 2 * k + 1), || {
                    format!("alternation fails at l={l}, k={k}")
                })?;
                checks += 2;
            }
        }
        for l in 0..=k {
            let expected = -BigInt::from(binomial(u64::from(k), i64::from(l)));
            ensure(phi(2 * l, 2 * k) == &expected, || format!("phi({},{}) != -C({k},{l})", 2 * l, 2 * k))?;
            checks += 1;
            if k >= 2 && (1..k).contains(&l) {
                let rhs = phi(2 * l, 2 * k - 2) + phi(2 * l - 2, 2 * k - 2);
                ensure(phi(2 * l, 2 * k) == &rhs, || format!("even-even recursion fails at l={l}, k={k}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} relations hold"))
}

fn c03_delta_phi() -> Outcome {
    for n in 1..=40u32 {
        for m in 1..=40u32 {
            let top = n + m - 1;
            let sign = if ((n + 1) * (m + 1)) % 2 == 0 { 1 } else { -1 };
            let lhs = lib(phi_recurrence(n, top))? - BigInt::from(sign) * lib(phi_recurrence(m, top))?;
            let d = lib(delta(u64::from(n), u64::from(m)))?.value;
            ensure(lhs.magnitude() == &d, || format!("Delta({n},{m}) = {d} but the phi difference is {lhs}"))?;
        }
    }
    Ok("1600 pairs agree".into())
}

fn c04_s2_rule() -> Outcome {
    let model = lib(catalog_model("S2@4"))?;
    let g = lib(CohenGroup::new(&model, 2))?;
    let el = |a: i64, b: i64| {
        g.element([
            model.element_i64(2, &[a]).expect("Z"),
            model.element_i64(3, &[b]).expect("Z"),
        ])
        .expect("degrees 2, 3")
    };
    const R: i64 = 20;
    let grid: Vec<_> = (-R..=R).flat_map(|a| (-R..=R).map(move |b| (a, b))).collect();
    let elems: BTreeMap<(i64, i64), _> = grid.iter().map(|&(a, b)| ((a, b), el(a, b))).collect();
    for &(a1, a2) in &grid {
        let x = &elems[&(a1, a2)];
        for &(b1, b2) in &grid {
            let got = lib(g.multiply(x, &elems[&(b1, b2)]))?;
            let want = el(a1 + b1, a2 + b2 + 2 * a1 * b1);
            ensure(got == want, || format!("({a1},{a2}) # ({b1},{b2}) = {got}"))?;
        }
    }
    let f = |m: i64, n: i64| el(m, m * (m - 1) + n);
    let mut images = std::collections::HashSet::new();
    for &(m1, n1) in &grid {
        let fx = f(m1, n1);
        ensure(images.insert(fx.clone()), || format!("({m1},{n1}) collides"))?;
        for &(m2, n2) in &grid {
            let got = lib(g.multiply(&fx, &f(m2, n2)))?;
            ensure(got == f(m1 + m2, n1 + n2), || format!("homomorphism fails at ({m1},{n1}), ({m2},{n2})"))?;
        }
    }
    Ok(format!("{} products checked twice; map injective on the grid", grid.len() * grid.len()))
}

fn c05_m3_census() -> Outcome {
    let model = lib(catalog_model("M3@3"))?;
    let e = lib(lib(CohenGroup::new(&model, 2))?.enumerate(64))?;
    let census = BTreeMap::from([(1, 1), (2, 3), (4, 4)]);
    ensure(e.len() == 8, || format!("{} elements", e.len()))?;
    ensure(e.closed, || "Cayley table not closed".into())?;
    ensure(e.order_census == census, || format!("census {:?}", e.order_census))?;
    ensure(!e.order_census.contains_key(&8), || "element of order 8".into())?;
    Ok(format!("8 elements, census {:?}, exponent {}", e.order_census, e.exponent))
}

fn c06_m7_order() -> Outcome {
    let model = lib(catalog_model("M7reduced@11"))?;
    let g = lib(CohenGroup::new(&model, 10))?;
    let alpha = lib(g.generator_element(Generator::new(6, 0)))?;
    let order = lib(g.order(&alpha, 1 << 20))?;
    let coefficient = g.coefficient(11, 6).cloned().unwrap_or_default();
    let square = lib(g.power(&alpha, 2))?;
    let detail = format!(
        "order {order}; alpha # alpha = {} since the [i7,i7] coefficient phi(5,9) = {coefficient}",
        g.format_element(&square)
    );
    ensure(order == Order::Finite(4), || detail.clone())?;
    Ok(detail)
}

fn c07_s4_and_powers_of_two() -> Outcome {
    let model = lib(catalog_model("S4reduced@8"))?;
    let check = lib(lib(CohenGroup::new(&model, 7))?.is_abelian())?;
    let want = AbelianCheck::NonAbelian {
        a: Generator::new(4, 0),
        b: Generator::new(5, 0),
    };
    ensure(check == want, || format!("is_abelian returned {check:?}"))?;
    for n in 1..=64u64 {
        let a = lib(j4n_minus1_abelian(n))?;
        let b = lib(commutes_by_degree(2 * n - 1, 2 * n, BracketOrder::Finite(2)))?;
        ensure(a == !is_power_of_two(n) && a == b, || format!("n = {n}: predicate {a}, Delta test {b}"))?;
    }
    Ok("witness (4:0, 5:0); 64 stems agree".into())
}

fn c08_j4n_plus1() -> Outcome {
    ensure(!lib(j4n_plus1_abelian(29))?, || "n = 29 reported abelian".into())?;
    ensure(lib(j4n_plus1_abelian(34))?, || "n = 34 reported non-abelian".into())?;
    let mut checked = 0;
    let mut cat = CatalanNumbers::new().skip(1);
    for n in 1..=1000u64 {
        let c = cat.next().expect("infinite");
        if is_power_of_two(n) {
            continue;
        }
        let exact = ((&c * n) % crate::numtheory::iota_nu_bracket_order(n)).is_zero();
        let digits = lib(j4n_plus1_abelian_by_digits(n))?;
        ensure(exact == digits, || format!("n = {n}: divisibility {exact}, digits {digits}"))?;
        checked += 1;
    }
    Ok(format!("{checked} values of n agree"))
}

fn c09_catalan() -> Outcome {
    let mut cat = CatalanNumbers::new().skip(1);
    for n in 1..=3000u64 {
        let c = cat.next().expect("infinite");
        let not_div3 = !(&c % 3u32).is_zero();
        ensure(not_div3 == in_tstar01(n + 1), || {
            format!("n = {n}: 3 | C_n is {}, n+1 in T*(01) is {}", !not_div3, in_tstar01(n + 1))
        })?;
        ensure(binomial(2 * n, n as i64 - 1) == &c * n, || format!("n = {n}: C(2n, n-1) != n C_n"))?;
    }
    ensure(catalan(29) % 4u32 == BigUint::zero(), || "C_29 not divisible by 4".into())?;
    Ok("3000 values agree".into())
}

/// `π_{s+1}`, `π_{t+1}` and `π_{s+t+1} = Z` with `[α, β]` the generator.
fn torus_pair_model(s: u32, t: u32) -> (SpaceModel, Generator, Generator) {
    let top = s + t + 1;
    let mut groups = vec![(top, FgAbelianGroup::integers())];
    if s == t {
        groups.push((s + 1, FgAbelianGroup::new(vec![0, 0]).expect("free")));
    } else {
        groups.push((s + 1, FgAbelianGroup::integers()));
        groups.push((t + 1, FgAbelianGroup::integers()));
    }
    let mut m = SpaceModel::new(format!("pair{s}_{t}"), 9, groups).expect("degrees below 10");
    let a = Generator::new(s + 1, 0);
    let b = Generator::new(t + 1, usize::from(s == t));
    let v = m.element_i64(top, &[1]).expect("Z");
    m.set_bracket_symmetric(a, b, v, "");
    (m, a, b)
}

fn c10_torus_commutators() -> Outcome {
    const LEVEL: u32 = 8;
    let mut disjoint = 0usize;
    let mut overlapping = 0usize;
    for order in [SubsetOrder::Colex, SubsetOrder::ReverseColex] {
        for s in 1..LEVEL {
            for t in 1..=LEVEL - s {
                let (model, ga, gb) = torus_pair_model(s, t);
                let g = lib(TauGroup::with_order(&model, LEVEL, order))?;
                let alpha = lib(model.basis(ga))?;
                let beta = lib(model.basis(gb))?;
                let bracket = model.bracket(&alpha, &beta);
                let subsets_s: Vec<u64> = (1u64..1 << LEVEL).filter(|m| m.count_ones() == s).collect();
                let subsets_t: Vec<u64> = (1u64..1 << LEVEL).filter(|m| m.count_ones() == t).collect();
                for &ma in &subsets_s {
                    let a = IndexSet::from_mask(ma);
                    let x = lib(g.embed(&alpha, &a))?;
                    for &mb in &subsets_t {
                        let b = IndexSet::from_mask(mb);
                        let y = lib(g.embed(&beta, &b))?;
                        let c = lib(g.commutator(&x, &y))?;
                        if ma & mb != 0 {
                            ensure(c.is_identity(), || format!("{order:?}: overlapping {a}, {b} give {c}"))?;
                            overlapping += 1;
                        } else {
                            let sign = lib(fox_sign(&a, &b))?;
                            let want = lib(g.embed(&model.scale(&bracket, &BigInt::from(sign)), &a.union(&b)))?;
                            ensure(c == want, || format!("{order:?}: [{a}, {b}] = {c}, expected sign {sign}"))?;
                            disjoint += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{disjoint} disjoint and {overlapping} overlapping pairs under both orders"))
}

fn c11_multiplicities() -> Outcome {
    let n35 = BigUint::from(35u32);
    let t8 = binomial_multiplicities(8);
    ensure(t8.get(&4) == Some(&n35) && t8.get(&5) == Some(&n35), || format!("tau_8 multiplicities {t8:?}"))?;
    let s4 = lib(catalog_model("S4reduced@8"))?;
    let over_s4 = tau_multiplicities(8, &s4);
    ensure(over_s4.get(&4) == Some(&n35) && over_s4.get(&5) == Some(&n35), || format!("{over_s4:?}"))?;
    let counts = lib(lib(TauGroup::new(&s4, 7))?.slot_counts())?;
    ensure(counts.get(&4) == Some(&35) && counts.get(&5) == Some(&35), || format!("slot counts {counts:?}"))?;
    ensure(lib(binomial_mod_p(7, 3, 2))? == 1, || "35 is not odd".into())?;
    let k5 = kernel_multiplicities(5);
    ensure(
        k5.get(&5) == Some(&BigUint::from(1u32)) && k5.get(&4) == Some(&BigUint::from(3u32)),
        || format!("tau_5 kernel {k5:?}"),
    )?;
    for n in 3..=16 {
        let hi = binomial_multiplicities(n);
        let lo = binomial_multiplicities(n - 1);
        for (d, k) in kernel_multiplicities(n) {
            let diff = hi.get(&d).cloned().unwrap_or_default() - lo.get(&d).cloned().unwrap_or_default();
            ensure(diff == k, || format!("kernel of tau_{n} in degree {d}: {k} vs {diff}"))?;
        }
    }
    Ok("35 pi_4, 35 pi_5 in tau_8; kernel pi_5 + 3 pi_4".into())
}

fn c12_group_axioms() -> Outcome {
    const TRIPLES: usize = 10_000;
    let cat = catalog();
    for entry in &cat {
        let v = entry.model.validate();
        ensure(v.is_empty(), || format!("{} fails validation: {v:?}", entry.name))?;
    }
    let groups: Vec<CohenGroup> = cat
        .iter()
        .flat_map(|e| (1..e.model.truncation()).map(move |level| CohenGroup::new(&e.model, level)))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let per_group = TRIPLES.div_ceil(groups.len());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut total = 0;
    for g in &groups {
        let name = format!("{}@level{}", g.model().name(), g.level());
        let e = g.identity();
        let lower = if g.level() > 1 { Some(lib(g.projected_group())?) } else { None };
        let zero_brackets = g.model().brackets().nonzero().next().is_none();
        for _ in 0..per_group {
            let x = g.random_element(&mut rng, 6);
            let y = g.random_element(&mut rng, 6);
            let z = g.random_element(&mut rng, 6);
            let xy = lib(g.multiply(&x, &y))?;
            ensure(lib(g.multiply(&xy, &z))? == lib(g.multiply(&x, &lib(g.multiply(&y, &z))?))?, || {
                format!("{name}: associativity fails for {x}, {y}, {z}")
            })?;
            ensure(lib(g.multiply(&x, &e))? == x && lib(g.multiply(&e, &x))? == x, || {
                format!("{name}: identity fails for {x}")
            })?;
            let xi = lib(g.inverse(&x))?;
            ensure(lib(g.multiply(&x, &xi))? == e && lib(g.multiply(&xi, &x))? == e, || {
                format!("{name}: inverse fails for {x}")
            })?;
            let top = g.level() + 1;
            let central = lib(g.element(z.coord(top).cloned()))?;
            ensure(lib(g.commutator(&central, &y))?.is_identity(), || {
                format!("{name}: top-degree element {central} is not central")
            })?;
            if let Some(h) = &lower {
                ensure(
                    lib(g.project(&xy))? == lib(h.multiply(&lib(g.project(&x))?, &lib(g.project(&y))?))?,
                    || format!("{name}: projection not multiplicative on {x}, {y}"),
                )?;
            }
            if zero_brackets {
                let sum = lib(g.element(
                    x.coords()
                        .iter()
                        .zip(y.coords())
                        .map(|(a, b)| g.model().add(a, b).expect("same degree")),
                ))?;
                ensure(xy == sum, || format!("{name}: zero-bracket product is not coordinatewise"))?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} triples over {} (model, level) pairs", groups.len()))
}

/// Groups only in degrees `2n..=4n-1`; the only brackets inside the
/// truncation pair `π_{2n}` with itself.
pub fn window_model(n: u32) -> SpaceModel {
    let top = 4 * n - 1;
    let groups = (2 * n..=top).map(|d| {
        let g = if d == 2 * n {
            FgAbelianGroup::new(vec![0, 0]).expect("free")
        } else if d % 2 == 0 {
            FgAbelianGroup::cyclic(2)
        } else {
            FgAbelianGroup::integers()
        };
        (d, g)
    });
    let mut m = SpaceModel::new(format!("Window{n}"), top, groups).expect("degrees in range");
    let g0 = Generator::new(2 * n, 0);
    let g1 = Generator::new(2 * n, 1);
    for (a, b, c) in [(g0, g0, 1), (g1, g1, 2), (g0, g1, 3)] {
        let v = m.element_i64(top, &[c]).expect("Z");
        m.set_bracket_symmetric(a, b, v, "");
    }
    m
}

fn c13_connectivity_window() -> Outcome {
    let mut levels = 0;
    for n in [2u32, 3] {
        let m = window_model(n);
        ensure(m.validate().is_empty(), || format!("window model {n} invalid"))?;
        for level in 1..=4 * n - 2 {
            let check = lib(lib(CohenGroup::new(&m, level))?.is_abelian())?;
            ensure(check.is_abelian(), || format!("n = {n}, level {level}: {check:?}"))?;
            levels += 1;
        }
    }
    Ok(format!("{levels} levels abelian"))
}
