use std::collections::BTreeMap;

use foxcohen::cohen::PhiSource;
use foxcohen::fox::{fox_sign, inversions, phi_bruteforce, phi_closed, phi_recurrence, IndexSet};
use foxcohen::numtheory::{
    binomial, binomial_mod_p, binomial_odd, catalan, commutes_by_degree, delta, BracketOrder,
};
use foxcohen::pi::FgAbelianGroup;
use foxcohen::torus::SubsetOrder;
use foxcohen::{
    catalog, catalog_model, load_space, serialize_space, CohenGroup, Generator, Order, PiElement,
    SpaceModel, TauGroup,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn models() -> Vec<SpaceModel> {
    catalog().into_iter().map(|e| e.model).collect()
}

/// Every (model, level) pair of the catalog.
fn cohen_groups() -> Vec<CohenGroup> {
    models()
        .iter()
        .flat_map(|m| (1..m.truncation()).map(move |l| CohenGroup::new(m, l).unwrap()))
        .collect()
}

// ---------------------------------------------------------------- fox

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn phi_is_the_sum_of_fox_signs(k in 1u32..=12, l_frac in 0.0f64..=1.0) {
        let l = ((f64::from(k) * l_frac).round() as u32).max(1);
        let universe = IndexSet::range(k);
        let mut sum = 0i64;
        for mask in 0u64..1 << k {
            if mask.count_ones() != l {
                continue;
            }
            let a = IndexSet::from_mask(mask);
            sum += i64::from(fox_sign(&a, &a.complement_in(&universe)).unwrap());
        }
        prop_assert_eq!(BigInt::from(sum), phi_bruteforce(l, k).unwrap());
    }

    #[test]
    fn fox_sign_antisymmetry(assign in prop::collection::vec(0u8..3, 1..=8)) {
        // 0: in neither, 1: in a, 2: in b.
        let pick = |t: u8| IndexSet::new(assign.iter().enumerate().filter(|(_, &x)| x == t).map(|(i, _)| i as u32 + 1)).unwrap();
        let (a, b) = (pick(1), pick(2));
        prop_assume!(!a.is_empty() && !b.is_empty());
        prop_assert_eq!(inversions(&a, &b) + inversions(&b, &a), a.len() * b.len());
        let exponent = (a.len() + 1) * (b.len() + 1);
        let sign = if exponent % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(fox_sign(&a, &b).unwrap(), -fox_sign(&b, &a).unwrap() * sign);
    }

    #[test]
    fn phi_routes_agree_beyond_enumeration(k in 17u32..400, l_frac in 0.0f64..=1.0) {
        let l = ((f64::from(k) * l_frac).round() as u32).clamp(1, k);
        prop_assert_eq!(phi_recurrence(l, k).unwrap(), phi_closed(l, k).unwrap());
    }
}

// ---------------------------------------------------------- numtheory

proptest! {
    #![proptest_config(cfg(256))]

    #[test]
    fn lucas_matches_exact_binomials(n in 0u64..=2000, k in 0u64..=2000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let exact = binomial(n, k as i64) % p;
        prop_assert_eq!(exact, num_bigint::BigUint::from(binomial_mod_p(n, k, p).unwrap()));
    }

    #[test]
    fn lucas_mod_two_is_the_digit_test(n in 0u64..=1_000_000, k in 0u64..=1_000_000) {
        prop_assert_eq!(binomial_mod_p(n, k, 2).unwrap() == 1, binomial_odd(n, k));
    }

    #[test]
    fn catalan_identity(n in 1u64..=3000) {
        prop_assert_eq!(binomial(2 * n, n as i64 - 1), catalan(n) * n);
    }

    #[test]
    fn delta_is_symmetric_and_vanishes_on_odd_pairs(n in 1u64..=200, m in 1u64..=200) {
        let d = delta(n, m).unwrap().value;
        prop_assert_eq!(&d, &delta(m, n).unwrap().value);
        prop_assert_eq!(d.is_zero(), n % 2 == 1 && m % 2 == 1);
    }
}

// ----------------------------------------------------------------- pi

fn random_pi(model: &SpaceModel, degree: u32, rng: &mut ChaCha8Rng) -> PiElement {
    use rand::Rng;
    let coeffs = model
        .group(degree)
        .orders()
        .iter()
        .map(|&o| {
            if o == 0 {
                BigInt::from(rng.gen_range(-9i64..=9))
            } else {
                BigInt::from(rng.gen_range(0..o))
            }
        })
        .collect();
    model.element(degree, coeffs).unwrap()
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn bracket_is_bilinear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for m in models() {
            let degrees: Vec<u32> = m.groups().map(|(d, _)| d).collect();
            for &p in &degrees {
                for &q in &degrees {
                    let (x, x2, y) = (random_pi(&m, p, &mut rng), random_pi(&m, p, &mut rng), random_pi(&m, q, &mut rng));
                    let lhs = m.bracket(&m.add(&x, &x2).unwrap(), &y);
                    let rhs = m.add(&m.bracket(&x, &y), &m.bracket(&x2, &y)).unwrap();
                    prop_assert_eq!(&lhs, &rhs, "{} degrees {} {}", m.name(), p, q);
                    let lhs = m.bracket(&y, &m.add(&x, &x2).unwrap());
                    let rhs = m.add(&m.bracket(&y, &x), &m.bracket(&y, &x2)).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn random_models_round_trip(
        orders in prop::collection::vec(prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 6]), 0..3), 5),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truncation = 6;
        let groups = orders.iter().enumerate().map(|(i, o)| (i as u32 + 2, FgAbelianGroup::new(o.clone()).unwrap()));
        let mut m = SpaceModel::new("random", truncation, groups).unwrap();
        let gens = m.generators();
        for &a in &gens {
            for &b in &gens {
                let d = a.degree + b.degree - 1;
                if a > b || d > truncation || m.group(d).is_trivial() || !rng.gen_bool(0.5) {
                    continue;
                }
                // Scale each coordinate so the torsion rules hold.
                let mut bound = m.order_of_generator(a).unwrap().gcd(&m.order_of_generator(b).unwrap());
                if a == b && a.degree % 2 == 1 {
                    bound = if bound == 0 { 2 } else { bound.gcd(&2) };
                }
                let raw = random_pi(&m, d, &mut rng);
                let coeffs: Vec<BigInt> = raw.coeffs().iter().zip(m.group(d).orders()).map(|(c, &o)| {
                    match (o, bound) {
                        (_, 0) => c.clone(),
                        (0, _) => BigInt::zero(),
                        (o, b) => c * BigInt::from(o / o.gcd(&b)),
                    }
                }).collect();
                let v = m.element(d, coeffs).unwrap();
                m.set_bracket_symmetric(a, b, v, format!("entry {a} {b}"));
            }
        }
        prop_assert_eq!(m.validate(), vec![]);
        let text = serialize_space(&m);
        prop_assert_eq!(load_space(&text).unwrap(), m);
    }
}

// -------------------------------------------------------------- cohen

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn group_axioms_on_catalog(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in cohen_groups() {
            let (x, y, z) = (g.random_element(&mut rng, 7), g.random_element(&mut rng, 7), g.random_element(&mut rng, 7));
            let e = g.identity();
            prop_assert!(g.is_associative_on(&x, &y, &z).unwrap());
            prop_assert_eq!(g.multiply(&x, &e).unwrap(), x.clone());
            prop_assert_eq!(g.inverse(&g.inverse(&x).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(g.multiply(&g.inverse(&x).unwrap(), &x).unwrap(), e.clone());
            prop_assert!(g.commutator(&x, &x).unwrap().is_identity());
            if g.level() > 1 {
                let h = g.projected_group().unwrap();
                let lhs = g.project(&g.multiply(&x, &y).unwrap()).unwrap();
                let rhs = h.multiply(&g.project(&x).unwrap(), &g.project(&y).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            let top = g.element(z.coord(g.level() + 1).cloned()).unwrap();
            prop_assert!(g.commutator(&top, &x).unwrap().is_identity());
        }
    }

    #[test]
    fn zero_brackets_give_the_direct_product(n in 3u32..=9, seed in any::<u64>()) {
        let m = catalog_model(&format!("ZeroBracket@{n}")).unwrap();
        let g = CohenGroup::new(&m, n - 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (g.random_element(&mut rng, 50), g.random_element(&mut rng, 50));
        let sum = g.element(x.coords().iter().zip(y.coords()).map(|(a, b)| m.add(a, b).unwrap())).unwrap();
        prop_assert_eq!(g.multiply(&x, &y).unwrap(), sum);
        prop_assert!(g.is_abelian().unwrap().is_abelian());
    }

    #[test]
    fn commuting_matches_the_delta_criterion(
        p in 2u32..=7,
        q in 2u32..=7,
        order in prop::sample::select(vec![0u64, 2, 3, 4, 5, 6, 8, 10, 12]),
        extra in 0u32..=2,
    ) {
        let top = p + q - 1;
        let target = if order == 0 { FgAbelianGroup::integers() } else { FgAbelianGroup::cyclic(order) };
        let mut groups = vec![(top, target)];
        if p == q {
            groups.push((p, FgAbelianGroup::new(vec![0, 0]).unwrap()));
        } else {
            groups.push((p, FgAbelianGroup::integers()));
            groups.push((q, FgAbelianGroup::integers()));
        }
        let mut m = SpaceModel::new("pair", top + extra, groups).unwrap();
        let a = Generator::new(p, 0);
        let b = Generator::new(q, usize::from(p == q));
        m.set_bracket_symmetric(a, b, m.element_i64(top, &[1]).unwrap(), "");
        prop_assert_eq!(m.validate(), vec![]);
        for level in top - 1..top + extra {
            let g = CohenGroup::new(&m, level).unwrap();
            let c = g.commutator(&g.generator_element(a).unwrap(), &g.generator_element(b).unwrap()).unwrap();
            let k = if order == 0 { BracketOrder::Infinite } else { BracketOrder::Finite(order) };
            let predicted = commutes_by_degree(u64::from(p - 1), u64::from(q - 1), k).unwrap();
            prop_assert_eq!(c.is_identity(), predicted, "p={} q={} order={} level={}", p, q, order, level);
        }
    }

    #[test]
    fn homogeneous_torsion_order_lies_between_k_and_k_squared(p in 2u32..=6, k in prop::sample::select(vec![2u64, 3, 4, 6])) {
        // α in π_p of order k with [α, α] a generator of Z_k in degree 2p - 1.
        let top = 2 * p - 1;
        let mut m = SpaceModel::new("h", top, [(p, FgAbelianGroup::cyclic(k)), (top, FgAbelianGroup::cyclic(k))]).unwrap();
        let a = Generator::new(p, 0);
        if p % 2 == 0 || k % 2 == 0 {
            let v = if p % 2 == 0 { 1 } else { (k / 2) as i64 };
            m.set_bracket_symmetric(a, a, m.element_i64(top, &[v]).unwrap(), "");
        }
        prop_assert_eq!(m.validate(), vec![]);
        let g = CohenGroup::new(&m, top - 1).unwrap();
        let order = g.order(&g.generator_element(a).unwrap(), 1 << 20).unwrap();
        // k | order | k^2; for prime k this leaves exactly k or k^2.
        let Order::Finite(n) = order else { panic!("{order:?}") };
        prop_assert!(n % k == 0 && (k * k) % n == 0, "{}", n);
    }

    #[test]
    fn homogeneous_torsion_order_prime(p in 2u32..=6, k in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let top = 2 * p - 1;
        let mut m = SpaceModel::new("h", top, [(p, FgAbelianGroup::cyclic(k)), (top, FgAbelianGroup::cyclic(k))]).unwrap();
        let a = Generator::new(p, 0);
        if p % 2 == 0 || k == 2 {
            m.set_bracket_symmetric(a, a, m.element_i64(top, &[1]).unwrap(), "");
        }
        let g = CohenGroup::new(&m, top - 1).unwrap();
        let order = g.order(&g.generator_element(a).unwrap(), 1 << 20).unwrap();
        prop_assert!(order == Order::Finite(k) || order == Order::Finite(k * k), "{:?}", order);
    }
}

#[test]
fn s2_isomorphism_from_z_squared() {
    let m = catalog_model("S2@4").unwrap();
    let g = CohenGroup::new(&m, 2).unwrap();
    let f = |a: i64, b: i64| g.element([m.element_i64(2, &[a]).unwrap(), m.element_i64(3, &[a * (a - 1) + b]).unwrap()]).unwrap();
    let mut seen = std::collections::HashSet::new();
    for a in -20..=20 {
        for b in -20..=20 {
            assert!(seen.insert(f(a, b)));
            assert_eq!(g.multiply(&f(a, b), &f(1, -3)).unwrap(), f(a + 1, b - 3));
        }
    }
}

#[test]
fn bruteforce_phi_source_gives_the_same_group() {
    let m = catalog_model("S4reduced@8").unwrap();
    let fast = CohenGroup::new(&m, 7).unwrap();
    let slow = CohenGroup::with_phi_source(&m, 7, PhiSource::Bruteforce).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (x, y) = (fast.random_element(&mut rng, 5), fast.random_element(&mut rng, 5));
        assert_eq!(fast.multiply(&x, &y).unwrap(), slow.multiply(&x, &y).unwrap());
    }
}

#[test]
fn enumerated_groups_are_exhaustively_associative() {
    for (name, level) in [("M3@3", 1), ("M3@3", 2), ("M7reduced@11", 10)] {
        let g = CohenGroup::new(&catalog_model(name).unwrap(), level).unwrap();
        assert_eq!(g.associativity_failure(0, 0, 64).unwrap(), None, "{name} {level}");
    }
}

#[test]
fn nilpotency_class_is_at_most_level_minus_one() {
    for g in cohen_groups() {
        if g.level() < 2 {
            continue;
        }
        match g.nilpotency_probe(g.level()).unwrap() {
            foxcohen::NilpotencyProbe::Class(c) => assert!(c < g.level(), "{} {}", g.model().name(), g.level()),
            other => panic!("{other:?}"),
        }
    }
}

// -------------------------------------------------------------- torus

fn class_two_taus(order: SubsetOrder) -> Vec<TauGroup> {
    [("S2@4", 3), ("Wedge23@4", 3), ("M3@3", 2), ("S4reduced@8", 5), ("ZeroBracket@6", 4)]
        .iter()
        .map(|(n, l)| TauGroup::with_order(&catalog_model(n).unwrap(), *l, order).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn tau_group_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for order in [SubsetOrder::Colex, SubsetOrder::ReverseColex] {
            for g in class_two_taus(order) {
                let (x, y, z) = (g.random_element(&mut rng, 0.5, 5), g.random_element(&mut rng, 0.5, 5), g.random_element(&mut rng, 0.5, 5));
                let l = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
                let r = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
                prop_assert_eq!(l, r);
                prop_assert!(g.multiply(&x, &g.inverse(&x).unwrap()).unwrap().is_identity());
                prop_assert_eq!(g.multiply(&g.identity(), &x).unwrap(), x.clone());
            }
        }
    }

    #[test]
    fn tau_commutators_ignore_the_subset_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (a, b) in class_two_taus(SubsetOrder::Colex).into_iter().zip(class_two_taus(SubsetOrder::ReverseColex)) {
            let x = a.random_element(&mut rng, 0.4, 5);
            let y = a.random_element(&mut rng, 0.4, 5);
            let fx = a.format_element(&x);
            let fy = a.format_element(&y);
            let ca = a.commutator(&x, &y).unwrap();
            let cb = b.commutator(&b.parse_element(&fx).unwrap(), &b.parse_element(&fy).unwrap()).unwrap();
            prop_assert_eq!(a.format_element(&ca), b.format_element(&cb));
        }
    }

    #[test]
    fn tau_commutator_sign(level in 2u32..=6, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = catalog_model("Wedge23@4").unwrap();
        let g = TauGroup::new(&m, level.min(3)).unwrap();
        let level = g.level();
        // a singleton for i1, a 2-subset for i2
        let i = rng.gen_range(1..=level);
        let rest: Vec<u32> = (1..=level).filter(|&j| j != i).collect();
        prop_assume!(rest.len() >= 2);
        let b = IndexSet::new([rest[0], rest[1]]).unwrap();
        let a = IndexSet::new([i]).unwrap();
        let x = g.embed_generator(Generator::new(2, 0), &a).unwrap();
        let y = g.embed_generator(Generator::new(3, 0), &b).unwrap();
        let c = g.commutator(&x, &y).unwrap();
        let sign = i64::from(fox_sign(&a, &b).unwrap());
        prop_assert_eq!(c.slot(&a.union(&b)).cloned(), Some(m.element_i64(4, &[sign]).unwrap()));
    }
}

#[test]
fn phi_boundary_values() {
    for k in 1..=20 {
        assert_eq!(phi_bruteforce(0, k).unwrap(), -BigInt::one());
        let top = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        assert_eq!(phi_recurrence(k, k).unwrap(), top);
    }
    let census: BTreeMap<_, _> = (1..=6).map(|k| (k, phi_recurrence(1, k).unwrap())).collect();
    assert!(census.iter().all(|(k, v)| (k % 2 == 0) == v.is_zero()));
}
