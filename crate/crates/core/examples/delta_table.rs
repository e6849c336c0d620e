//! The commutativity coefficient Delta(n, m) for n, m <= 10, and which
//! bracket orders let homogeneous classes commute.

use foxcohen::numtheory::{commutes_by_degree, delta};
use foxcohen::BracketOrder;

fn main() {
    print!("   ");
    for m in 1..=10 {
        print!("{m:>6}");
    }
    println!();
    for n in 1..=10 {
        print!("{n:>3}");
        for m in 1..=10 {
            print!("{:>6}", delta(n, m).unwrap().value);
        }
        println!();
    }

    println!();
    for (n, m) in [(1, 2), (2, 4), (3, 4), (4, 4)] {
        let commuting: Vec<u64> = (1..=12)
            .filter(|&k| commutes_by_degree(n, m, BracketOrder::Finite(k)).unwrap())
            .collect();
        println!("Delta({n},{m}): classes commute when the bracket order is one of {commuting:?}");
    }
}
