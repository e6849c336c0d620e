//! Prints the Fox function for k <= 12 as a triangle and checks the three
//! evaluation routes against each other.
//!
//!     cargo run --example phi_table

use foxcohen::{phi_bruteforce, phi_closed, FoxTable};

fn main() {
    let table = FoxTable::new(12);
    for k in 1..=table.max_k() {
        let row: Vec<String> = table.row(k).unwrap().iter().map(|v| format!("{v:>5}")).collect();
        println!("k={k:<3}{}", row.join(""));
    }
    for k in 1..=12 {
        for l in 1..=k {
            let v = table.get(l, k).unwrap();
            assert_eq!(v, &phi_bruteforce(l, k).unwrap());
            assert_eq!(v, &phi_closed(l, k).unwrap());
        }
    }
    println!("bruteforce, recurrence and closed form agree");
}
