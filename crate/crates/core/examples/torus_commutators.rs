//! Commutators of embedded classes in a class-2 torus group of the wedge
//! S^2 v S^3, under both orderings of the index subsets.

use foxcohen::torus::binomial_multiplicities;
use foxcohen::{catalog_model, fox_sign, Generator, IndexSet, SubsetOrder, TauGroup};

fn main() -> foxcohen::Result<()> {
    let model = catalog_model("Wedge23@4")?;
    let pairs = [(vec![1], vec![2, 3]), (vec![2], vec![1, 3]), (vec![3], vec![1, 2])];
    for order in [SubsetOrder::Colex, SubsetOrder::ReverseColex] {
        let g = TauGroup::with_order(&model, 3, order)?;
        println!("{order:?}");
        for (a, b) in &pairs {
            let (a, b) = (IndexSet::new(a.clone())?, IndexSet::new(b.clone())?);
            let x = g.embed_generator(Generator::new(2, 0), &a)?;
            let y = g.embed_generator(Generator::new(3, 0), &b)?;
            let c = g.commutator(&x, &y)?;
            println!("    [{}, {}] = {}   fox sign {}", g.format_element(&x), g.format_element(&y), g.format_element(&c), fox_sign(&a, &b)?);
        }
    }

    println!("copies of pi_d in tau_8:");
    for (degree, count) in binomial_multiplicities(8) {
        println!("    pi_{degree}: {count}");
    }
    Ok(())
}
