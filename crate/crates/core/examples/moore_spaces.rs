//! Finite Cohen groups of mod-2 Moore spaces, listed in full.

use foxcohen::{catalog_model, CohenGroup};

fn show(name: &str, level: u32) -> foxcohen::Result<()> {
    let g = CohenGroup::new(&catalog_model(name)?, level)?;
    let e = g.enumerate(4096)?;
    println!("{name} at level {level}: {} elements, exponent {}, cyclic {}", e.len(), e.exponent, e.is_cyclic());
    for (order, count) in &e.order_census {
        println!("    order {order}: {count}");
    }
    for x in e.elements.iter().take(8) {
        println!("    {}  (order {})", g.format_element(x), g.order(x, 1 << 20)?);
    }
    Ok(())
}

fn main() -> foxcohen::Result<()> {
    show("M3@3", 1)?;
    show("M3@3", 2)?;
    // With the product law applied literally the bottom-cell element of M^7
    // squares to the identity: its bracket coefficient phi(5, 9) = 6 is even.
    show("M7reduced@11", 10)?;
    Ok(())
}
