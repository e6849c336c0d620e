//! The Cohen group of the 2-sphere at level 2.
//!
//! Elements are pairs (a, b) with a in pi_2 = Z and b in pi_3 = Z. The
//! bracket [i2, i2] = 2 eta makes the product (a, b)(c, d) pick up a
//! correction 2ac in the second coordinate.

use foxcohen::{catalog_model, CohenGroup, Order};

fn main() -> foxcohen::Result<()> {
    let model = catalog_model("S2@4")?;
    let g = CohenGroup::new(&model, 2)?;

    let x = g.parse_element(r#"{"2":[1]}"#)?;
    let y = g.parse_element(r#"{"2":[3],"3":[-1]}"#)?;
    println!("x     = {}", g.format_element(&x));
    println!("y     = {}", g.format_element(&y));
    println!("x y   = {}", g.format_element(&g.multiply(&x, &y)?));
    println!("y x   = {}", g.format_element(&g.multiply(&y, &x)?));
    println!("x^-1  = {}", g.format_element(&g.inverse(&x)?));
    for m in 1..=5 {
        println!("x^{m}   = {}", g.format_element(&g.power(&x, m)?));
    }
    assert_eq!(g.order(&x, 1000)?, Order::Infinite);
    println!("abelian: {}", g.is_abelian()?.is_abelian());
    Ok(())
}
