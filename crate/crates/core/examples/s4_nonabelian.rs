//! The 4-sphere: abelian through level 6, non-abelian at level 7 where
//! the bracket [i4, eta4] first fits.

use foxcohen::{catalog_model, AbelianCheck, CohenGroup, NilpotencyProbe};

fn main() -> foxcohen::Result<()> {
    let model = catalog_model("S4reduced@8")?;
    for level in 1..=7 {
        let g = CohenGroup::new(&model, level)?;
        match g.is_abelian()? {
            AbelianCheck::Abelian => println!("level {level}: abelian"),
            AbelianCheck::NonAbelian { a, b } => {
                let (x, y) = (g.generator_element(a)?, g.generator_element(b)?);
                let c = g.commutator(&x, &y)?;
                println!("level {level}: generators {a} and {b} do not commute, commutator {}", g.format_element(&c));
                if let NilpotencyProbe::Class(c) = g.nilpotency_probe(4)? {
                    println!("          nilpotency class {c}");
                }
            }
        }
    }
    Ok(())
}
