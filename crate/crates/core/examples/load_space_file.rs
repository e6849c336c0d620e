//! Reads a space model from a JSON file (or writes a sample one), validates
//! it and reports the Cohen group at every level.
//!
//!     cargo run --example load_space_file -- path/to/model.json

use foxcohen::{catalog_model, load_space, serialize_space, CohenGroup};

fn main() -> foxcohen::Result<()> {
    let model = match std::env::args().nth(1) {
        Some(path) => load_space(&std::fs::read_to_string(path)?)?,
        None => {
            let sample = catalog_model("Wedge23@4")?;
            let path = std::env::temp_dir().join("wedge23.json");
            std::fs::write(&path, serialize_space(&sample))?;
            println!("no file given; wrote a sample to {}", path.display());
            load_space(&std::fs::read_to_string(&path)?)?
        }
    };
    println!("{}: truncation {}", model.name(), model.truncation());
    for (degree, group) in model.groups() {
        println!("    pi_{degree} = {group}");
    }
    for (a, b, v) in model.brackets().nonzero() {
        println!("    [{a}, {b}] = {v}");
    }
    for level in 1..model.truncation() {
        let g = CohenGroup::new(&model, level)?;
        let size = g.cardinality().map_or("infinite".to_string(), |n| n.to_string());
        println!("level {level}: order {size}, abelian {}", g.is_abelian()?.is_abelian());
    }
    Ok(())
}
