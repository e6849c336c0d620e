//! Runs the built-in regression suite and prints one line per criterion.

fn main() -> foxcohen::Result<()> {
    let results = foxcohen::verify::run(None)?;
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    Ok(())
}
