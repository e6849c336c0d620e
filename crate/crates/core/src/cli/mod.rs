//! The `foxcohen` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
//! error, 3 problem with an input file or model.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cohen::{AbelianCheck, CohenGroup, NilpotencyProbe};
use crate::error::{Error, Result};
use crate::fox::{phi_bruteforce, phi_closed, phi_recurrence, FoxTable, CONVENTION_NOTE};
use crate::numtheory::{commutes_by_degree, delta, stem_report, BracketOrder};
use crate::pi::catalog::{catalog, catalog_model};
use crate::pi::{load_space, serialize_space, SpaceModel};
use crate::torus::{binomial_multiplicities, kernel_multiplicities, SubsetOrder, TauGroup};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "foxcohen", version, about = "Fox function, Cohen groups and class-2 torus groups in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate phi(l, k)
    Phi {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = PhiMethod::Recurrence)]
        method: PhiMethod,
    },
    /// Triangular table of phi(l, k) for 1 <= l <= k <= max-k
    PhiTable {
        #[arg(long)]
        max_k: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Delta(n, m) for alpha in pi_(n+1), beta in pi_(m+1)
    Delta { n: u64, m: u64 },
    /// Whether homogeneous classes commute given the order of their bracket (integer or `inf`)
    Commutes { n: u64, m: u64, order: BracketOrder },
    /// Stem table: Delta values and abelianness of [J_(4n-1)], [J_(4n+1)] over S^(2n)
    Stems {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cohen group arithmetic
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Class-2 torus group arithmetic
    Tau {
        #[command(subcommand)]
        op: TauOp,
    },
    /// Run the acceptance suite
    Verify {
        /// Only run one group: fox, numtheory, cohen or torus
        #[arg(long)]
        only: Option<String>,
    },
    /// List built-in models, or print one as a model file
    Catalog {
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PhiMethod {
    Bruteforce,
    Recurrence,
    Closed,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Args, Debug)]
struct Space {
    /// Model file, or `catalog:NAME`
    #[arg(long)]
    space: String,
    #[arg(long)]
    level: u32,
}

#[derive(Subcommand, Debug)]
enum GroupOp {
    /// Product x # y
    Mul { #[command(flatten)] s: Space, x: String, y: String },
    /// Inverse
    Inv { #[command(flatten)] s: Space, x: String },
    /// Commutator x # y # x^-1 # y^-1
    Comm { #[command(flatten)] s: Space, x: String, y: String },
    /// Element order
    Order {
        #[command(flatten)]
        s: Space,
        x: String,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Power x^m
    Pow {
        #[command(flatten)]
        s: Space,
        x: String,
        #[arg(allow_hyphen_values = true)]
        m: i64,
    },
    /// Test all pairs of generators
    IsAbelian { #[command(flatten)] s: Space },
    /// List a finite group with its order census
    Enumerate {
        #[command(flatten)]
        s: Space,
        #[arg(long, default_value_t = 4096)]
        size_bound: u64,
        /// Print every element
        #[arg(long)]
        list: bool,
    },
    /// Smallest class at which generator commutators vanish
    Nilpotency {
        #[command(flatten)]
        s: Space,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Search for a non-associative triple
    Associativity {
        #[command(flatten)]
        s: Space,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Colex,
    ReverseColex,
}

#[derive(Args, Debug)]
struct TauSpace {
    #[command(flatten)]
    s: Space,
    #[arg(long, value_enum, default_value_t = OrderArg::Colex)]
    order: OrderArg,
}

#[derive(Subcommand, Debug)]
enum TauOp {
    Mul { #[command(flatten)] t: TauSpace, x: String, y: String },
    Inv { #[command(flatten)] t: TauSpace, x: String },
    Comm { #[command(flatten)] t: TauSpace, x: String, y: String },
    /// Multiplicity of each pi_(k+1) in tau_n, and of each pi_i in the kernel of tau_n -> tau_(n-1)
    Multiplicities {
        #[arg(long)]
        n: u32,
    },
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Phi { l, k, method } => cmd_phi(l, k, method, out),
        Command::PhiTable { max_k, format } => cmd_phi_table(max_k, format, out),
        Command::Delta { n, m } => {
            writeln!(out, "{}", delta(n, m)?.value)?;
            Ok(0)
        }
        Command::Commutes { n, m, order } => {
            writeln!(out, "{}", commutes_by_degree(n, m, order)?)?;
            Ok(0)
        }
        Command::Stems { from, to, format } => cmd_stems(from, to, format, out),
        Command::Group { op } => cmd_group(op, out),
        Command::Tau { op } => cmd_tau(op, out),
        Command::Verify { only } => {
            let results = verify::run(only.as_deref())?;
            for r in &results {
                writeln!(out, "{}", r.line())?;
            }
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed}/{} criteria passed", results.len())?;
            Ok(if passed == results.len() { 0 } else { 1 })
        }
        Command::Catalog { show } => {
            match show {
                Some(name) => write!(out, "{}", serialize_space(&catalog_model(&name)?))?,
                None => {
                    for e in catalog() {
                        writeln!(out, "{:<14} {}", e.name, e.description)?;
                    }
                    writeln!(out, "(ZeroBracket@N resolves for any N >= 2)")?;
                }
            }
            Ok(0)
        }
    }
}

fn cmd_phi(l: u32, k: u32, method: PhiMethod, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "# {CONVENTION_NOTE}")?;
    let one = |m: PhiMethod| -> Result<BigInt> {
        match m {
            PhiMethod::Bruteforce => phi_bruteforce(l, k),
            PhiMethod::Recurrence => phi_recurrence(l, k),
            PhiMethod::Closed => phi_closed(l, k),
            PhiMethod::All => unreachable!(),
        }
    };
    if method == PhiMethod::All {
        let values = [
            ("bruteforce", one(PhiMethod::Bruteforce)?),
            ("recurrence", one(PhiMethod::Recurrence)?),
            ("closed", one(PhiMethod::Closed)?),
        ];
        for (name, v) in &values {
            writeln!(out, "{name} {v}")?;
        }
        let agree = values.iter().all(|(_, v)| *v == values[0].1);
        writeln!(out, "{}", if agree { "AGREE" } else { "DISAGREE" })?;
        Ok(if agree { 0 } else { 1 })
    } else {
        writeln!(out, "{}", one(method)?)?;
        Ok(0)
    }
}

fn cmd_phi_table(max_k: u32, format: Format, out: &mut dyn Write) -> Result<i32> {
    if max_k == 0 {
        return Err(Error::domain("max-k must be at least 1"));
    }
    let table = FoxTable::new(max_k);
    let value = |l: u32, k: u32| table.get(l, k).expect("within table").to_string();
    match format {
        Format::Csv => {
            writeln!(out, "# {CONVENTION_NOTE}")?;
            writeln!(out, "k,l,phi")?;
            for k in 1..=max_k {
                for l in 1..=k {
                    writeln!(out, "{k},{l},{}", value(l, k))?;
                }
            }
        }
        Format::Md => {
            writeln!(out, "> {CONVENTION_NOTE}")?;
            writeln!(out)?;
            let header: Vec<String> = (1..=max_k).map(|l| format!("l={l}")).collect();
            writeln!(out, "| k | {} |", header.join(" | "))?;
            writeln!(out, "|---|{}", "---|".repeat(max_k as usize))?;
            for k in 1..=max_k {
                let cells: Vec<String> = (1..=max_k)
                    .map(|l| if l <= k { value(l, k) } else { String::new() })
                    .collect();
                writeln!(out, "| {k} | {} |", cells.join(" | "))?;
            }
        }
    }
    Ok(0)
}

fn cmd_stems(from: u64, to: u64, format: Format, out: &mut dyn Write) -> Result<i32> {
    if from == 0 || from > to {
        return Err(Error::domain("need 1 <= from <= to"));
    }
    let cols = ["n", "delta_low", "delta_high", "j4nm1_abelian", "j4np1_abelian"];
    match format {
        Format::Csv => writeln!(out, "{}", cols.join(","))?,
        Format::Md => {
            writeln!(out, "| {} |", cols.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(cols.len()))?;
        }
    }
    for n in from..=to {
        let r = stem_report(n)?;
        let plus = r.j4np1_abelian.map_or_else(|| "n/a".to_string(), |b| b.to_string());
        let row = [
            r.n.to_string(),
            r.delta_low.to_string(),
            r.delta_high.to_string(),
            r.j4nm1_abelian.to_string(),
            plus,
        ];
        match format {
            Format::Csv => writeln!(out, "{}", row.join(","))?,
            Format::Md => writeln!(out, "| {} |", row.join(" | "))?,
        }
    }
    Ok(0)
}

fn load_model(spec: &str) -> Result<SpaceModel> {
    match spec.strip_prefix("catalog:") {
        Some(name) => catalog_model(name),
        None => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| std::io::Error::new(e.kind(), format!("{spec}: {e}")))?;
            load_space(&text)
        }
    }
}

fn cohen(s: &Space) -> Result<CohenGroup> {
    CohenGroup::new(&load_model(&s.space)?, s.level)
}

fn cmd_group(op: GroupOp, out: &mut dyn Write) -> Result<i32> {
    match op {
        GroupOp::Mul { s, x, y } => {
            let g = cohen(&s)?;
            let z = g.multiply(&g.parse_element(&x)?, &g.parse_element(&y)?)?;
            writeln!(out, "{}", g.format_element(&z))?;
        }
        GroupOp::Inv { s, x } => {
            let g = cohen(&s)?;
            writeln!(out, "{}", g.format_element(&g.inverse(&g.parse_element(&x)?)?))?;
        }
        GroupOp::Comm { s, x, y } => {
            let g = cohen(&s)?;
            let z = g.commutator(&g.parse_element(&x)?, &g.parse_element(&y)?)?;
            writeln!(out, "{}", g.format_element(&z))?;
        }
        GroupOp::Order { s, x, bound } => {
            let g = cohen(&s)?;
            writeln!(out, "{}", g.order(&g.parse_element(&x)?, bound)?)?;
        }
        GroupOp::Pow { s, x, m } => {
            let g = cohen(&s)?;
            writeln!(out, "{}", g.format_element(&g.power(&g.parse_element(&x)?, m)?))?;
        }
        GroupOp::IsAbelian { s } => match cohen(&s)?.is_abelian()? {
            AbelianCheck::Abelian => writeln!(out, "true")?,
            AbelianCheck::NonAbelian { a, b } => {
                writeln!(out, "false")?;
                writeln!(out, "witness: {a} {b}")?;
            }
        },
        GroupOp::Enumerate { s, size_bound, list } => {
            let g = cohen(&s)?;
            let e = g.enumerate(size_bound)?;
            writeln!(out, "elements: {}", e.len())?;
            writeln!(out, "exponent: {}", e.exponent)?;
            writeln!(out, "cyclic: {}", e.is_cyclic())?;
            writeln!(out, "closed: {}", e.closed)?;
            for (order, count) in &e.order_census {
                writeln!(out, "order {order}: {count}")?;
            }
            if list {
                for x in &e.elements {
                    writeln!(out, "{}", g.format_element(x))?;
                }
            }
        }
        GroupOp::Nilpotency { s, depth } => {
            let g = cohen(&s)?;
            match g.nilpotency_probe(depth.unwrap_or(g.level()))? {
                NilpotencyProbe::Class(c) => writeln!(out, "class {c}")?,
                NilpotencyProbe::ExceedsDepth => writeln!(out, "exceeds depth")?,
            }
        }
        GroupOp::Associativity { s, samples, seed } => {
            let g = cohen(&s)?;
            match g.associativity_failure(samples, seed, 64)? {
                None => writeln!(out, "no failure found")?,
                Some([x, y, z]) => {
                    writeln!(out, "not associative on")?;
                    for e in [x, y, z] {
                        writeln!(out, "{}", g.format_element(&e))?;
                    }
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn tau(t: &TauSpace) -> Result<TauGroup> {
    let order = match t.order {
        OrderArg::Colex => SubsetOrder::Colex,
        OrderArg::ReverseColex => SubsetOrder::ReverseColex,
    };
    TauGroup::with_order(&load_model(&t.s.space)?, t.s.level, order)
}

fn cmd_tau(op: TauOp, out: &mut dyn Write) -> Result<i32> {
    match op {
        TauOp::Mul { t, x, y } => {
            let g = tau(&t)?;
            let z = g.multiply(&g.parse_element(&x)?, &g.parse_element(&y)?)?;
            writeln!(out, "{}", g.format_element(&z))?;
        }
        TauOp::Inv { t, x } => {
            let g = tau(&t)?;
            writeln!(out, "{}", g.format_element(&g.inverse(&g.parse_element(&x)?)?))?;
        }
        TauOp::Comm { t, x, y } => {
            let g = tau(&t)?;
            let z = g.commutator(&g.parse_element(&x)?, &g.parse_element(&y)?)?;
            writeln!(out, "{}", g.format_element(&z))?;
        }
        TauOp::Multiplicities { n } => {
            if n < 2 {
                return Err(Error::domain("n must be at least 2"));
            }
            writeln!(out, "degree,tau_multiplicity,kernel_multiplicity")?;
            let kernel = kernel_multiplicities(n);
            for (d, m) in binomial_multiplicities(n) {
                let k = kernel.get(&d).map(ToString::to_string).unwrap_or_default();
                writeln!(out, "{d},{m},{k}")?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("foxcohen").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn phi_all_agrees() {
        let (code, out, _) = call(&["phi", "--l", "2", "--k", "4", "--method", "all"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("bruteforce -2\nrecurrence -2\nclosed -2\nAGREE\n"), "{out}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["phi", "--l", "0", "--k", "3", "--method", "closed"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["group", "mul", "--space", "catalog:Nope", "--level", "1", "{}", "{}"]).0, 3);
    }
}
