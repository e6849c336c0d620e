//! Which of the groups [J_(4n-1)(S^1), Omega S^(2n)] and
//! [J_(4n+1)(S^1), Omega S^(2n)] are abelian, for n <= 40.

use foxcohen::numtheory::stem_report;

fn main() {
    println!("{:>3} {:>14} {:>16}  J(4n-1)  J(4n+1)", "n", "Delta low", "Delta high");
    for n in 1..=40 {
        let r = stem_report(n).unwrap();
        let plus = r.j4np1_abelian.map_or("n/a".to_string(), |b| b.to_string());
        println!("{n:>3} {:>14} {:>16}  {:<7}  {plus}", r.delta_low, r.delta_high, r.j4nm1_abelian);
    }
}
