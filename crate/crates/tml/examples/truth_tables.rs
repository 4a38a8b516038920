//! Print the M₄ tables and evaluate a formula under every valuation of its variables.

use tml::matrix::{valuations, Connective};
use tml::{eval, m4, parse};

fn main() {
    let m = m4();
    let names: Vec<&str> = m.values().map(|v| m.name(v)).collect();
    for c in [Connective::Neg, Connective::Box] {
        let row: Vec<String> = m.values().map(|v| format!("{}↦{}", m.name(v), m.name(m.apply(c, &[v]).unwrap()))).collect();
        println!("{:>4}  {}", c.name(), row.join("  "));
    }
    for c in [Connective::And, Connective::Or] {
        println!("{:>4}  {}", c.name(), names.join(" "));
        for a in m.values() {
            let row: Vec<&str> = m.values().map(|b| m.name(m.apply(c, &[a, b]).unwrap())).collect();
            println!("{:>4}  {}", m.name(a), row.join(" "));
        }
    }

    let f = parse("#p | ~#q").unwrap();
    println!("\n{f}");
    for v in valuations(&f.vars(), m) {
        println!("  {}  {}", v.render(m), m.name(eval(&f, &v, m).unwrap()));
    }
}
