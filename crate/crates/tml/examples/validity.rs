//! Validity, countermodels, and the two consequence relations.

use tml::matrix::degree_consequence;
use tml::{countermodel, m4, matrix_consequence, parse, Formula};

fn show(gamma: &[&str], delta: &[&str]) {
    let g: Vec<Formula> = gamma.iter().map(|s| parse(s).unwrap()).collect();
    let d: Vec<Formula> = delta.iter().map(|s| parse(s).unwrap()).collect();
    let seq = format!("{} => {}", gamma.join(", "), delta.join(", "));
    match countermodel(&g, &d, m4()) {
        None => println!("{seq:<24} holds"),
        Some(v) => println!("{seq:<24} fails at {}", v.render(m4())),
    }
}

fn main() {
    show(&[], &["p | ~#p"]);
    show(&[], &["p | ~p"]);
    show(&["~#p"], &["p"]);
    show(&["#p"], &["p & #p"]);
    show(&["p", "~p"], &["q"]);

    // degree-preserving and truth-preserving consequence agree on TML
    let g = [parse("p").unwrap(), parse("q").unwrap()];
    let phi = parse("p & q").unwrap();
    println!(
        "p, q |- p & q   degree: {}  matrix: {}",
        degree_consequence(&g, &phi),
        matrix_consequence(&g, [&phi], m4())
    );
}
