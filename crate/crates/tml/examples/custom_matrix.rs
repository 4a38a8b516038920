//! Load a matrix from JSON and generate its signed rules.

use tml::matrix::{valuations, LogicalMatrix};
use tml::signed::{generate_sf_rules, logical_rule_count};
use tml::{eval, parse};

fn main() {
    let path = std::env::args().nth(1);
    let m = match path {
        Some(p) => LogicalMatrix::from_json(&std::fs::read_to_string(p).unwrap()).unwrap(),
        None => tml::matrix::boolean(),
    };
    println!("{}", m.to_json());
    println!("{} logical rules", logical_rule_count(&generate_sf_rules(&m)));
    let f = parse("p | ~p").unwrap();
    let valid = valuations(&f.vars(), &m).iter().all(|v| m.is_designated(eval(&f, v, &m).unwrap()));
    println!("p | ~p valid: {valid}");
}
