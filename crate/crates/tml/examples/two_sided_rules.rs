//! Print the two-sided calculus obtained from the signed calculus of M₄.

use tml::signed::generate_sf_rules;
use tml::two::{m4_spec, rule_sheet_text, two_of_calculus};

fn main() {
    let rules = two_of_calculus(&generate_sf_rules(tml::m4()), &m4_spec());
    print!("{}", rule_sheet_text(&rules));
    println!("{} rules", rules.len());
}
