//! Generate the signed calculus of M₄ and derive a signed sequent in it.

use tml::signed::{generate_sf_rules, logical_rule_count, parse_signed_set, sf_prove};
use tml::two::signed_sheet_text;

fn main() {
    let m = tml::m4();
    let rules = generate_sf_rules(m);
    println!("{} logical rules", logical_rule_count(&rules));
    for line in signed_sheet_text(&rules, m).lines().take(12) {
        println!("{line}");
    }

    // p ∨ ¬□p never takes the values 0 or n
    let goal = parse_signed_set("b:p | ~#p, 1:p | ~#p", m).unwrap();
    let d = sf_prove(&goal, m).expect("derivable");
    println!("\nderivation of {{b, 1}}:p | ~#p with {} steps", d.size());
}
