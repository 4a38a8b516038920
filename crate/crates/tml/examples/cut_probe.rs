//! Bounded cut-free search for ⇒ □(α ∨ ¬□α) in the single-conclusion calculus.

use tml::g::cut_necessity_probe;
use tml::parse;

fn main() {
    let depth = std::env::args().nth(1).map_or(12, |s| s.parse().expect("a depth"));
    for alpha in ["p", "q & q", "~p"] {
        let r = cut_necessity_probe(&parse(alpha).unwrap(), depth);
        println!(
            "{:<20} valid={} cut-free within {}={} two-sided cut-free={}",
            r.sequent, r.valid, r.depth, r.g_cutfree_found, r.sc_cutfree_found
        );
    }
}
