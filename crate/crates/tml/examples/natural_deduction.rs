//! Translate sequent proofs into natural deduction and back.

use tml::nd::{check_nd, nd_to_sc, sc_to_nd};
use tml::sc::{check_sc_proof, prove};
use tml::{Sequent, Style};

fn main() {
    for s in ["p | q => q | p", "=> #(p | ~#p)", "~#p, #p => q"] {
        let p = prove(&Sequent::parse(s).unwrap()).unwrap();
        let d = sc_to_nd(&p).unwrap();
        let summary = check_nd(&d).unwrap();
        println!("{}\n", d.render_text(Style::Unicode));
        let open: Vec<String> = summary.open().iter().map(|f| f.render(Style::Unicode)).collect();
        println!("open: {{{}}}  size: {}", open.join(", "), d.size());

        let back = nd_to_sc(&d).unwrap();
        check_sc_proof(&back, true).unwrap();
        println!("back: {}  cut-free: {}\n", back.sequent.render(Style::Unicode), back.is_cut_free());
    }
}
