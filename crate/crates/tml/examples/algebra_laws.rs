//! Check the tetravalent modal algebra laws on M₄ and on M₄ × M₄.

use tml::algebra::{check_tma_laws, product_algebra, Algebra};

fn main() {
    let m4 = Algebra::m4();
    let square = product_algebra(&m4, &m4);
    for (name, a) in [("M4", &m4), ("M4 x M4", &square)] {
        let report = check_tma_laws(a);
        println!("{name}: {} elements", a.len());
        for law in &report.laws {
            println!("  {:<28} {}", law.name, if law.passed { "ok" } else { "FAILS" });
        }
    }
}
