// Exhaustive enumeration of SL_n(Z/N) against the order formula, and the
// cap that keeps enumeration bounded.
//
// cargo run --example enumerate

use congruence_lab::modular::enumerate_sl_with_cap;
use congruence_lab::{enumerate_sl, sl_order_formula};

pub fn run_example() -> congruence_lab::Result<()> {
    for (n, m) in [(2usize, 2u64), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3)] {
        let found = enumerate_sl(n, m)?.len();
        println!("|SL_{n}(Z/{m})| = {found} (formula {})", sl_order_formula(n, m)?);
    }
    for y in enumerate_sl(2, 2)? {
        println!("  {y}");
    }
    if let Err(e) = enumerate_sl_with_cap(3, 5, 1_000_000) {
        println!("SL_3(Z/5) with cap 10^6: {}", e);
    }
    println!("|SL_4(Z/7)| = {} by formula only", sl_order_formula(4, 7)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
