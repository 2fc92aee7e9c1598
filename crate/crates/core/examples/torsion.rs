// Exact orders in SL_n(Z), element orders of finite quotients, and the
// cyclotomic bound on what can occur.
//
// cargo run --example torsion

use congruence_lab::torsion::TorsionSpectrum;
use congruence_lab::{candidate_orders, matrix_order, mod_spectrum, spectrum_bound, IntMatrix};

pub fn run_example() -> congruence_lab::Result<()> {
    for text in ["0,-1;1,0", "0,-1;1,1", "-1,0;0,-1", "1,1;0,1", "0,0,1;1,0,0;0,1,0"] {
        let x: IntMatrix = text.parse()?;
        println!("order of {x}: {}", serde_json::to_string(&matrix_order(&x)?).expect("json"));
    }
    for n in 2..=4 {
        println!("possible finite orders in SL_{n}(Z): {:?}", candidate_orders(n));
    }
    for m in [2u64, 3, 4, 5] {
        println!("orders in SL_2(Z/{m}): {:?}", mod_spectrum(2, m)?.to_vec());
    }
    let kernel: TorsionSpectrum = [1, 2].into_iter().collect();
    let bound = spectrum_bound(&kernel, &mod_spectrum(2, 2)?);
    println!("extension bound from {{1,2}} and SL_2(Z/2): {:?}", bound.to_vec());
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
