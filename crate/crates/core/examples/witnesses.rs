// Finite quotients that separate a matrix from the identity, printed as the
// same JSON the CLI emits.
//
// cargo run --example witnesses

use congruence_lab::{sample_gamma, witness_p, witness_rf, IntMatrix};

pub fn run_example() -> congruence_lab::Result<()> {
    for text in ["1,6;0,1", "1,30;0,1", "13,8;21,13"] {
        let x: IntMatrix = text.parse()?;
        println!("{x}: {}", witness_rf(&x)?.to_json());
    }
    for p in [2u64, 3] {
        let x = sample_gamma(2, p.pow(3), 3, p);
        let w = witness_p(&x, p)?;
        println!("{x}: {}", w.to_json());
    }
    let huge: IntMatrix = format!("1,{};0,1", num_bigint::BigInt::from(2).pow(130)).parse()?;
    println!("2^130 translation: {}", witness_p(&huge, 2)?.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
