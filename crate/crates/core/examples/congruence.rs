// Principal congruence subgroups: membership, level, index, and lifting
// elements of SL_2(Z/N) to SL_2(Z).
//
// cargo run --example congruence

use congruence_lab::{
    gamma_index, gamma_level, gamma_member, lift_to_int, mod_reduce, sample_gamma, successive_quotient_order,
    ModMatrix,
};

pub fn run_example() -> congruence_lab::Result<()> {
    let x = sample_gamma(2, 6, 4, 7);
    println!("sampled from Γ(6): {x}");
    println!("  level {}", gamma_level(&x)?);
    println!("  in Γ(2): {}, in Γ(3): {}, in Γ(4): {}", gamma_member(&x, 2)?, gamma_member(&x, 3)?, gamma_member(&x, 4)?);

    for n in [2usize, 3] {
        for m in [2u64, 3, 4, 6] {
            println!("[SL_{n}(Z) : Γ({m})] = {}", gamma_index(n, m)?);
        }
    }
    println!("|Γ(2^2)/Γ(2^3)| in SL_3 = {}", successive_quotient_order(3, 2, 2)?);

    let y: ModMatrix = "5,2;2,1 mod 12".parse()?;
    let lifted = lift_to_int(&y)?;
    assert!(lifted.is_unimodular());
    assert_eq!(mod_reduce(&lifted, y.modulus()), y);
    println!("lift of {y}: {lifted}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
