// The maps Γ(p^k) → sl_n(Z/p) and Γ(N) → sl_n(Z/N): images, preimages and
// the power congruence X^p ∈ Γ(p^(k+1)).
//
// cargo run --example quotient_maps

use congruence_lab::{phi_general, phi_k, phi_preimage, power_congruence_check, sample_gamma, Modulus, TracelessMatrix};

pub fn run_example() -> congruence_lab::Result<()> {
    let (p, k) = (3u64, 2u32);
    let x = sample_gamma(3, p.pow(k), 3, 11);
    let y = sample_gamma(3, p.pow(k), 3, 12);
    let (fx, fy) = (phi_k(&x, p, k)?, phi_k(&y, p, k)?);
    println!("φ(x) = {fx}\nφ(y) = {fy}\nφ(xy) = {}", phi_k(&(&x * &y), p, k)?);
    assert_eq!(phi_k(&(&x * &y), p, k)?, fx.add(&fy)?);
    println!("x^{p} ∈ Γ({p}^{}): {}", k + 1, power_congruence_check(&x, p, k)?);

    for t in TracelessMatrix::basis(2, &Modulus::new(5)?) {
        let pre = phi_preimage(&t, 5, 1)?;
        println!("preimage of {t}: {pre}");
        assert_eq!(phi_k(&pre, 5, 1)?, t);
    }

    let z = sample_gamma(2, 4, 2, 3);
    println!("phi_general({z}, 4) = {}", phi_general(&z, 4)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
