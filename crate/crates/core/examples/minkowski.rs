// Falsification probe: conjugates of the finite-order elements of SL_2(Z)
// never fall into Γ(N) for N ≥ 3.
//
// cargo run --example minkowski

use congruence_lab::minkowski_probe;

pub fn run_example() -> congruence_lab::Result<()> {
    for level in 3..=8u64 {
        let report = minkowski_probe(level, 2000, level)?;
        println!("Γ({level}): {}", serde_json::to_string(&report).expect("json"));
    }
    match minkowski_probe(2, 10, 0) {
        Err(e) => println!("level 2 is rejected: {} ({e})", e.name()),
        Ok(_) => unreachable!("Γ(2) contains -1"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
