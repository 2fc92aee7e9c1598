// Write an integer matrix of determinant 1 as a product of elementary
// matrices, then check the word evaluates back to it.
//
// cargo run --example decompose

use congruence_lab::words::decompose_int_with_bound;
use congruence_lab::{decompose_mod, IntMatrix, ModMatrix};

pub fn run_example() -> congruence_lab::Result<()> {
    for text in ["0,-1;1,0", "13,8;21,13", "2,3,1;1,2,1;1,1,1"] {
        let x: IntMatrix = text.parse()?;
        let d = decompose_int_with_bound(&x)?;
        assert_eq!(d.word.eval_over_integers(), x);
        println!("{x}\n  = {}\n  ({} generators, bound {})", d.word, d.word.len(), d.length_bound);
    }

    let y: ModMatrix = "2,3;1,2 mod 6".parse()?;
    let w = decompose_mod(&y)?;
    assert_eq!(w.eval_mod(y.modulus()), y);
    println!("{y}\n  = {w}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> congruence_lab::Result<()> {
    run_example()
}
