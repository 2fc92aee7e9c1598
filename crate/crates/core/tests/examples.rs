//! Runs every example once so they stay in sync with the library.

mod decompose {
    include!("../examples/decompose.rs");
}
mod congruence {
    include!("../examples/congruence.rs");
}
mod torsion {
    include!("../examples/torsion.rs");
}
mod minkowski {
    include!("../examples/minkowski.rs");
}
mod quotient_maps {
    include!("../examples/quotient_maps.rs");
}
mod witnesses {
    include!("../examples/witnesses.rs");
}
mod enumerate {
    include!("../examples/enumerate.rs");
}

#[test]
fn examples_run() {
    decompose::run_example().unwrap();
    congruence::run_example().unwrap();
    torsion::run_example().unwrap();
    minkowski::run_example().unwrap();
    quotient_maps::run_example().unwrap();
    witnesses::run_example().unwrap();
    enumerate::run_example().unwrap();
}
