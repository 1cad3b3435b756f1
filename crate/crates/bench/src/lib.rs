//! Fixtures shared by the benchmarks.

use nilhecke_core::coxsys::{standard_system, Cutoff, NilHeckeParams, StandardFamily};

/// The system (family, 2s, k).
pub fn standard(family: StandardFamily, k: Cutoff) -> NilHeckeParams {
    let m = standard_system(family).expect("standard family");
    let n = m.rank();
    NilHeckeParams::with_cutoff(m, vec![2; n], k).expect("valid parameters")
}
