//! Shared spec constructors for the benchmark suite.

use shiftlab_core::{Alphabet, SubshiftSpec};

pub fn full_binary() -> SubshiftSpec {
    SubshiftSpec::full(Alphabet::binary())
}

pub fn golden_mean() -> SubshiftSpec {
    SubshiftSpec::sft(Alphabet::binary(), vec![vec![1, 1]]).unwrap()
}

pub fn fibonacci() -> SubshiftSpec {
    SubshiftSpec::substitution(Alphabet::binary(), vec![vec![0, 1], vec![0]]).unwrap()
}
