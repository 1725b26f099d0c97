//! Fixed inputs shared by the benchmarks.

use tstab::sample::{random_cut, random_objects, rng, SampleBounds};
use tstab::stability::POrder;
use tstab::tstructure::SlopeCut;
use tstab::{DerivedObject, PointOrder, StabilityFamily};

pub const SEED: u64 = 0x7ab;

/// `n` objects with up to `summands` summands.
pub fn objects(n: usize, summands: usize) -> Vec<DerivedObject> {
    random_objects(SEED, n, &SampleBounds { max_summands: summands, ..SampleBounds::default() })
}

/// The families benchmarked, with short names.
pub fn families() -> Vec<(&'static str, StabilityFamily)> {
    vec![
        ("coarse", StabilityFamily::coarse()),
        ("standard", StabilityFamily::standard(PointOrder::from_labels(&["x", "y", "z"]))),
        ("exc-p1", StabilityFamily::exceptional(0, POrder::Finite(1))),
        ("exc-inf", StabilityFamily::exceptional(0, POrder::Infinite)),
    ]
}

/// `n` valid cuts for `family`.
pub fn cuts(family: &StabilityFamily, n: usize) -> Vec<SlopeCut> {
    let mut r = rng(SEED);
    (0..n).map(|_| random_cut(&mut r, family)).collect()
}
