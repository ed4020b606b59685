//! Benchmark inputs.

use subindep_core::zoo::{build, Family, RigidGraph};
use subindep_core::{Structure, SubUniverse};

pub fn family(f: Family) -> Structure {
    build(&f).expect("benchmark family builds").0
}

/// `S4` with the subgroups generated by `(12)` and by `(13)(24)`.
pub fn s4_pair() -> (Structure, SubUniverse, SubUniverse) {
    let s4 = family(Family::SymmetricGroup(4));
    let pick = |labels: &[&str]| {
        let elems = labels.iter().map(|l| s4.element_by_label(l).expect("S4 label"));
        SubUniverse::new(&s4, elems).expect("subgroup")
    };
    let (a, b) = (pick(&["e", "(12)"]), pick(&["e", "(13)(24)"]));
    (s4, a, b)
}

/// `D4` with its rotation subgroup and a reflection subgroup.
pub fn d4_pair() -> (Structure, SubUniverse, SubUniverse) {
    let d4 = family(Family::DihedralGroup(4));
    let rotations = SubUniverse::new(&d4, 0..4).expect("rotations");
    let reflection = SubUniverse::new(&d4, [0, 4]).expect("reflection");
    (d4, rotations, reflection)
}

pub fn rigid_graph() -> Structure {
    RigidGraph::fixture().structure().expect("fixture graph")
}
