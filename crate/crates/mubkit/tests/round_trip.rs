//! Round trip for every construction at d <= 32: build, expand into
//! operator classes, certify the classes pairwise orthogonal, and check the
//! cardinality inequality 1 + #bases (d-1) <= d^2.

use mubkit::{
    check_mub_set, check_orthogonal_classes, mub_to_classes, prime_mub, primepower_mub, Method,
    MubSet, SpectralConfig,
};

fn round_trip(set: &MubSet) {
    let d = set.dim;
    assert!(
        check_mub_set(set, 1e-8).passed,
        "d={d} set failed verification"
    );
    let orthogonal_count = 1 + set.bases.len() * (d - 1);
    assert!(orthogonal_count <= d * d, "d={d} count bound");
    let classes = mub_to_classes(set).expect("verified set expands");
    let report = check_orthogonal_classes(&classes, 1e-9);
    assert!(
        report.passed,
        "d={d} classes not orthogonal: worst {:.3e}",
        report.worst()
    );
    let total = 1 + classes.iter().map(|c| c.len() - 1).sum::<usize>();
    assert_eq!(total, d * d, "d={d} should give a full operator basis");
}

#[test]
fn primes_up_to_31() {
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        round_trip(&prime_mub(d).unwrap());
    }
}

#[test]
fn quadratic_families_4_9_25() {
    let cfg = SpectralConfig::default();
    for p in [2u64, 3, 5] {
        let set = primepower_mub(p, 2, Method::P2Quadratic, None, &cfg).unwrap();
        round_trip(&set);
    }
}

#[test]
fn structure_constant_families_8_16_27_32() {
    let cfg = SpectralConfig::default();
    for (p, m) in [(2u64, 3usize), (2, 4), (3, 3), (2, 5)] {
        let set = primepower_mub(p, m, Method::WoottersFields, None, &cfg).unwrap();
        round_trip(&set);
    }
}
