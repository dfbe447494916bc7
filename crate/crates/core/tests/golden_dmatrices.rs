use std::collections::BTreeMap;

use minorbit::long_root_poset::LongRootPoset;
use minorbit::root_system::build;

type Fixture = BTreeMap<String, BTreeMap<String, Vec<Vec<i64>>>>;

fn fixture() -> Fixture {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/e7_e8_dmatrices.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn published_e7_e8_matrices_match() {
    for (label, mats) in fixture() {
        let rs = build(label.parse().unwrap());
        let poset = LongRootPoset::new(&rs);
        let published: BTreeMap<usize, &Vec<Vec<i64>>> =
            mats.iter().map(|(k, v)| (k.parse().unwrap(), v)).collect();
        // The middle matrix is not part of the fixture.
        let first_half = poset.d() / 2 - 1;
        assert!(published.keys().copied().eq(1..=first_half), "{label}: fixture indices");
        for (i, m) in published {
            assert_eq!(&poset.d_matrix(i).unwrap().to_i64_rows(), m, "{label} D_{i}");
        }
    }
}

#[test]
fn second_half_is_transposed() {
    for (label, mats) in fixture() {
        let rs = build(label.parse().unwrap());
        let poset = LongRootPoset::new(&rs);
        let d = poset.d();
        for (k, m) in &mats {
            let i: usize = k.parse().unwrap();
            let t = poset.d_matrix(d - i).unwrap().transpose().to_i64_rows();
            assert_eq!(&t, m, "{label} D_{} vs D_{i}", d - i);
        }
    }
}
